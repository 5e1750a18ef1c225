#pragma once

#include "cevi/censor.hpp"
#include "cevi/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cevi {

namespace detail {

// log((n - j) / (n - j + 1)) for the 1-based order j; -inf at j = n.
template <class Scalar>
Scalar km_log_factor(Index n, Index j) {
    if (j == n) return -std::numeric_limits<Scalar>::infinity();
    return std::log1p(Scalar(-1) / static_cast<Scalar>(n - j + 1));
}

}  // namespace detail

/// Kaplan-Meier estimates of 1 - F and 1 - G evaluated at the order
/// statistics. Entry i - 1 of each array refers to Z_{i,n}.
template <class Scalar = double>
class KaplanMeierCurves {
public:
    KaplanMeierCurves(Array<Scalar> surv_f, Array<Scalar> surv_g, Array<Scalar> surv_g_left)
        : surv_f_(std::move(surv_f)), surv_g_(std::move(surv_g)), surv_g_left_(std::move(surv_g_left)) {}

    /// 1 - F_n(Z_{i,n}); the last entry is 0 when Z_{n,n} is uncensored.
    [[nodiscard]] const Array<Scalar>& surv_f_at_order() const { return surv_f_; }
    /// 1 - G_n(Z_{i,n}).
    [[nodiscard]] const Array<Scalar>& surv_g_at_order() const { return surv_g_; }
    /// 1 - G_n(Z_{i,n}^-), left limits; entry 0 is 1.
    [[nodiscard]] const Array<Scalar>& surv_g_left_at_order() const { return surv_g_left_; }

    [[nodiscard]] Index size() const { return surv_f_.size(); }

    // 1-based accessors
    [[nodiscard]] Scalar surv_f(Index i) const { return surv_f_[i - 1]; }
    [[nodiscard]] Scalar surv_g(Index i) const { return surv_g_[i - 1]; }
    [[nodiscard]] Scalar surv_g_left(Index i) const { return surv_g_left_[i - 1]; }

private:
    Array<Scalar> surv_f_;
    Array<Scalar> surv_g_;
    Array<Scalar> surv_g_left_;
};

/// Product-limit estimators of both survival functions. Products are
/// accumulated as compensated sums of logs.
template <class Scalar>
KaplanMeierCurves<Scalar> fit(const CensoredSample<Scalar>& s) {
    const Index n = s.size();
    if (n < 2) throw InputError("Kaplan-Meier fit needs at least 2 observations");
    Array<Scalar> surv_f(n), surv_g(n), surv_g_left(n);
    CompensatedSum<Scalar> log_f, log_g;
    for (Index j = 1; j <= n; ++j) {
        surv_g_left[j - 1] = std::exp(log_g.value());
        const Scalar factor = detail::km_log_factor<Scalar>(n, j);
        if (s.indicator(j) == 1)
            log_f.add(factor);
        else
            log_g.add(factor);
        surv_f[j - 1] = std::exp(log_f.value());
        surv_g[j - 1] = std::exp(log_g.value());
    }
    return KaplanMeierCurves<Scalar>(std::move(surv_f), std::move(surv_g), std::move(surv_g_left));
}

namespace detail {

template <class Scalar>
Scalar km_step_at(const CensoredSample<Scalar>& s, Scalar t, int event) {
    const Index n = s.size();
    if (!(t < s.order_stat(n)))
        throw DomainError("Kaplan-Meier estimate is undefined at or beyond the largest observation");
    const auto& z = s.z();
    const Index m = std::upper_bound(z.data(), z.data() + n, t) - z.data();
    CompensatedSum<Scalar> acc;
    for (Index j = 1; j <= m; ++j)
        if (s.indicator(j) == event) acc.add(km_log_factor<Scalar>(n, j));
    return std::exp(acc.value());
}

}  // namespace detail

/// 1 - F_n(t) for t < Z_{n,n}.
template <class Scalar>
Scalar survival_f_at(const CensoredSample<Scalar>& s, Scalar t) {
    return detail::km_step_at(s, t, 1);
}

/// 1 - G_n(t) for t < Z_{n,n}.
template <class Scalar>
Scalar survival_g_at(const CensoredSample<Scalar>& s, Scalar t) {
    return detail::km_step_at(s, t, 0);
}

}  // namespace cevi
