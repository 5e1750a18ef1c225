#pragma once

#include "cevi/censor.hpp"
#include "cevi/core.hpp"
#include "cevi/dist.hpp"
#include "cevi/km.hpp"
#include "cevi/special.hpp"

#include <cmath>
#include <deque>
#include <string>
#include <utility>
#include <vector>

namespace cevi {

namespace detail {

template <class Scalar>
void check_tail_args(const CensoredSample<Scalar>& s, Index k, Scalar alpha) {
    if (k < 1 || k >= s.size()) throw ParameterError("k must satisfy 1 <= k < n");
    if (!(alpha >= 1)) throw DomainError("moment order alpha must be >= 1");
    if (!(s.order_stat(s.size() - k) > 0))
        throw DomainError("threshold order statistic Z_{n-k,n} must be positive");
}

// log(Z_{n-i+1,n} / Z_{n-k,n}) for i = 1..k (largest first).
template <class Scalar>
Array<Scalar> log_ratios(const CensoredSample<Scalar>& s, Index k) {
    const Index n = s.size();
    const Scalar threshold = s.order_stat(n - k);
    return (s.z().tail(k).reverse() / threshold).log();
}

template <class Scalar>
Scalar raise(Scalar log_ratio, Scalar alpha) {
    if (alpha == 1) return log_ratio;
    if (alpha == 2) return log_ratio * log_ratio;
    return std::pow(log_ratio, alpha);
}

template <class Scalar>
Array<Scalar> raise(const Array<Scalar>& logs, Scalar alpha) {
    if (alpha == 1) return logs;
    if (alpha == 2) return logs.square();
    return logs.pow(alpha);
}

// xi_i = i (L_i - L_{i+1}) with L_{k+1} = 0.
template <class Scalar>
Array<Scalar> abel_increments(const Array<Scalar>& excess) {
    const Index k = excess.size();
    Array<Scalar> next = Array<Scalar>::Zero(k);
    next.head(k - 1) = excess.tail(k - 1);
    return Array<Scalar>::LinSpaced(k, 1, static_cast<Scalar>(k)) * (excess - next);
}

}  // namespace detail

/// log^alpha(Z_{n-i+1,n} / Z_{n-k,n}) for i = 1..k; non-negative and non-increasing.
template <class Scalar>
Array<Scalar> log_excesses(const CensoredSample<Scalar>& s, Index k, Scalar alpha) {
    detail::check_tail_args(s, k, alpha);
    return detail::raise(detail::log_ratios(s, k), alpha);
}

/// xi_{i,n} = i (log^alpha(Z_{n-i+1,n}/Z_{n-k,n}) - log^alpha(Z_{n-i,n}/Z_{n-k,n})).
template <class Scalar>
Array<Scalar> xi_terms(const CensoredSample<Scalar>& s, Index k, Scalar alpha) {
    return detail::abel_increments(log_excesses(s, k, alpha));
}

/// Plain mean of the top-k log-excesses raised to alpha.
template <class Scalar>
Scalar moment_unweighted(const CensoredSample<Scalar>& s, Index k, Scalar alpha) {
    return log_excesses(s, k, alpha).mean();
}

namespace detail {

// n (1 - F_n(Z_{n-k,n}))
template <class Scalar>
Scalar km_normalizer(const KaplanMeierCurves<Scalar>& curves, Index n, Index k) {
    return static_cast<Scalar>(n) * curves.surv_f(n - k);
}

template <class Scalar>
void check_curves(const CensoredSample<Scalar>& s, const KaplanMeierCurves<Scalar>& curves) {
    if (curves.size() != s.size()) throw InputError("Kaplan-Meier curves were fitted on a different sample");
}

template <class Scalar>
Scalar km_weighted_sum(const CensoredSample<Scalar>& s, const KaplanMeierCurves<Scalar>& curves,
                       const Array<Scalar>& excess) {
    const Index k = excess.size();
    const auto delta = s.delta().tail(k).reverse().template cast<Scalar>();
    const auto g_left = curves.surv_g_left_at_order().tail(k).reverse();
    return (delta / g_left * excess).sum();
}

template <class Scalar>
Scalar leurgans_weighted_sum(const KaplanMeierCurves<Scalar>& curves, const Array<Scalar>& excess) {
    const Index k = excess.size();
    const auto g_left = curves.surv_g_left_at_order().tail(k).reverse();
    return (abel_increments(excess) / g_left).sum();
}

}  // namespace detail

/// Kaplan-Meier weighted moment: uncensored log-excesses weighted by
/// 1 / (1 - G_n(Z^-)), normalized by n (1 - F_n(Z_{n-k,n})).
template <class Scalar>
Scalar moment_km(const CensoredSample<Scalar>& s, Index k, Scalar alpha, const KaplanMeierCurves<Scalar>& curves) {
    detail::check_curves(s, curves);
    const Array<Scalar> excess = log_excesses(s, k, alpha);
    return detail::km_weighted_sum(s, curves, excess) / detail::km_normalizer(curves, s.size(), k);
}

/// Leurgans weighted moment: xi increments weighted by 1 / (1 - G_n(Z^-)).
template <class Scalar>
Scalar moment_leurgans(const CensoredSample<Scalar>& s, Index k, Scalar alpha,
                       const KaplanMeierCurves<Scalar>& curves) {
    detail::check_curves(s, curves);
    const Array<Scalar> excess = log_excesses(s, k, alpha);
    return detail::leurgans_weighted_sum(curves, excess) / detail::km_normalizer(curves, s.size(), k);
}

/// Contribution of the maximum: the amount by which the Leurgans moment
/// exceeds the Kaplan-Meier moment when Z_{n,n} is censored.
template <class Scalar>
Scalar d_term(const CensoredSample<Scalar>& s, Index k, Scalar alpha, const KaplanMeierCurves<Scalar>& curves) {
    detail::check_curves(s, curves);
    detail::check_tail_args(s, k, alpha);
    const Index n = s.size();
    const Scalar top = detail::raise(std::log(s.order_stat(n) / s.order_stat(n - k)), alpha);
    return top / (detail::km_normalizer(curves, n, k) * curves.surv_g_left(n));
}

/// The three moment families at one (k, alpha).
template <class Scalar = double>
struct MomentSet {
    Scalar alpha;
    Index k;
    Scalar m_unweighted;
    Scalar m_km;
    Scalar m_leurgans;
    Scalar d_term;
    int delta_max;
};

/// Moments for a fixed sample and k, cached per alpha. The log-ratios of the
/// top k observations are computed once.
template <class Scalar = double>
class TailMoments {
public:
    TailMoments(const CensoredSample<Scalar>& s, const KaplanMeierCurves<Scalar>& curves, Index k)
        : sample_(&s), curves_(&curves), k_(k) {
        detail::check_curves(s, curves);
        detail::check_tail_args(s, k, Scalar(1));
        logs_ = detail::log_ratios(s, k);
    }

    [[nodiscard]] Index k() const { return k_; }
    [[nodiscard]] const CensoredSample<Scalar>& sample() const { return *sample_; }

    const MomentSet<Scalar>& at(Scalar alpha) {
        for (const auto& [a, m] : cache_)
            if (a == alpha) return m;
        if (!(alpha >= 1)) throw DomainError("moment order alpha must be >= 1");
        const Index n = sample_->size();
        const Array<Scalar> excess = detail::raise(logs_, alpha);
        const Scalar norm = detail::km_normalizer(*curves_, n, k_);
        MomentSet<Scalar> m{};
        m.alpha = alpha;
        m.k = k_;
        m.m_unweighted = excess.mean();
        m.m_km = detail::km_weighted_sum(*sample_, *curves_, excess) / norm;
        m.m_leurgans = detail::leurgans_weighted_sum(*curves_, excess) / norm;
        m.d_term = excess[0] / (norm * curves_->surv_g_left(n));
        m.delta_max = sample_->indicator(n);
        cache_.emplace_back(alpha, m);
        return cache_.back().second;
    }

private:
    const CensoredSample<Scalar>* sample_;
    const KaplanMeierCurves<Scalar>* curves_;
    Index k_;
    Array<Scalar> logs_;
    std::deque<std::pair<Scalar, MomentSet<Scalar>>> cache_;  // stable references
};

template <class Scalar>
MomentSet<Scalar> moment_set(const CensoredSample<Scalar>& s, Index k, Scalar alpha,
                             const KaplanMeierCurves<Scalar>& curves) {
    TailMoments<Scalar> tm(s, curves, k);
    return tm.at(alpha);
}

/// In-probability limit of M^(alpha) / a_{n,k}^alpha for both weighted families:
/// |gamma_x|^-1 |gamma|^-alpha Beta(1/|gamma_x|, alpha + 1).
template <class Scalar>
Scalar limit_l_alpha(Scalar gamma_x, Scalar gamma_c, Scalar alpha) {
    const auto theory = theory_from_indices(gamma_x, gamma_c);
    if (!(alpha >= 1)) throw DomainError("moment order alpha must be >= 1");
    const Scalar gx = -gamma_x;
    return std::pow(-theory.gamma, -alpha) * beta_function(1 / gx, alpha + 1) / gx;
}

/// Limit of the unweighted moment scaled by a_{n,k}^alpha:
/// |gamma|^(-alpha-1) Beta(1/|gamma|, alpha + 1).
template <class Scalar>
Scalar limit_unweighted(Scalar gamma, Scalar alpha) {
    if (!(gamma < 0)) throw DomainError("extreme value index must be strictly negative");
    if (!(alpha >= 1)) throw DomainError("moment order alpha must be >= 1");
    return std::pow(-gamma, -alpha - 1) * beta_function(-1 / gamma, alpha + 1);
}

/// Normalizing scale of the moments at t = n/k.
template <class Scalar = double>
struct AsymptoticScale {
    Scalar t;
    Scalar u_of_t;  ///< U(t) = H^{<-}(1 - 1/t)
    Scalar a_of_t;  ///< a(t) = |gamma| (xstar - U(t))
    Scalar a_nk;    ///< a(t) / U(t)
    Scalar xstar;
};

/// Solves (1 - F(u))(1 - G(u)) = k/n by bisection on the distance to the
/// common endpoint.
template <class Scalar>
AsymptoticScale<Scalar> scale_a_nk(const Distribution<Scalar>& fx, const Distribution<Scalar>& gc, Index n,
                                   Index k) {
    if (k < 1 || k >= n) throw ParameterError("k must satisfy 1 <= k < n");
    const Scalar xstar = fx.endpoint();
    const Scalar other = gc.endpoint();
    if (std::abs(xstar - other) > Scalar(1e-12) * std::max(Scalar(1), std::abs(xstar)))
        throw ModelError("X and C distributions must share the same endpoint");
    const auto theory = theory_from_indices(fx.extreme_value_index(), gc.extreme_value_index());
    const Scalar target = static_cast<Scalar>(k) / static_cast<Scalar>(n);
    auto tail = [&](Scalar dist) { return fx.survival(xstar - dist) * gc.survival(xstar - dist); };

    Scalar hi = 1;
    for (int i = 0; tail(hi) < target; ++i) {
        if (i > 2000) throw NumericalError("scale_a_nk: could not bracket the tail quantile");
        hi *= 2;
    }
    Scalar lo = hi;
    for (int i = 0; tail(lo) >= target; ++i) {
        if (i > 2000 || lo == 0) throw NumericalError("scale_a_nk: could not bracket the tail quantile");
        lo /= 2;
    }
    for (int it = 0; it < 400; ++it) {
        const Scalar mid = lo + (hi - lo) / 2;
        if (!(mid > lo && mid < hi) || hi - lo <= Scalar(1e-15) * hi) break;
        if (tail(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    const Scalar dist = lo + (hi - lo) / 2;
    AsymptoticScale<Scalar> out{};
    out.t = static_cast<Scalar>(n) / static_cast<Scalar>(k);
    out.xstar = xstar;
    out.u_of_t = xstar - dist;
    out.a_of_t = -theory.gamma * dist;
    out.a_nk = out.a_of_t / out.u_of_t;
    return out;
}

}  // namespace cevi
