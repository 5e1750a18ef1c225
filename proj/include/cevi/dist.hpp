#pragma once

#include "cevi/core.hpp"
#include "cevi/format.hpp"
#include "cevi/special.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <variant>

namespace cevi {

/// Reverse Burr law on (-inf, xstar):  P(X > x) = (1 + (xstar - x)^(-tau) / beta)^(-lambda).
template <class Scalar>
struct ReverseBurr {
    Scalar beta;
    Scalar tau;
    Scalar lambda;
    Scalar xstar;
};

/// Generalized Pareto law with negative shape, supported on [0, sigma / |gamma|].
template <class Scalar>
struct GeneralizedPareto {
    Scalar gamma;
    Scalar sigma;
};

/// Beta(a, b) law on [0, 1].
template <class Scalar>
struct BetaLaw {
    Scalar a;
    Scalar b;
};

/// Immutable parametric distribution with a finite right endpoint and a
/// negative extreme value index. Sampling is by inverse CDF only.
template <class Scalar = double>
class Distribution {
public:
    using Params = std::variant<ReverseBurr<Scalar>, GeneralizedPareto<Scalar>, BetaLaw<Scalar>>;

    static Distribution reverse_burr(Scalar beta, Scalar tau, Scalar lambda, Scalar xstar) {
        if (!(beta > 0) || !(tau > 0) || !(lambda > 0) || !std::isfinite(beta) || !std::isfinite(tau) ||
            !std::isfinite(lambda))
            throw DomainError("revburr: beta, tau and lambda must be positive and finite");
        if (!std::isfinite(xstar)) throw DomainError("revburr: endpoint must be finite");
        return Distribution(ReverseBurr<Scalar>{beta, tau, lambda, xstar});
    }

    static Distribution gpd(Scalar gamma, Scalar sigma) {
        if (!(gamma < 0) || !std::isfinite(gamma))
            throw DomainError("gpd: shape must be negative (Weibull domain)");
        if (!(sigma > 0) || !std::isfinite(sigma)) throw DomainError("gpd: scale must be positive");
        return Distribution(GeneralizedPareto<Scalar>{gamma, sigma});
    }

    static Distribution beta(Scalar a, Scalar b) {
        if (!(a > 0) || !(b > 0) || !std::isfinite(a) || !std::isfinite(b))
            throw DomainError("beta: shape parameters must be positive and finite");
        Distribution d(BetaLaw<Scalar>{a, b});
        d.log_beta_ = log_beta(a, b);
        return d;
    }

    [[nodiscard]] const Params& params() const { return params_; }

    /// P(X > x).
    [[nodiscard]] Scalar survival(Scalar x) const {
        return std::visit([&](const auto& p) { return survival_impl(p, x); }, params_);
    }

    /// x with F(x) = u, for 0 < u < 1.
    [[nodiscard]] Scalar quantile(Scalar u) const {
        if (!(u > 0 && u < 1)) throw DomainError("quantile level must lie in (0, 1)");
        return std::visit([&](const auto& p) { return quantile_impl(p, u); }, params_);
    }

    [[nodiscard]] Scalar endpoint() const {
        return std::visit(
            [](const auto& p) -> Scalar {
                using P = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<P, ReverseBurr<Scalar>>)
                    return p.xstar;
                else if constexpr (std::is_same_v<P, GeneralizedPareto<Scalar>>)
                    return p.sigma / -p.gamma;
                else
                    return Scalar(1);
            },
            params_);
    }

    /// Extreme value index: -1/(lambda tau), gamma, or -1/b.
    [[nodiscard]] Scalar extreme_value_index() const {
        return std::visit(
            [](const auto& p) -> Scalar {
                using P = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<P, ReverseBurr<Scalar>>)
                    return Scalar(-1) / (p.lambda * p.tau);
                else if constexpr (std::is_same_v<P, GeneralizedPareto<Scalar>>)
                    return p.gamma;
                else
                    return Scalar(-1) / p.b;
            },
            params_);
    }

    /// n i.i.d. draws, one uniform variate consumed per draw.
    template <class Rng>
    [[nodiscard]] Array<Scalar> sample(Rng& rng, Index n) const {
        if (n < 1) throw ParameterError("sample size must be at least 1");
        Array<Scalar> out(n);
        for (Index i = 0; i < n; ++i) out[i] = quantile(static_cast<Scalar>(rng.uniform()));
        return out;
    }

    /// Literal form, e.g. `revburr(1,1,1,10)`.
    [[nodiscard]] std::string literal() const {
        auto f = [](Scalar v) { return format_real(static_cast<double>(v)); };
        return std::visit(
            [&](const auto& p) -> std::string {
                using P = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<P, ReverseBurr<Scalar>>)
                    return "revburr(" + f(p.beta) + "," + f(p.tau) + "," + f(p.lambda) + "," + f(p.xstar) + ")";
                else if constexpr (std::is_same_v<P, GeneralizedPareto<Scalar>>)
                    return "gpd(" + f(p.gamma) + "," + f(p.sigma) + ")";
                else
                    return "beta(" + f(p.a) + "," + f(p.b) + ")";
            },
            params_);
    }

    friend bool operator==(const Distribution& lhs, const Distribution& rhs) {
        return lhs.literal() == rhs.literal();
    }

private:
    explicit Distribution(Params p) : params_(std::move(p)) {}

    static Scalar survival_impl(const ReverseBurr<Scalar>& p, Scalar x) {
        if (x >= p.xstar) return 0;
        const Scalar w = std::pow(p.xstar - x, -p.tau) / p.beta;
        return std::exp(-p.lambda * std::log1p(w));
    }

    static Scalar quantile_impl(const ReverseBurr<Scalar>& p, Scalar u) {
        // s^(-1/lambda) - 1 with s = 1 - u
        const Scalar w = std::expm1(-std::log1p(-u) / p.lambda);
        return p.xstar - std::pow(p.beta * w, Scalar(-1) / p.tau);
    }

    static Scalar survival_impl(const GeneralizedPareto<Scalar>& p, Scalar x) {
        if (x <= 0) return 1;
        const Scalar z = p.gamma * x / p.sigma;
        if (z <= -1) return 0;
        return std::exp(-std::log1p(z) / p.gamma);
    }

    static Scalar quantile_impl(const GeneralizedPareto<Scalar>& p, Scalar u) {
        return p.sigma * std::expm1(-p.gamma * std::log1p(-u)) / p.gamma;
    }

    Scalar survival_impl(const BetaLaw<Scalar>& p, Scalar x) const {
        return incomplete_beta(p.a, p.b, x, log_beta_, true);
    }

    Scalar quantile_impl(const BetaLaw<Scalar>& p, Scalar u) const {
        const Scalar target = 1 - u;
        Scalar lo = 0;
        Scalar hi = 1;
        for (int it = 0; it < 200; ++it) {
            const Scalar mid = lo + (hi - lo) / 2;
            if (mid <= lo || mid >= hi) break;
            if (survival_impl(p, mid) > target)
                lo = mid;
            else
                hi = mid;
        }
        return lo + (hi - lo) / 2;
    }

    Params params_;
    Scalar log_beta_{0};
};

template <class Scalar>
Scalar survival(const Distribution<Scalar>& d, Scalar x) {
    return d.survival(x);
}

template <class Scalar>
Scalar quantile(const Distribution<Scalar>& d, Scalar u) {
    return d.quantile(u);
}

template <class Scalar, class Rng>
Array<Scalar> sample(const Distribution<Scalar>& d, Rng& rng, Index n) {
    return d.sample(rng, n);
}

template <class Scalar>
Scalar theoretical_evi(const Distribution<Scalar>& d) {
    return d.extreme_value_index();
}

}  // namespace cevi
