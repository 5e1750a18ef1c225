#pragma once

#include "cevi/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace cevi {

/// Which support restriction make_censored enforces on the raw values.
/// Log-excesses only need the top k+1 order statistics to be positive, so
/// simulation designs whose support extends below zero use `finite`.
enum class SupportCheck { strictly_positive, finite };

/// Order statistics Z_{1,n} <= ... <= Z_{n,n} with their concomitant
/// censoring indicators (1 = uncensored).
template <class Scalar = double>
class CensoredSample {
public:
    /// Builds from observations already in ascending order. Ties must be
    /// ordered uncensored-first.
    static CensoredSample from_sorted(Array<Scalar> z, IndicatorArray delta) {
        if (z.size() != delta.size()) throw InputError("z and delta must have the same length");
        if (z.size() < 2) throw InputError("a censored sample needs at least 2 observations");
        bool ties = false;
        for (Index i = 0; i < z.size(); ++i) {
            if (!std::isfinite(z[i])) throw InputError("observations must be finite");
            if (delta[i] > 1) throw InputError("censoring indicators must be 0 or 1");
            if (i > 0) {
                if (z[i] < z[i - 1]) throw InputError("observations are not sorted");
                if (z[i] == z[i - 1]) {
                    ties = true;
                    if (delta[i] > delta[i - 1])
                        throw InputError("tied observations must list uncensored before censored");
                }
            }
        }
        return CensoredSample(std::move(z), std::move(delta), ties);
    }

    /// Sorts (z, delta) pairs jointly; at equal z, uncensored first.
    static CensoredSample from_observations(const Array<Scalar>& z, const IndicatorArray& delta) {
        if (z.size() != delta.size()) throw InputError("z and delta must have the same length");
        std::vector<Index> order(static_cast<std::size_t>(z.size()));
        std::iota(order.begin(), order.end(), Index{0});
        std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
            if (z[a] != z[b]) return z[a] < z[b];
            return delta[a] > delta[b];
        });
        Array<Scalar> zs(z.size());
        IndicatorArray ds(z.size());
        for (Index i = 0; i < z.size(); ++i) {
            zs[i] = z[order[static_cast<std::size_t>(i)]];
            ds[i] = delta[order[static_cast<std::size_t>(i)]];
        }
        return from_sorted(std::move(zs), std::move(ds));
    }

    [[nodiscard]] Index size() const { return z_.size(); }
    [[nodiscard]] const Array<Scalar>& z() const { return z_; }
    [[nodiscard]] const IndicatorArray& delta() const { return delta_; }

    /// Z_{i,n}, 1-based.
    [[nodiscard]] Scalar order_stat(Index i) const { return z_[i - 1]; }
    /// delta_{i,n}, 1-based.
    [[nodiscard]] int indicator(Index i) const { return delta_[i - 1]; }

    [[nodiscard]] bool has_ties() const { return ties_; }
    [[nodiscard]] bool fully_uncensored() const { return (delta_ == 1).all(); }

    /// Every observation multiplied by c > 0.
    [[nodiscard]] CensoredSample scaled(Scalar c) const {
        if (!(c > 0)) throw DomainError("scale factor must be positive");
        return CensoredSample(z_ * c, delta_, ties_);
    }

private:
    CensoredSample(Array<Scalar> z, IndicatorArray delta, bool ties)
        : z_(std::move(z)), delta_(std::move(delta)), ties_(ties) {}

    Array<Scalar> z_;
    IndicatorArray delta_;
    bool ties_ = false;
};

/// Z = min(X, C), delta = 1{X <= C}, sorted jointly by Z.
template <class Scalar>
CensoredSample<Scalar> make_censored(const Array<Scalar>& x, const Array<Scalar>& c,
                                     SupportCheck check = SupportCheck::strictly_positive) {
    if (x.size() != c.size()) throw InputError("x and c must have the same length");
    if (x.size() < 2) throw InputError("a censored sample needs at least 2 observations");
    if (check == SupportCheck::strictly_positive && ((x <= 0).any() || (c <= 0).any()))
        throw InputError("x and c must be strictly positive");
    const Array<Scalar> z = x.min(c);
    const IndicatorArray delta = (x <= c).template cast<std::uint8_t>();
    return CensoredSample<Scalar>::from_observations(z, delta);
}

/// Fraction of uncensored observations among the top k.
template <class Scalar>
double tail_uncensored_proportion(const CensoredSample<Scalar>& s, Index k) {
    if (k < 1 || k >= s.size()) throw ParameterError("k must satisfy 1 <= k < n");
    const auto top = s.delta().tail(k).template cast<double>();
    return top.sum() / static_cast<double>(k);
}

/// Tail quantities implied by the indices of X and C sharing an endpoint.
template <class Scalar = double>
struct TailTheory {
    Scalar gamma_x;
    Scalar gamma_c;
    Scalar gamma;  ///< index of Z = min(X, C)
    Scalar p;      ///< limiting proportion of uncensored observations in the tail

    [[nodiscard]] Scalar censoring_rate() const { return 1 - p; }
    /// Censoring rate in the tail of at least one half, i.e. gamma_x <= gamma_c.
    [[nodiscard]] bool strong_censoring() const { return gamma_x <= gamma_c; }
};

template <class Scalar>
TailTheory<Scalar> theory_from_indices(Scalar gamma_x, Scalar gamma_c) {
    if (!(gamma_x < 0) || !(gamma_c < 0))
        throw DomainError("both extreme value indices must be strictly negative");
    const Scalar sum = gamma_x + gamma_c;
    return {gamma_x, gamma_c, gamma_x * gamma_c / sum, gamma_c / sum};
}

}  // namespace cevi
