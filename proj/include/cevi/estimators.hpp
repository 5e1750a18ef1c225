#pragma once

#include "cevi/censor.hpp"
#include "cevi/core.hpp"
#include "cevi/km.hpp"
#include "cevi/moments.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace cevi {

/// How moments are combined into an index estimate.
enum class Family { moment, type1, type2 };

/// Which moments feed the combination: Kaplan-Meier weights, Leurgans
/// weights, or unweighted moments divided by the tail uncensored proportion.
enum class Method { km, leurgans, efg };

inline std::string_view to_string(Family f) {
    switch (f) {
        case Family::moment: return "mom";
        case Family::type1: return "type1";
        case Family::type2: return "type2";
    }
    return "?";
}

inline std::string_view to_string(Method m) {
    switch (m) {
        case Method::km: return "km";
        case Method::leurgans: return "l";
        case Method::efg: return "efg";
    }
    return "?";
}

inline std::optional<Family> parse_family(std::string_view s) {
    if (s == "mom") return Family::moment;
    if (s == "type1") return Family::type1;
    if (s == "type2") return Family::type2;
    return std::nullopt;
}

inline std::optional<Method> parse_method(std::string_view s) {
    if (s == "km") return Method::km;
    if (s == "l") return Method::leurgans;
    if (s == "efg") return Method::efg;
    return std::nullopt;
}

template <class Scalar = double>
struct EstimatorSpec {
    Family family = Family::moment;
    Method method = Method::km;
    Scalar alpha = 2;  ///< ignored by the moment family, which always uses orders 1 and 2

    EstimatorSpec() = default;
    EstimatorSpec(Family f, Method m, Scalar a = 2) : family(f), method(m), alpha(a) {
        if (!(a >= 1)) throw DomainError("estimator alpha must be >= 1");
    }

    friend bool operator==(const EstimatorSpec&, const EstimatorSpec&) = default;
};

template <class Scalar = double>
struct EstimateRecord {
    Index k = 0;
    EstimatorSpec<Scalar> spec;
    Scalar value = std::numeric_limits<Scalar>::quiet_NaN();
    double p_hat = 0;
    bool degenerate = true;
};

namespace detail {

// Combinations within a few ulps of a pole are treated as singular.
template <class Scalar>
bool near_zero(Scalar x, Scalar scale = 1) {
    return std::abs(x) <= 16 * std::numeric_limits<Scalar>::epsilon() * scale;
}

}  // namespace detail

/// M1 + 1 - (1 - M1^2 / M2)^-1 / 2. NaN when M2 = 0 or M1^2 = M2.
template <class Scalar>
Scalar combine_moment(Scalar m1, Scalar m2) {
    constexpr Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();
    if (!(m2 > 0)) return nan;
    const Scalar ratio = m1 * m1 / m2;
    if (detail::near_zero(1 - ratio)) return nan;
    const Scalar out = m1 + 1 - Scalar(0.5) / (1 - ratio);
    return std::isfinite(out) ? out : nan;
}

/// (V^-1 + alpha + 1)^-1 with V = 1 - (alpha+2)/(alpha+1) M_{a+1}^2 / (M_a M_{a+2}).
template <class Scalar>
Scalar combine_type1(Scalar m_a, Scalar m_a1, Scalar m_a2, Scalar alpha) {
    constexpr Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();
    if (!(m_a > 0) || !(m_a2 > 0)) return nan;
    const Scalar v = 1 - (alpha + 2) / (alpha + 1) * (m_a1 * m_a1) / (m_a * m_a2);
    if (detail::near_zero(v)) return nan;
    const Scalar denom = 1 / v + alpha + 1;
    if (detail::near_zero(denom, std::abs(1 / v) + alpha + 1)) return nan;
    const Scalar out = 1 / denom;
    return std::isfinite(out) ? out : nan;
}

/// (1 - (alpha+1) R) / ((alpha+1)(1 - R)) with R = M_1 M_a / M_{a+1}.
template <class Scalar>
Scalar combine_type2(Scalar m1, Scalar m_a, Scalar m_a1, Scalar alpha) {
    constexpr Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();
    if (!(m_a1 > 0)) return nan;
    const Scalar r = m1 * m_a / m_a1;
    if (detail::near_zero(1 - r)) return nan;
    const Scalar out = (1 - (alpha + 1) * r) / ((alpha + 1) * (1 - r));
    return std::isfinite(out) ? out : nan;
}

namespace detail {

template <class Scalar>
Scalar pick(const MomentSet<Scalar>& m, Method method) {
    switch (method) {
        case Method::km: return m.m_km;
        case Method::leurgans: return m.m_leurgans;
        case Method::efg: return m.m_unweighted;
    }
    return m.m_unweighted;
}

}  // namespace detail

/// Estimate of gamma_x from moments already bound to a sample and k.
template <class Scalar>
EstimateRecord<Scalar> estimate(TailMoments<Scalar>& moments, const EstimatorSpec<Scalar>& spec) {
    EstimateRecord<Scalar> rec;
    rec.k = moments.k();
    rec.spec = spec;
    rec.p_hat = tail_uncensored_proportion(moments.sample(), moments.k());

    const Scalar a = spec.alpha;
    auto m = [&](Scalar order) { return detail::pick(moments.at(order), spec.method); };
    Scalar value{};
    switch (spec.family) {
        case Family::moment: value = combine_moment(m(1), m(2)); break;
        case Family::type1: value = combine_type1(m(a), m(a + 1), m(a + 2), a); break;
        case Family::type2: value = combine_type2(m(1), m(a), m(a + 1), a); break;
    }
    if (spec.method == Method::efg)
        value = rec.p_hat > 0 ? value / static_cast<Scalar>(rec.p_hat) : std::numeric_limits<Scalar>::quiet_NaN();
    rec.degenerate = !std::isfinite(value);
    rec.value = rec.degenerate ? std::numeric_limits<Scalar>::quiet_NaN() : value;
    return rec;
}

/// Estimate of gamma_x from the top k observations. A non-positive threshold
/// Z_{n-k,n} or a singular combination yields a degenerate record.
template <class Scalar>
EstimateRecord<Scalar> estimate(const CensoredSample<Scalar>& s, Index k, const EstimatorSpec<Scalar>& spec,
                                const KaplanMeierCurves<Scalar>& curves) {
    if (k < 1 || k >= s.size()) throw ParameterError("k must satisfy 1 <= k < n");
    if (!(s.order_stat(s.size() - k) > 0)) {
        EstimateRecord<Scalar> rec;
        rec.k = k;
        rec.spec = spec;
        rec.p_hat = tail_uncensored_proportion(s, k);
        return rec;
    }
    TailMoments<Scalar> moments(s, curves, k);
    return estimate(moments, spec);
}

}  // namespace cevi
