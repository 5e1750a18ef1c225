#pragma once

#include "cevi/core.hpp"

#include <cmath>
#include <limits>

namespace cevi {

/// log Beta(a, b) through log-gamma.
template <class Scalar>
Scalar log_beta(Scalar a, Scalar b) {
    if (!(a > 0) || !(b > 0))
        throw DomainError("beta function requires a > 0 and b > 0");
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

/// Beta(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
template <class Scalar>
Scalar beta_function(Scalar a, Scalar b) {
    return std::exp(log_beta(a, b));
}

namespace detail {

// Continued fraction for the incomplete beta function, modified Lentz.
template <class Scalar>
Scalar incomplete_beta_cf(Scalar a, Scalar b, Scalar x) {
    constexpr int max_iter = 10000;
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    const Scalar tiny = std::numeric_limits<Scalar>::min() / eps;

    const Scalar qab = a + b;
    const Scalar qap = a + 1;
    const Scalar qam = a - 1;
    Scalar c = 1;
    Scalar d = 1 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1 / d;
    Scalar h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const Scalar m2 = 2 * m;
        Scalar aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1 / d;
        const Scalar del = d * c;
        h *= del;
        if (std::abs(del - 1) <= eps) return h;
    }
    throw NumericalError("incomplete beta continued fraction did not converge");
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b) and its complement 1 - I_x(a, b),
/// both evaluated without cancellation. `log_b` is log Beta(a, b).
template <class Scalar>
Scalar incomplete_beta(Scalar a, Scalar b, Scalar x, Scalar log_b, bool complement = false) {
    if (x <= 0) return complement ? Scalar(1) : Scalar(0);
    if (x >= 1) return complement ? Scalar(0) : Scalar(1);
    const Scalar y = 1 - x;
    const Scalar front = std::exp(a * std::log(x) + b * std::log(y) - log_b);
    if (x < (a + 1) / (a + b + 2)) {
        const Scalar lower = front * detail::incomplete_beta_cf(a, b, x) / a;
        return complement ? 1 - lower : lower;
    }
    const Scalar upper = front * detail::incomplete_beta_cf(b, a, y) / b;
    return complement ? upper : 1 - upper;
}

}  // namespace cevi
