#pragma once

// Deliberately naive re-derivations straight from the product and sum
// definitions: plain multiplication, no log space, no shared helpers with
// the library. Only the CensoredSample container is reused.

#include "cevi/censor.hpp"

#include <cmath>
#include <vector>

namespace naive {

// 1 - F_n(Z_{i,n}) = prod_{j<=i} ((n-j)/(n-j+1))^{delta_j}, i 1-based.
inline double surv_f(const cevi::CensoredSample<double>& s, long i) {
    const long n = s.size();
    double p = 1;
    for (long j = 1; j <= i; ++j)
        p *= std::pow(static_cast<double>(n - j) / static_cast<double>(n - j + 1), s.indicator(j));
    return p;
}

// 1 - G_n(Z_{i,n}).
inline double surv_g(const cevi::CensoredSample<double>& s, long i) {
    const long n = s.size();
    double p = 1;
    for (long j = 1; j <= i; ++j)
        p *= std::pow(static_cast<double>(n - j) / static_cast<double>(n - j + 1), 1 - s.indicator(j));
    return p;
}

// 1 - G_n(Z_{i,n}^-) = product over j <= i-1.
inline double surv_g_left(const cevi::CensoredSample<double>& s, long i) {
    return surv_g(s, i - 1);
}

inline double log_excess(const cevi::CensoredSample<double>& s, long k, long i, double alpha) {
    const long n = s.size();
    return std::pow(std::log(s.order_stat(n - i + 1) / s.order_stat(n - k)), alpha);
}

inline double unweighted(const cevi::CensoredSample<double>& s, long k, double alpha) {
    double sum = 0;
    for (long i = 1; i <= k; ++i) sum += log_excess(s, k, i, alpha);
    return sum / static_cast<double>(k);
}

inline double km(const cevi::CensoredSample<double>& s, long k, double alpha) {
    const long n = s.size();
    double sum = 0;
    for (long i = 1; i <= k; ++i)
        sum += s.indicator(n - i + 1) / surv_g_left(s, n - i + 1) * log_excess(s, k, i, alpha);
    return sum / (static_cast<double>(n) * surv_f(s, n - k));
}

inline double xi(const cevi::CensoredSample<double>& s, long k, long i, double alpha) {
    const double next = i == k ? 0.0 : log_excess(s, k, i + 1, alpha);
    return static_cast<double>(i) * (log_excess(s, k, i, alpha) - next);
}

inline double leurgans(const cevi::CensoredSample<double>& s, long k, double alpha) {
    const long n = s.size();
    double sum = 0;
    for (long i = 1; i <= k; ++i) sum += xi(s, k, i, alpha) / surv_g_left(s, n - i + 1);
    return sum / (static_cast<double>(n) * surv_f(s, n - k));
}

inline double d_term(const cevi::CensoredSample<double>& s, long k, double alpha) {
    const long n = s.size();
    return log_excess(s, k, 1, alpha) / (static_cast<double>(n) * surv_f(s, n - k) * surv_g_left(s, n));
}

}  // namespace naive
