#include "cevi/km.hpp"
#include "naive_reference.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <random>

using cevi::ArrayXd;
using cevi::IndicatorArray;
using Sample = cevi::CensoredSample<double>;

namespace {
Sample three() {
    ArrayXd z(3);
    z << 1, 2, 3;
    IndicatorArray d(3);
    d << 1, 0, 1;
    return Sample::from_sorted(z, d);
}
}  // namespace

TEST_CASE("hand-evaluated three-point curves") {
    const auto s = three();
    const auto c = cevi::fit(s);
    CHECK(c.surv_f(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(c.surv_f(2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(c.surv_g_left(1) == 1.0);
    CHECK(c.surv_g_left(2) == 1.0);
    CHECK(c.surv_g_left(3) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c.surv_f(3) == 0.0);
}

TEST_CASE("uncensored and fully censored samples") {
    const long n = 7;
    ArrayXd z = ArrayXd::LinSpaced(n, 1, 7);
    const auto all_events = Sample::from_sorted(z, IndicatorArray::Ones(n));
    const auto c1 = cevi::fit(all_events);
    for (long i = 1; i <= n; ++i) {
        CHECK(c1.surv_g(i) == 1.0);
        CHECK(c1.surv_g_left(i) == 1.0);
        CHECK(c1.surv_f(i) == doctest::Approx(static_cast<double>(n - i) / n).epsilon(1e-14));
    }
    const auto no_events = Sample::from_sorted(z, IndicatorArray::Zero(n));
    const auto c0 = cevi::fit(no_events);
    for (long i = 1; i <= n; ++i) CHECK(c0.surv_f(i) == 1.0);
}

TEST_CASE("step function evaluation") {
    const auto s = three();
    CHECK(cevi::survival_f_at(s, 0.5) == 1.0);
    CHECK(cevi::survival_f_at(s, 1.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(cevi::survival_f_at(s, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(cevi::survival_f_at(s, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(cevi::survival_g_at(s, 2.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(cevi::survival_f_at(s, 3.0), cevi::DomainError);
    CHECK_THROWS_AS(cevi::survival_f_at(s, 4.0), cevi::DomainError);

    std::mt19937_64 gen(17);
    for (int rep = 0; rep < 20; ++rep) {
        const auto r = testing_support::random_sample(gen, 40);
        const auto c = cevi::fit(r);
        for (long i = 1; i < 40; ++i) CHECK(cevi::survival_f_at(r, r.order_stat(i)) == doctest::Approx(c.surv_f(i)));
    }
}

TEST_CASE("curve invariants on random samples") {
    std::mt19937_64 gen(23);
    for (int rep = 0; rep < 40; ++rep) {
        const long n = 2 + static_cast<long>(gen() % 300);
        const auto s = testing_support::random_sample(gen, n);
        const auto c = cevi::fit(s);
        CHECK(c.surv_g_left(1) == 1.0);
        for (long i = 1; i < n; ++i) {
            CHECK(c.surv_f(i) > 0);
            CHECK(c.surv_g_left(i) > 0);
            if (i > 1) {
                CHECK(c.surv_f(i) <= c.surv_f(i - 1));
                CHECK(c.surv_g_left(i) <= c.surv_g_left(i - 1));
            }
            // empirical 1 - H = (1 - F)(1 - G)
            CHECK(testing_support::close_rel(c.surv_f(i) * c.surv_g(i), static_cast<double>(n - i) / n, 1e-12));
        }
        CHECK(c.surv_g_left(n) > 0);
    }
}

TEST_CASE("left-limit weight identity") {
    std::mt19937_64 gen(29);
    for (int rep = 0; rep < 40; ++rep) {
        const long n = 20 + static_cast<long>(gen() % 200);
        const auto s = testing_support::random_sample(gen, n);
        const auto c = cevi::fit(s);
        for (long i = 2; i < n; ++i) {
            const double lhs = i / c.surv_g_left(n - i + 1) - (i - 1) / c.surv_g_left(n - i + 2);
            const double rhs = s.indicator(n - i + 1) / c.surv_g_left(n - i + 1);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("log-space curves match naive products") {
    std::mt19937_64 gen(31);
    for (int rep = 0; rep < 30; ++rep) {
        const long n = 2 + static_cast<long>(gen() % 200);
        const auto s = testing_support::random_sample(gen, n);
        const auto c = cevi::fit(s);
        for (long i = 1; i < n; ++i) {
            CHECK(testing_support::close_rel(c.surv_f(i), naive::surv_f(s, i), 1e-10));
            CHECK(testing_support::close_rel(c.surv_g_left(i), naive::surv_g_left(s, i), 1e-10));
        }
    }
}
