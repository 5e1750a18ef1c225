#include "cevi/censor.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <tuple>
#include <vector>

using cevi::ArrayXd;
using cevi::IndicatorArray;

namespace {
ArrayXd arr(std::initializer_list<double> v) {
    ArrayXd a(static_cast<Eigen::Index>(v.size()));
    std::copy(v.begin(), v.end(), a.data());
    return a;
}
}  // namespace

TEST_CASE("make_censored pairs minima with indicators") {
    const auto s = cevi::make_censored(arr({3, 1}), arr({2, 5}));
    CHECK(s.size() == 2);
    CHECK(s.order_stat(1) == 1.0);
    CHECK(s.order_stat(2) == 2.0);
    CHECK(s.indicator(1) == 1);
    CHECK(s.indicator(2) == 0);
}

TEST_CASE("equality counts as uncensored") {
    const auto s = cevi::make_censored(arr({1, 2, 3}), arr({1, 2, 3}));
    CHECK(s.fully_uncensored());
    CHECK_FALSE(s.has_ties());
}

TEST_CASE("no censoring with huge censoring times") {
    const auto s = cevi::make_censored(arr({3, 1, 2}), arr({1e300, 1e300, 1e300}));
    CHECK(s.fully_uncensored());
    CHECK((s.z() == arr({1, 2, 3})).all());
}

TEST_CASE("input errors") {
    CHECK_THROWS_AS(cevi::make_censored(arr({1, 2}), arr({1, 2, 3})), cevi::InputError);
    CHECK_THROWS_AS(cevi::make_censored(arr({1}), arr({1})), cevi::InputError);
    CHECK_THROWS_AS(cevi::make_censored(arr({1, -2}), arr({1, 2})), cevi::InputError);
    CHECK_THROWS_AS(cevi::make_censored(arr({1, 2}), arr({0, 2})), cevi::InputError);
    CHECK_NOTHROW(cevi::make_censored(arr({1, -2}), arr({1, 2}), cevi::SupportCheck::finite));
    CHECK_THROWS_AS(cevi::make_censored(arr({1, NAN}), arr({1, 2}), cevi::SupportCheck::finite), cevi::InputError);
}

TEST_CASE("ties order uncensored before censored and are reported") {
    // z = 2 appears twice: once censored (x=5,c=2), once uncensored (x=2,c=4)
    const auto s = cevi::make_censored(arr({5, 2, 1}), arr({2, 4, 9}));
    CHECK(s.has_ties());
    CHECK(s.order_stat(2) == 2.0);
    CHECK(s.order_stat(3) == 2.0);
    CHECK(s.indicator(2) == 1);
    CHECK(s.indicator(3) == 0);
}

TEST_CASE("joint sort preserves the multiset of pairs") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.1, 10);
    for (int rep = 0; rep < 50; ++rep) {
        const long n = 2 + static_cast<long>(gen() % 40);
        ArrayXd x(n), c(n);
        std::vector<std::pair<double, int>> expected;
        for (long i = 0; i < n; ++i) {
            x[i] = u(gen);
            c[i] = u(gen);
            expected.emplace_back(std::min(x[i], c[i]), x[i] <= c[i] ? 1 : 0);
        }
        const auto s = cevi::make_censored(x, c);
        std::vector<std::pair<double, int>> got;
        for (long i = 1; i <= n; ++i) got.emplace_back(s.order_stat(i), s.indicator(i));
        std::sort(expected.begin(), expected.end());
        std::sort(got.begin(), got.end());
        CHECK(got == expected);
        CHECK(std::is_sorted(s.z().data(), s.z().data() + n));
    }
}

TEST_CASE("tail uncensored proportion") {
    // sorted: z=(1,2,3,4), delta=(1,1,0,1)
    const auto s = cevi::make_censored(arr({1, 2, 4, 5}), arr({9, 9, 3, 9}));
    CHECK(s.indicator(3) == 0);
    CHECK(cevi::tail_uncensored_proportion(s, 2) == 0.5);
    CHECK(cevi::tail_uncensored_proportion(s, 1) == 1.0);
    CHECK(cevi::tail_uncensored_proportion(s, 3) == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(cevi::tail_uncensored_proportion(s, 0), cevi::ParameterError);
    CHECK_THROWS_AS(cevi::tail_uncensored_proportion(s, 4), cevi::ParameterError);

    const auto full = cevi::make_censored(arr({1, 2, 3, 4, 5}), arr({9, 9, 9, 9, 9}));
    for (long k = 1; k < 5; ++k) CHECK(cevi::tail_uncensored_proportion(full, k) == 1.0);

    std::mt19937_64 gen(11);
    for (int rep = 0; rep < 30; ++rep) {
        const auto r = testing_support::random_sample(gen, 60);
        for (long k = 1; k < 60; k += 7) {
            const double p = cevi::tail_uncensored_proportion(r, k);
            CHECK(p >= 0);
            CHECK(p <= 1);
        }
    }
}

TEST_CASE("tail theory from indices") {
    const auto t = cevi::theory_from_indices(-1.0, -1.5);
    CHECK(t.gamma == doctest::Approx(-0.6).epsilon(1e-15));
    CHECK(t.p == doctest::Approx(0.6).epsilon(1e-15));
    CHECK_FALSE(t.strong_censoring());

    const auto t2 = cevi::theory_from_indices(-0.25, -0.2);
    CHECK(t2.p == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
    CHECK(t2.censoring_rate() == doctest::Approx(5.0 / 9.0).epsilon(1e-15));
    CHECK(t2.strong_censoring());

    for (double g : {0.1, 1.0, 7.0}) CHECK(cevi::theory_from_indices(-g, -g).p == 0.5);

    CHECK_THROWS_AS(cevi::theory_from_indices(0.0, -1.0), cevi::DomainError);
    CHECK_THROWS_AS(cevi::theory_from_indices(-1.0, 0.5), cevi::DomainError);

    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.01, 5);
    for (int i = 0; i < 500; ++i) {
        const double gx = -u(gen), gc = -u(gen);
        const auto th = cevi::theory_from_indices(gx, gc);
        CHECK((th.censoring_rate() > 0.5) == (gx < gc));
        CHECK(th.strong_censoring() == (gx <= gc));
    }
}

TEST_CASE("tail uncensored proportion tracks the population share") {
    // At k/n = 0.2 the slowly vanishing second-order term of the censoring
    // law keeps the share near 0.82; it drifts to p = 0.6 only as k/n -> 0.
    namespace pop = testing_support::weak_pair_population;
    CHECK(pop::uncensored_share(0.2) == doctest::Approx(0.8202).epsilon(1e-3));
    CHECK(pop::uncensored_share(1e-8) == doctest::Approx(0.6).epsilon(0.01));

    const auto x = testing_support::weak_pair_x();
    const auto c = testing_support::weak_pair_c();
    auto median_share = [&](long n, long k, int reps) {
        std::mt19937_64 gen(2024);
        std::vector<double> ps;
        for (int rep = 0; rep < reps; ++rep) {
            cevi::RandomStream rng(gen());
            const auto s = cevi::make_censored(x.sample(rng, n), c.sample(rng, n), cevi::SupportCheck::finite);
            ps.push_back(cevi::tail_uncensored_proportion(s, k));
        }
        std::nth_element(ps.begin(), ps.begin() + reps / 2, ps.end());
        return ps[reps / 2];
    };
    CHECK(std::abs(median_share(500, 100, 500) - pop::uncensored_share(0.2)) <= 0.02);
    CHECK(std::abs(median_share(100000, 100, 50) - pop::uncensored_share(1e-3)) <= 0.03);
}
