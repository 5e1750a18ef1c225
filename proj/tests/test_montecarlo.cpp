#include "cevi/montecarlo.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>

using cevi::EstimatorSpec;
using cevi::Family;
using cevi::Method;

namespace {

cevi::StudyDesign small_design(cevi::Index reps = 20) {
    return cevi::StudyDesign{
        .dist_x = testing_support::weak_pair_x(),
        .dist_c = testing_support::weak_pair_c(),
        .n = 200,
        .reps = reps,
        .k_grid = {10, 40, 80},
        .alphas = {2.0},
        .specs = cevi::expand_specs({Family::moment, Family::type1}, {Method::km, Method::leurgans, Method::efg}, {2.0}),
        .seed = 99,
    };
}

}  // namespace

TEST_CASE("spec expansion") {
    const auto specs = cevi::expand_specs({Family::moment, Family::type2}, {Method::km, Method::efg}, {1.0, 2.0});
    REQUIRE(specs.size() == 6);
    CHECK(specs[0] == EstimatorSpec<double>(Family::moment, Method::km, 1.0));
    CHECK(specs[2] == EstimatorSpec<double>(Family::type2, Method::km, 1.0));
    CHECK(specs[3] == EstimatorSpec<double>(Family::type2, Method::km, 2.0));
}

TEST_CASE("replicates are deterministic and distinct") {
    const auto d = small_design();
    const auto a = cevi::run_replicate(d, 3);
    const auto b = cevi::run_replicate(d, 3);
    const auto c = cevi::run_replicate(d, 4);
    REQUIRE(a.size() == d.k_grid.size() * d.specs.size());
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].k == d.k_grid[i / d.specs.size()]);
        CHECK(a[i].spec == d.specs[i % d.specs.size()]);
        CHECK(std::memcmp(&a[i].value, &b[i].value, sizeof(double)) == 0);
        any_diff |= a[i].value != c[i].value;
    }
    CHECK(any_diff);
    CHECK_THROWS_AS(cevi::run_replicate(d, d.reps), cevi::ParameterError);
}

TEST_CASE("design validation") {
    auto d = small_design();
    d.k_grid = {};
    CHECK_THROWS_AS(d.validate(), cevi::ParameterError);
    d = small_design();
    d.k_grid = {200};
    CHECK_THROWS_AS(d.validate(), cevi::ParameterError);
    d = small_design();
    d.reps = 0;
    CHECK_THROWS_AS(d.validate(), cevi::ParameterError);
    d = small_design();
    d.dist_c = cevi::Distribution<double>::gpd(-0.5, 1);
    CHECK_THROWS_AS(d.validate(), cevi::ModelError);
}

TEST_CASE("aggregation of constant estimates") {
    auto d = small_design(5);
    d.k_grid = {10};
    d.specs = {EstimatorSpec<double>(Family::type1, Method::km, 2.0)};
    const double c = -0.7;
    std::vector<cevi::ReplicateRecords> recs(5);
    for (auto& r : recs) {
        cevi::EstimateRecord<double> e;
        e.k = 10;
        e.spec = d.specs[0];
        e.value = c;
        e.degenerate = false;
        r.push_back(e);
    }
    recs[2][0].degenerate = true;
    recs[2][0].value = NAN;
    const auto res = cevi::aggregate(d, recs);
    REQUIRE(res.cells.size() == 1);
    CHECK(res.cells[0].median_bias == doctest::Approx(c + 1.0));
    CHECK(res.cells[0].mse == doctest::Approx((c + 1.0) * (c + 1.0)));
    CHECK(res.cells[0].variance == 0.0);
    CHECK(res.cells[0].degenerate_count == 1);

    for (auto& r : recs) r[0].degenerate = true;
    const auto empty = cevi::aggregate(d, recs);
    CHECK(empty.cells[0].empty(5));
    CHECK(std::isnan(empty.cells[0].mse));
}

TEST_CASE("single replicate") {
    const auto d = small_design(1);
    const auto res = cevi::run_study(d, 1);
    const auto rec = cevi::run_replicate(d, 0);
    for (std::size_t i = 0; i < rec.size(); ++i) {
        if (rec[i].degenerate) continue;
        CHECK(res.cells[i].median_bias == rec[i].value - d.gamma_x());
    }
}

TEST_CASE("median") {
    CHECK(cevi::median({3, 1, 2}) == 2.0);
    CHECK(cevi::median({4, 1, 3, 2}) == 2.5);
    CHECK(cevi::median({5}) == 5.0);
}

TEST_CASE("study results do not depend on the worker count") {
    const auto d = small_design(24);
    const auto one = cevi::run_study(d, 1);
    for (unsigned w : {2u, 4u, 16u}) {
        const auto many = cevi::run_study(d, w);
        REQUIRE(many.cells.size() == one.cells.size());
        for (std::size_t i = 0; i < one.cells.size(); ++i) {
            CHECK(std::memcmp(&one.cells[i].mse, &many.cells[i].mse, sizeof(double)) == 0);
            CHECK(std::memcmp(&one.cells[i].median_bias, &many.cells[i].median_bias, sizeof(double)) == 0);
        }
    }
}

TEST_CASE("mse decomposes into variance and squared mean bias") {
    const auto res = cevi::run_study(small_design(40), 2);
    for (const auto& c : res.cells) {
        if (c.empty(res.reps)) continue;
        const double bias = c.mean - res.gamma_x;
        CHECK(std::abs(c.mse - (c.variance + bias * bias)) <= 1e-10 * std::max(1.0, c.mse));
        CHECK(c.mse >= c.variance);
        CHECK(c.variance >= 0);
        CHECK(c.degenerate_count <= res.reps);
    }
}
