#pragma once

#include "cevi/dist.hpp"
#include "cevi/estimators.hpp"
#include "cevi/montecarlo.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cevi::io {

/// Parses `revburr(b,t,l,x)`, `gpd(g,s)` or `beta(a,b)`; arguments may be
/// fractions such as `2/3`.
Distribution<double> parse_distribution(std::string_view literal);

/// Simulation configuration. Text form is `key = value` lines, `#` comments:
///
///   dist_x   = revburr(1,1,1,10)
///   dist_c   = revburr(10,2/3,1,10)
///   n        = 500
///   reps     = 500
///   k_grid   = 10,20,30        (or k_min / k_max / k_step)
///   alpha    = 2               (comma list)
///   families = mom,type1,type2
///   methods  = km,l,efg
///   seed     = 20141021
///   out      = results.csv     (optional)
struct RunConfig {
    Distribution<double> dist_x = Distribution<double>::reverse_burr(1, 1, 1, 10);
    Distribution<double> dist_c = Distribution<double>::reverse_burr(10, 2.0 / 3.0, 1, 10);
    Index n = 500;
    Index reps = 500;
    std::vector<Index> k_grid;
    std::vector<double> alphas{2.0};
    std::vector<Family> families{Family::moment, Family::type1, Family::type2};
    std::vector<Method> methods{Method::km, Method::leurgans, Method::efg};
    std::uint64_t seed = 20141021;
    std::string out;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Errors name the offending key and line.
RunConfig parse_config(std::string_view text);
std::string to_config_text(const RunConfig& config);

/// k_min, k_min + k_step, ... <= k_max.
std::vector<Index> k_range(Index k_min, Index k_max, Index k_step);

std::vector<double> parse_real_list(std::string_view text);
std::vector<Family> parse_family_list(std::string_view text);
std::vector<Method> parse_method_list(std::string_view text);

StudyDesign to_design(const RunConfig& config);

}  // namespace cevi::io
