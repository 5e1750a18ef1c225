#pragma once

#include "cevi/censor.hpp"
#include "cevi/estimators.hpp"
#include "cevi/io/config.hpp"
#include "cevi/io/svg.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cevi::io {

/// Bad command-line usage (exit code 2).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EstimateOptions {
    Index k_min = 1;
    std::optional<Index> k_max;  ///< defaults to n - 1
    Index k_step = 1;
    std::vector<double> alphas{2.0};
    std::vector<Family> families{Family::moment, Family::type1, Family::type2};
    std::vector<Method> methods{Method::km, Method::leurgans, Method::efg};
};

/// Estimates CSV for every (k, family, method, alpha) on one data set.
std::string run_estimate(const CensoredSample<double>& sample, const EstimateOptions& options);

/// Results CSV of a simulation study. Bytes depend only on `config`.
std::string run_simulate(const RunConfig& config, unsigned workers = 0);

/// SVG chart of a results CSV.
std::string run_plot(const std::string& results_csv, Metric metric);

/// Writes to `path + ".tmp"` and renames over `path`, so a failed run never
/// leaves a partial file behind.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace cevi::io
