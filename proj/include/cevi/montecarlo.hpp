#pragma once

#include "cevi/dist.hpp"
#include "cevi/estimators.hpp"

#include <cstdint>
#include <vector>

namespace cevi {

/// Simulation protocol: n-samples of X censored by C, repeated `reps` times,
/// every estimator evaluated at every k of the grid.
struct StudyDesign {
    Distribution<double> dist_x;
    Distribution<double> dist_c;
    Index n = 500;
    Index reps = 500;
    std::vector<Index> k_grid;
    std::vector<double> alphas{2.0};
    std::vector<EstimatorSpec<double>> specs;
    std::uint64_t seed = 0;

    /// Throws ParameterError / ModelError on an invalid design.
    void validate() const;
    [[nodiscard]] double gamma_x() const { return dist_x.extreme_value_index(); }
    [[nodiscard]] double gamma_c() const { return dist_c.extreme_value_index(); }
};

/// families x methods x alphas; the moment family appears once per method
/// with alpha = 1.
std::vector<EstimatorSpec<double>> expand_specs(const std::vector<Family>& families,
                                                const std::vector<Method>& methods,
                                                const std::vector<double>& alphas);

/// Aggregates for one (k, estimator) cell over the non-degenerate replicates.
struct CellSummary {
    Index k = 0;
    EstimatorSpec<double> spec;
    double median_bias = 0;  ///< median(estimates) - gamma_x
    double mse = 0;          ///< mean((estimate - gamma_x)^2)
    double mean = 0;
    double variance = 0;     ///< population variance
    Index degenerate_count = 0;

    [[nodiscard]] bool empty(Index reps) const { return degenerate_count >= reps; }
    friend bool operator==(const CellSummary&, const CellSummary&) = default;
};

struct StudyResult {
    Index n = 0;
    Index reps = 0;
    double gamma_x = 0;
    double gamma_c = 0;
    std::vector<CellSummary> cells;  ///< ordered by k, then by spec order
};

using ReplicateRecords = std::vector<EstimateRecord<double>>;

/// Records of one replicate, ordered by k then spec. Depends only on
/// (design, replicate_index).
ReplicateRecords run_replicate(const StudyDesign& design, Index replicate_index);

/// All replicates, indexed by replicate. Output does not depend on `workers`.
std::vector<ReplicateRecords> run_replicates(const StudyDesign& design, unsigned workers = 0);

/// Per-cell reduction of replicate records in replicate order.
StudyResult aggregate(const StudyDesign& design, const std::vector<ReplicateRecords>& records);

StudyResult run_study(const StudyDesign& design, unsigned workers = 0);

/// Worker count: hardware concurrency, capped by CENSORED_EVI_THREADS when set.
unsigned default_workers();

/// Median of a non-empty set of values (mean of the middle pair for even sizes).
double median(std::vector<double> values);

}  // namespace cevi
