#include "cevi/montecarlo.hpp"

#include "cevi/censor.hpp"
#include "cevi/km.hpp"
#include "cevi/random.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

namespace cevi {

void StudyDesign::validate() const {
    if (n < 2) throw ParameterError("n must be at least 2");
    if (reps < 1) throw ParameterError("reps must be at least 1");
    if (k_grid.empty()) throw ParameterError("k grid is empty");
    for (Index k : k_grid)
        if (k < 1 || k >= n) throw ParameterError("k = " + std::to_string(k) + " outside 1 <= k < n");
    if (specs.empty()) throw ParameterError("no estimators selected");
    const double ex = dist_x.endpoint();
    const double ec = dist_c.endpoint();
    if (std::abs(ex - ec) > 1e-12 * std::max(1.0, std::abs(ex)))
        throw ModelError("dist_x and dist_c must share the same endpoint (" + dist_x.literal() + " vs " +
                         dist_c.literal() + ")");
}

std::vector<EstimatorSpec<double>> expand_specs(const std::vector<Family>& families,
                                                const std::vector<Method>& methods,
                                                const std::vector<double>& alphas) {
    std::vector<EstimatorSpec<double>> out;
    for (Family f : families) {
        for (Method m : methods) {
            if (f == Family::moment) {
                out.emplace_back(f, m, 1.0);
                continue;
            }
            for (double a : alphas) out.emplace_back(f, m, a);
        }
    }
    return out;
}

ReplicateRecords run_replicate(const StudyDesign& design, Index replicate_index) {
    if (replicate_index < 0 || replicate_index >= design.reps)
        throw ParameterError("replicate index out of range");
    auto rng = RandomStream::for_replicate(design.seed, static_cast<std::uint64_t>(replicate_index));
    const ArrayXd x = design.dist_x.sample(rng, design.n);
    const ArrayXd c = design.dist_c.sample(rng, design.n);
    const auto s = make_censored(x, c, SupportCheck::finite);
    const auto curves = fit(s);

    ReplicateRecords out;
    out.reserve(design.k_grid.size() * design.specs.size());
    for (Index k : design.k_grid) {
        if (!(s.order_stat(s.size() - k) > 0)) {
            for (const auto& spec : design.specs) out.push_back(estimate(s, k, spec, curves));
            continue;
        }
        TailMoments<double> moments(s, curves, k);
        for (const auto& spec : design.specs) out.push_back(estimate(moments, spec));
    }
    return out;
}

unsigned default_workers() {
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CENSORED_EVI_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) workers = std::min<unsigned>(workers, static_cast<unsigned>(cap));
    }
    return workers;
}

std::vector<ReplicateRecords> run_replicates(const StudyDesign& design, unsigned workers) {
    design.validate();
    if (workers == 0) workers = default_workers();
    const auto reps = static_cast<std::size_t>(design.reps);
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, reps));

    std::vector<ReplicateRecords> records(reps);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < reps; i = next++) records[i] = run_replicate(design, static_cast<Index>(i));
    };
    if (workers <= 1) {
        work();
        return records;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    pool.clear();
    return records;
}

double median(std::vector<double> values) {
    const std::size_t m = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m), values.end());
    const double upper = values[m];
    if (values.size() % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m));
    return lower + (upper - lower) / 2;
}

StudyResult aggregate(const StudyDesign& design, const std::vector<ReplicateRecords>& records) {
    StudyResult result;
    result.n = design.n;
    result.reps = static_cast<Index>(records.size());
    result.gamma_x = design.gamma_x();
    result.gamma_c = design.gamma_c();

    const double truth = result.gamma_x;
    const std::size_t cells = design.k_grid.size() * design.specs.size();
    result.cells.reserve(cells);
    std::vector<double> values;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        CellSummary summary;
        summary.k = design.k_grid[cell / design.specs.size()];
        summary.spec = design.specs[cell % design.specs.size()];
        values.clear();
        for (const auto& rep : records) {
            const auto& rec = rep.at(cell);
            if (rec.degenerate)
                ++summary.degenerate_count;
            else
                values.push_back(rec.value);
        }
        if (values.empty()) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            summary.median_bias = summary.mse = summary.mean = summary.variance = nan;
        } else {
            const auto count = static_cast<double>(values.size());
            double sum = 0, sq_err = 0;
            for (double v : values) {
                sum += v;
                sq_err += (v - truth) * (v - truth);
            }
            summary.mean = sum / count;
            double var = 0;
            for (double v : values) var += (v - summary.mean) * (v - summary.mean);
            summary.variance = var / count;
            summary.mse = sq_err / count;
            summary.median_bias = median(values) - truth;
        }
        result.cells.push_back(summary);
    }
    return result;
}

StudyResult run_study(const StudyDesign& design, unsigned workers) {
    return aggregate(design, run_replicates(design, workers));
}

}  // namespace cevi
