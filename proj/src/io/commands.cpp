#include "cevi/io/commands.hpp"

#include "cevi/io/csv.hpp"
#include "cevi/km.hpp"
#include "cevi/montecarlo.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cevi::io {

std::string run_estimate(const CensoredSample<double>& sample, const EstimateOptions& options) {
    const Index n = sample.size();
    const Index k_max = options.k_max.value_or(n - 1);
    if (options.k_step < 1) throw UsageError("--k-step must be at least 1");
    if (options.k_min < 1 || k_max >= n || options.k_min > k_max)
        throw UsageError("invalid k range [" + std::to_string(options.k_min) + ", " + std::to_string(k_max) +
                         "] for n = " + std::to_string(n) + " (need 1 <= k_min <= k_max < n)");
    if (options.alphas.empty() || options.families.empty() || options.methods.empty())
        throw UsageError("alpha, families and methods must be non-empty");
    for (double a : options.alphas)
        if (!(a >= 1)) throw UsageError("--alpha values must be >= 1");

    const auto specs = expand_specs(options.families, options.methods, options.alphas);
    const auto curves = fit(sample);
    std::vector<EstimateRecord<double>> records;
    for (Index k = options.k_min; k <= k_max; k += options.k_step)
        for (const auto& spec : specs) records.push_back(estimate(sample, k, spec, curves));
    std::ostringstream out;
    write_estimates_csv(out, records);
    return out.str();
}

std::string run_simulate(const RunConfig& config, unsigned workers) {
    const auto design = to_design(config);
    const auto result = run_study(design, workers);
    std::ostringstream out;
    write_study_csv(out, result);
    return out.str();
}

std::string run_plot(const std::string& results_csv, Metric metric) {
    std::istringstream in(results_csv);
    return render_svg(read_study_csv(in), metric);
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        f << content;
        f.flush();
        if (!f) {
            f.close();
            std::remove(tmp.c_str());
            throw std::runtime_error("failed writing '" + tmp + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace cevi::io
