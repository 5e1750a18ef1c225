#pragma once

#include "cevi/montecarlo.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace cevi::io {

enum class Metric { median_bias, mse };

std::optional<Metric> parse_metric(std::string_view name);
std::string_view to_string(Metric metric);

/// Static line chart of one metric against k: one polyline per estimator,
/// a marker at every point, legend entries `family/method`.
/// Output is a pure function of the input.
std::string render_svg(const StudyResult& result, Metric metric);

}  // namespace cevi::io
