#pragma once

#include "cevi/censor.hpp"
#include "cevi/estimators.hpp"
#include "cevi/montecarlo.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cevi::io {

/// Parses a real number in full (C locale); accepts `nan`, `inf`, and `a/b` fractions
/// when `allow_fraction` is set.
double parse_real(std::string_view text, bool allow_fraction = false);
long long parse_integer(std::string_view text);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

/// Reads a `z,delta` CSV (header required, at least 2 rows, z > 0,
/// delta in {0,1}). Errors carry the offending line number.
CensoredSample<double> read_censored_csv(std::istream& in);

inline constexpr std::string_view kEstimatesHeader = "k,family,method,alpha,gamma_hat,p_hat,degenerate";
inline constexpr std::string_view kStudyHeader =
    "k,family,method,alpha,median_bias,mse,mean,variance,degenerate_count,reps,n,gamma_x,gamma_c";

void write_estimates_csv(std::ostream& out, const std::vector<EstimateRecord<double>>& records);

void write_study_csv(std::ostream& out, const StudyResult& result);
StudyResult read_study_csv(std::istream& in);

}  // namespace cevi::io
