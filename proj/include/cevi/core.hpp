#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cevi {

using Index = Eigen::Index;

template <class Scalar>
using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

using ArrayXd = Array<double>;
using IndicatorArray = Eigen::Array<std::uint8_t, Eigen::Dynamic, 1>;

// Malformed or inconsistent input data (length mismatch, bad values).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A count-like parameter (k, n, replicate index) outside its valid range.
struct ParameterError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// A real argument outside the mathematical domain of a function.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Incompatible model assumptions, e.g. distributions with different endpoints.
struct ModelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Neumaier-compensated running sum. Used wherever long products are
/// accumulated in log space.
template <class Scalar>
class CompensatedSum {
public:
    void add(Scalar value) {
        if (!std::isfinite(value)) {
            sum_ += value;  // inf/nan dominate; skip the carry
            return;
        }
        const Scalar t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value))
            carry_ += (sum_ - t) + value;
        else
            carry_ += (value - t) + sum_;
        sum_ = t;
    }

    [[nodiscard]] Scalar value() const { return std::isfinite(sum_) ? sum_ + carry_ : sum_; }

private:
    Scalar sum_{0};
    Scalar carry_{0};
};

}  // namespace cevi
