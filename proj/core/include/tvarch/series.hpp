#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "tvarch/errors.hpp"

namespace tvarch {

/// An observed (or simulated) sequence of log-returns X_1..X_N.
///
/// Indexing throughout the library is 1-based to match the usual
/// time-series convention: X_t for t = 1..N. at(t) performs the shift.
struct ReturnSeries {
    std::vector<double> values;
    std::vector<std::string> timestamps;  // empty or one label per value

    ReturnSeries() = default;
    explicit ReturnSeries(std::vector<double> v) : values(std::move(v)) {}

    std::size_t size() const { return values.size(); }

    double at(std::size_t t) const { return values[t - 1]; }

    double square(std::size_t t) const {
        const double x = values[t - 1];
        return x * x;
    }

    /// Squares X_t^2 in 1-based order; convenient for the regression code.
    std::vector<double> squares() const {
        std::vector<double> s(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) s[i] = values[i] * values[i];
        return s;
    }

    void require_fit_length(int p) const {
        if (values.size() < static_cast<std::size_t>(p) + 2) {
            throw RangeError("series too short: need at least p+2 = " +
                             std::to_string(p + 2) + " observations, have " +
                             std::to_string(values.size()));
        }
        for (double v : values) {
            if (!std::isfinite(v)) throw RangeError("series contains non-finite values");
        }
    }
};

}  // namespace tvarch
