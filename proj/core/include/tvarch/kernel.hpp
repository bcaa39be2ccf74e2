#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tvarch/errors.hpp"

namespace tvarch {

/// Smoothing kernel W on [-1/2, 1/2] with unit integral, zero outside.
///
/// The window kernel is the convolution of the rectangular and triangular
/// kernels, rescaled to this support: W(x) = (8/3) K(2x) with K the classic
/// piecewise-cubic window on [-1, 1]; the 8/3 factor restores the unit
/// integral (the cubic window integrates to 3/4 on its own support).
struct Kernel {
    enum class Kind { Parzen, Rectangular, Triangular };

    Kind kind = Kind::Parzen;

    static Kernel parzen() { return {Kind::Parzen}; }
    static Kernel rectangular() { return {Kind::Rectangular}; }
    static Kernel triangular() { return {Kind::Triangular}; }
    static Kernel from_name(const std::string& name);
    std::string name() const;

    double operator()(double x) const;
};

/// Localized weights w_k = (1/(bN)) W((t0 - k)/(bN)) for k = 1..N.
///
/// Only the nonzero band around t0 is stored. Truncated at the series
/// boundaries, never reflected; raw_sum carries the realized weight mass so
/// callers can ratio-normalize when they need weights summing to one (the
/// least-squares closed form is normalization-invariant and does not).
struct WeightVector {
    std::size_t t0 = 0;
    double b = 0.0;
    std::size_t lo = 0;  // first index with nonzero weight (1-based)
    std::size_t hi = 0;  // last index, inclusive
    std::vector<double> w;  // w[k - lo] for k in [lo, hi]
    double raw_sum = 0.0;

    double at(std::size_t k) const { return (k < lo || k > hi) ? 0.0 : w[k - lo]; }
};

/// Weights centered at t0 with bandwidth b over a series of length n.
/// Throws BandwidthError when b*n < 2 (window narrower than two points).
WeightVector weights_at(const Kernel& kernel, std::size_t t0, double b, std::size_t n);

}  // namespace tvarch
