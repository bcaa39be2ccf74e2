#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "tvarch/errors.hpp"

namespace tvarch {

/// Innovation distribution for Z_t, standardized to mean 0 and variance 1.
/// Student-t requires df > 4 so that fourth moments of the process exist;
/// the draw is rescaled by sqrt((df-2)/df) to unit variance.
struct InnovationDist {
    enum class Kind { Gaussian, Laplace, StudentT };

    Kind kind = Kind::Gaussian;
    double df = 0.0;  // StudentT only

    static InnovationDist gaussian() { return {Kind::Gaussian, 0.0}; }
    static InnovationDist laplace() { return {Kind::Laplace, 0.0}; }
    static InnovationDist student_t(double df);

    void validate() const;

    /// One standardized draw. Uses only the passed-in generator, so the
    /// caller controls reproducibility.
    double sample(std::mt19937_64& rng) const;

    std::string name() const;
    static InnovationDist from_name(const std::string& name, double df = 0.0);
};

/// Time-varying ARCH(p) coefficient curves a_0(u), ..., a_p(u) on rescaled
/// time u in (0,1].
///
/// Each curve is stored as values on a shared increasing knot grid and
/// evaluated by linear interpolation (clamped outside the knot range).
/// Because interpolation is linear, validating the constraints at the knots
/// validates them everywhere:
///   a_0(u) > 0 and sum_{j>=1} a_j(u) <= 1 - delta.
struct ParamCurves {
    int order = 0;                           // p
    std::vector<double> knots;               // increasing, within [0, 1]
    std::vector<std::vector<double>> curves; // p+1 rows, one value per knot

    /// a_j(u), linear interpolation, clamped to the knot range.
    double eval(int j, double u) const;

    /// sum_{j=1..p} a_j(u).
    double lag_sum(double u) const;

    /// Throws ModelError unless a_0 >= some positive level and the lag sums
    /// stay below 1 - delta at every knot.
    void validate(double delta = 0.01) const;

    // -- constructors for the shapes used in experiments --------------------

    /// Constant coefficients; coeffs = (a_0, ..., a_p).
    static ParamCurves constant(std::vector<double> coeffs);

    /// Linear-in-u coefficients, from at_zero at u=0 to at_one at u=1.
    static ParamCurves linear(std::vector<double> at_zero, std::vector<double> at_one);

    /// a_j(u) = center_j + amplitude_j * sin(2*pi*cycles*u), sampled densely.
    static ParamCurves sinusoidal(std::vector<double> center, std::vector<double> amplitude,
                                  double cycles = 1.0, std::size_t n_knots = 201);

    /// ARCH(1) family with constant unconditional variance mu_star:
    /// a_1(u) given on a knot grid, a_0(u) = mu_star * (1 - a_1(u)).
    /// Sample paths of this family look stationary even though both
    /// coefficients move.
    static ParamCurves constant_variance_arch1(double mu_star, std::vector<double> a1_knots_u,
                                               std::vector<double> a1_values);

    /// The built-in example of the constant-variance ARCH(1) family:
    /// mu_star = 1 and a_1(u) oscillating between calm (0.03) and volatile
    /// (0.97) regimes, six cycles over the observation window with smooth
    /// cubic transitions. The fast regime switching is what makes bandwidth
    /// selection on paths of about a thousand points land at moderate
    /// bandwidths instead of smoothing the curve away entirely.
    static ParamCurves constant_variance_example();
};

/// mu(u) = a_0(u) / (1 - sum_{j>=1} a_j(u)): the local unconditional mean of
/// the squared process. Throws DivergenceError when the lag sum reaches 1.
double unconditional_mean(const ParamCurves& model, double u);

}  // namespace tvarch
