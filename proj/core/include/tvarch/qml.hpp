#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tvarch/model.hpp"
#include "tvarch/series.hpp"

namespace tvarch {

// Gaussian quasi-maximum-likelihood fit of a stationary ARCH(p) segment.
struct QmlFit {
    std::vector<double> a_hat;
    bool converged = false;
    std::size_t iterations = 0;
    double objective = 0.0;
};

struct QmlOptions {
    double epsilon = 1e-6;     // lower bound for every coefficient
    double delta = 0.01;       // lag coefficients capped at 1 - delta
    double f_tol = 1e-9;       // relative objective spread for convergence
    double x_tol = 1e-8;       // simplex diameter for convergence
    std::size_t max_iterations = 2000;  // per restart
    std::size_t restarts = 5;
};

// Minimizes the Gaussian quasi-likelihood
//   (1/n) sum_{k>p} [ log s2_k(a) + X^2_k / s2_k(a) ],
//   s2_k(a) = a_0 + sum_j a_j X^2_{k-j},
// over the box a_0 >= eps, eps <= a_j <= 1-delta, by Nelder-Mead simplex
// search with box projection and deterministic jittered restarts.  The
// returned objective never exceeds the objective at any restart's
// initializer.  `init` defaults to a_0 = 0.5 * mean(X^2), a_j = 0.3/p.
// Segment length must be at least 2(p+1); a non-finite objective at the
// initializer raises InitError.  Hitting the iteration cap returns the best
// point found with converged = false.
QmlFit qml_fit_segment(const ReturnSeries& segment, std::size_t p,
                       const std::optional<std::vector<double>>& init = std::nullopt,
                       const QmlOptions& options = {});

// Per-coefficient mean absolute errors of the two-stage NLS and QML
// estimators over repeated stationary simulations, one column per sample
// size.  mae_* and ratio are indexed [size][coefficient]; ratio is
// MAE(NLS)/MAE(QML).  Replicates where either fit fails are excluded from
// both estimators and counted in `failures`.
struct ComparisonTable {
    std::size_t order = 0;
    std::vector<std::size_t> sample_sizes;
    std::size_t reps = 0;
    std::vector<std::vector<double>> mae_nls;
    std::vector<std::vector<double>> mae_qml;
    std::vector<std::vector<double>> ratio;
    std::vector<std::size_t> failures;
};

// Requires constant coefficient curves (a stationary model).  Each replicate
// draws its own seed from `seed` by counter mixing, so the table is
// reproducible and independent of evaluation order.
ComparisonTable compare_nls_qml(const ParamCurves& model, const InnovationDist& dist,
                                const std::vector<std::size_t>& sample_sizes,
                                std::size_t reps, std::uint64_t seed);

}  // namespace tvarch
