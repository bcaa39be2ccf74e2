#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tvarch/estimator.hpp"
#include "tvarch/kernel.hpp"
#include "tvarch/series.hpp"

namespace tvarch {

struct BootstrapConfig {
    std::size_t B = 100;        // replicate count
    double level = 0.8;         // band coverage, in (0,1)
    double delta = 0.01;        // clip margin for the generating coefficients
    std::uint64_t seed = 0;
    bool equal_tailed = false;  // percentile band instead of symmetric
};

// Uniform empirical distribution over the recentered squared residuals of a
// window; the mean of the support is exactly 1 by construction.
struct ResidualEdf {
    ResidualSet residuals;

    const std::vector<double>& values() const { return residuals.z2; }

    double sample(std::mt19937_64& rng) const {
        std::uniform_int_distribution<std::size_t> pick(0, residuals.z2.size() - 1);
        return residuals.z2[pick(rng)];
    }
};

// Pointwise confidence band at one fit location.
struct CiEntry {
    std::size_t t0 = 0;
    double u0 = 0.0;
    std::vector<double> center;  // clipped two-stage estimate a_bar
    std::vector<double> lower;
    std::vector<double> upper;
    double level = 0.0;
    std::size_t B = 0;
    std::size_t failures = 0;
    bool equal_tailed = false;
};

struct BootstrapBands {
    int order = 0;
    double b = 0.0;
    BootstrapConfig config;
    std::vector<CiEntry> entries;
    std::vector<std::pair<std::size_t, std::string>> failures;  // per grid point
};

// Residual set of the window around t0 under the clipped coefficients,
// wrapped as a resampling distribution.
ResidualEdf residual_edf(const ReturnSeries& series, std::size_t t0, double b,
                         const std::vector<double>& clipped);

// Squared bootstrap series X+^2_1..length from the recursion
//   s2_t = a_0 + sum_j a_j X+^2_{t-j},   X+^2_t = s2_t * Z+^2_t,
// with zero pre-sample squares and Z+^2 drawn i.i.d. from the residual EDF.
// The clipped coefficients guarantee the recursion cannot run off.
std::vector<double> bootstrap_path(const ResidualEdf& edf, const std::vector<double>& clipped,
                                   std::size_t length, std::uint64_t seed);

// Closed-form weighted LS refit on a bootstrap path, with the normalization
// kappa(k) = mu_hat_original + sum_j X+^2_{k-j}.  mu_hat_original is the
// plain series' local mean, reused unchanged across replicates.  n_scale is
// the original series length: it fixes the kernel scale b*N and the summation
// cutoff, which do not shrink with the generated path.
std::vector<double> bootstrap_fit(const std::vector<double>& squared_path,
                                  double mu_hat_original, std::size_t t0, double b,
                                  const Kernel& kernel, int p, std::size_t n_scale);

// Fits a_bar at t0, resamples cfg.B paths of length t0 + b*N/2, refits each,
// and forms the band from the replicate spread:
//   symmetric (default) — a_bar_j +/- level-quantile of |a+_j - a_bar_j|;
//   equal-tailed        — percentile interval of a+_j.
// More than 20% failed replicates raises CiUnreliableError.  Replicate
// seeds are derived from cfg.seed by counter mixing, so the result does not
// depend on evaluation order.
CiEntry pointwise_ci(const ReturnSeries& series, std::size_t t0, double b,
                     const Kernel& kernel, int p, const BootstrapConfig& cfg);

// pointwise_ci mapped over a grid of fit locations; per-point errors are
// collected, not fatal.
BootstrapBands bootstrap_bands(const ReturnSeries& series, const std::vector<std::size_t>& grid,
                               double b, const Kernel& kernel, int p,
                               const BootstrapConfig& cfg);

}  // namespace tvarch
