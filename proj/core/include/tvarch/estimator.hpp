#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tvarch/kernel.hpp"
#include "tvarch/series.hpp"

namespace tvarch {

/// How the first-stage scale estimate mu_hat is obtained.
///   Local    — kernel-weighted local mean of squares at t0 (the default);
///   Global   — sample mean of squares over the whole series;
///   Supplied — caller provides the value (bootstrap refits reuse the
///              original series' local mean).
struct MuMode {
    enum class Kind { Local, Global, Supplied };

    Kind kind = Kind::Local;
    double value = 0.0;

    static MuMode local() { return {Kind::Local, 0.0}; }
    static MuMode global() { return {Kind::Global, 0.0}; }
    static MuMode supplied(double v) { return {Kind::Supplied, v}; }
};

/// One local fit: coefficient estimates at a single time point.
/// a_hat entries may be negative; clip_coefficients() enforces the
/// constraints needed for resampling and forecasting.
struct FitPoint {
    std::size_t t0 = 0;          // time index of the fit
    double u0 = 0.0;             // rescaled time t0/N
    std::vector<double> a_hat;   // (a_0, ..., a_p)
    double mu_hat = 0.0;         // first-stage local mean of squares
    double b = 0.0;              // bandwidth used
};

/// Local fits over a time grid, all sharing (order, kernel, bandwidth).
/// Points that failed (singular local design) are collected in failures
/// rather than aborting the whole curve.
struct FitCurve {
    int order = 0;
    Kernel kernel;
    double b = 0.0;
    std::vector<FitPoint> points;
    std::vector<std::pair<std::size_t, std::string>> failures;
};

/// Standardized residuals over the window [t0 - bN, t0 + bN - 1]
/// (clipped to valid indices k > p).
struct ResidualSet {
    std::size_t lo = 0;             // first window index (1-based)
    std::size_t hi = 0;             // last window index, inclusive
    std::vector<double> z2_raw;     // X_k^2 / fitted sigma_k^2
    std::vector<double> z2;         // recentered: nonnegative, window mean exactly 1
    std::vector<double> signed_z;   // sign(X_k) * sqrt(z2)
};

struct LocalMean {
    double value = 0.0;
    bool floored = false;  // true when an all-zero window hit the floor
};

struct LocalMeanOptions {
    /// Divide by the realized weight mass instead of using the raw 1/(bN)
    /// normalization. Exact for constant series and unbiased at the
    /// boundaries; the raw mode reproduces the plain kernel average.
    bool ratio_normalized = true;
    double floor_epsilon = 1e-12;
    std::size_t exclude = 0;  // 1-based index left out of the sums; 0 = none
};

/// Kernel-weighted local mean of the squared series at t0.
LocalMean local_mean_full(const ReturnSeries& series, std::size_t t0, double b,
                          const Kernel& kernel, const LocalMeanOptions& opts = {});
double local_mean(const ReturnSeries& series, std::size_t t0, double b, const Kernel& kernel);

/// Kernel-weighted least squares on the autoregression of squares,
///
///   X_k^2 ~ alpha_0 + sum_j alpha_j X_{k-j}^2,
///
/// each term weighted by (1/(bN)) W((t0-k)/(bN)) / kappa(k)^2. Returns the
/// closed-form minimizer: the solve of the (p+1) x (p+1) normal equations.
/// kappa must be strictly positive on the window; rescaling kappa by any
/// constant leaves the result unchanged.
///
/// Throws SingularDesignError when the local design is numerically singular
/// and InsufficientWindowError when fewer than 2(p+1) observations carry
/// weight.
std::vector<double> weighted_ls(const ReturnSeries& series, std::size_t t0, double b,
                                const Kernel& kernel, int p,
                                const std::function<double(std::size_t)>& kappa);

/// The two-stage estimator: stage 1 computes mu_hat per mu_mode, stage 2
/// runs weighted_ls with kappa(k) = mu_hat + X_{k-1}^2 + ... + X_{k-p}^2.
/// The normalization keeps the estimator well behaved under heavy tails and
/// needs no iterative optimization.
FitPoint nls_fit_at(const ReturnSeries& series, std::size_t t0, double b, const Kernel& kernel,
                    int p, const MuMode& mu_mode = MuMode::local());

/// nls_fit_at mapped over a grid of time points (parallel over the grid;
/// per-point failures collected, not fatal).
FitCurve nls_fit_curve(const ReturnSeries& series, const std::vector<std::size_t>& grid,
                       double b, const Kernel& kernel, int p,
                       const MuMode& mu_mode = MuMode::local());

/// Every admissible fit index p+1..N.
std::vector<std::size_t> full_grid(std::size_t n, int p);

/// Third-stage refit with the estimated conditional variance as the weight:
/// kappa(k) = a~_0 + sum_j a~_j X_{k-j}^2 from the first_stage fit. Matches
/// the efficiency of local quasi-likelihood when all true coefficients are
/// positive; requires every first-stage coefficient > 0 (throws
/// NotApplicableError otherwise).
std::vector<double> oracle_refit(const ReturnSeries& series, std::size_t t0, double b,
                                 const Kernel& kernel, const FitPoint& first_stage);

/// Make an estimate usable as a generator: floor negative lag coefficients
/// at zero (and a_0 at a0_floor), then, if the lag coefficients sum past
/// 1 - delta, rescale the lag block by (1 - delta)/sum. a_0 is never
/// rescaled. The result always yields positive, stable variance recursions.
std::vector<double> clip_coefficients(std::vector<double> a_hat, double delta = 0.01,
                                      double a0_floor = 0.0);

/// Standardized residuals on the window around t0 under clipped
/// coefficients. The recentered squares average to one exactly, which is
/// what resampling needs. Throws InsufficientWindowError below 10
/// observations.
ResidualSet residuals(const ReturnSeries& series, std::size_t t0, double b,
                      const std::vector<double>& clipped);

/// Standardized residuals X_t / sigma_hat_t for a whole fitted curve, one
/// per curve point with t0 > p (coefficients clipped per point). Feeds the
/// goodness-of-fit diagnostics.
std::vector<double> curve_residuals(const ReturnSeries& series, const FitCurve& curve,
                                    double delta = 0.01);

namespace detail {

/// The closed-form weighted LS on an explicit squared series; shared by the
/// estimator, cross-validation (index exclusion) and the bootstrap refit.
/// sq[i-1] = X_i^2; sums run over k in [max(p+1, wv.lo), min(len, wv.hi)]
/// minus the closed interval [skip_lo, skip_hi] (pass skip_lo > skip_hi for
/// no exclusion).
std::vector<double> wls_squares(const std::vector<double>& sq, int p, const WeightVector& wv,
                                const std::function<double(std::size_t)>& kappa,
                                std::size_t skip_lo = 1, std::size_t skip_hi = 0);

}  // namespace detail

}  // namespace tvarch
