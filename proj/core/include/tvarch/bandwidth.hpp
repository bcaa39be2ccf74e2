#pragma once

#include <cstddef>
#include <vector>

#include "tvarch/estimator.hpp"
#include "tvarch/kernel.hpp"
#include "tvarch/series.hpp"

namespace tvarch {

// Prediction-based cross-validation over a bandwidth grid.
// Scores are the criterion values per grid bandwidth (NaN where skipped);
// b_opt attains the minimum over the non-skipped entries, ties broken
// toward the smaller bandwidth.
struct CvReport {
    std::vector<double> grid;      // ascending
    std::vector<double> scores;
    std::vector<char> skipped;
    double b_opt = 0.0;
    std::size_t h = 1;             // subsampling stride used
};

// Two-stage fit at t with the observation block k = t..t+p excluded from
// both normal-equation sums, and the local mean excluding index t itself.
// The returned point carries that leave-out local mean in mu_hat.
FitPoint leave_out_fit_point(const ReturnSeries& series, std::size_t t, double b,
                             const Kernel& kernel, int p);

std::vector<double> leave_out_fit(const ReturnSeries& series, std::size_t t, double b,
                                  const Kernel& kernel, int p);

// Normalized leave-out squared prediction error, subsampled with stride h:
//
//   (h/N) sum_k [X^2_{kh} - a^(-kh)_0 - sum_j a^(-kh)_j X^2_{kh-j}]^2
//         / (mu^(-kh) + sum_j X^2_{kh-j})^2
//
// over grid points kh in (p, N].  Individual failed fits are skipped;
// CvError when every grid point fails.  Deterministic: terms are
// accumulated in index order regardless of thread count.
double cv_criterion(const ReturnSeries& series, double b, std::size_t h,
                    const Kernel& kernel, int p);

// Evaluates cv_criterion per bandwidth.  Bandwidths whose interior kernel
// window would hold fewer than 10(p+1) observations are skipped; CvError
// when nothing remains.
CvReport select_bandwidth(const ReturnSeries& series, const std::vector<double>& grid,
                          std::size_t h, const Kernel& kernel, int p);

// 20 regular bandwidths 0.025, 0.05, ..., 0.5.
std::vector<double> default_bandwidth_grid();

// Stride 10 for series of 1000..4000 points, otherwise about N/100.
std::size_t default_cv_stride(std::size_t n);

}  // namespace tvarch
