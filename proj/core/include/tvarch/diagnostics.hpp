#pragma once

#include <cstddef>
#include <vector>

#include "tvarch/series.hpp"

namespace tvarch {

// Sample autocovariance of squares and normalized autocorrelations for lags
// 0..max_lag.  S(0) is nonnegative and corr[0] == 1.
struct AcfReport {
    std::vector<std::size_t> lags;
    std::vector<double> autocov;
    std::vector<double> corr;
};

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

struct MomentSummary {
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};

// Sample autocovariance of the squared series at lag h, with the mean taken
// over the first n-h observations only:
//   S(h) = (1/(n-h)) sum_{t=1..n-h} X^2_t X^2_{t+h} - Xbar^2,
//   Xbar = (1/(n-h)) sum_{t=1..n-h} X^2_t.
// Requires 0 <= h <= n-2.
double sample_autocov_squares(const ReturnSeries& series, std::size_t h);

// S(h) and S(h)/S(0) for h = 0..max_lag, computed in parallel over lags.
AcfReport acf_report(const ReturnSeries& series, std::size_t max_lag);

// Ljung-Box portmanteau test on the mean-corrected sample autocorrelations
// of `values`: Q = n(n+2) sum_{k=1..lags} rho_k^2 / (n-k), with an upper-tail
// chi-square p-value on `lags` degrees of freedom.  Requires lags < n; a
// zero-variance input raises TestError.
TestResult ljung_box(const std::vector<double>& values, std::size_t lags);

// One-sample Kolmogorov-Smirnov test of the standardized values against the
// standard normal CDF, with the asymptotic Kolmogorov p-value at sqrt(n)*D.
// Requires n >= 10; zero variance raises TestError.
TestResult ks_gaussian(const std::vector<double>& values);

// Mean, unbiased variance, and the moment-ratio skewness / excess kurtosis
// (Gaussian -> 0).  Requires n >= 4 and nonzero variance.
MomentSummary moment_summary(const std::vector<double>& values);

}  // namespace tvarch
