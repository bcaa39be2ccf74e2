#include "tvarch/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "tvarch/errors.hpp"
#include "tvarch/parallel.hpp"
#include "tvarch/special.hpp"

namespace tvarch {

double sample_autocov_squares(const ReturnSeries& series, std::size_t h) {
    const std::size_t n = series.size();
    if (n < 2 || h > n - 2) {
        throw RangeError("sample_autocov_squares: need 0 <= h <= n-2");
    }
    const std::size_t m = n - h;
    double cross = 0.0;
    double mean = 0.0;
    for (std::size_t t = 1; t <= m; ++t) {
        const double s = series.square(t);
        cross += s * series.square(t + h);
        mean += s;
    }
    cross /= static_cast<double>(m);
    mean /= static_cast<double>(m);
    return cross - mean * mean;
}

AcfReport acf_report(const ReturnSeries& series, std::size_t max_lag) {
    const std::size_t n = series.size();
    if (n < 2 || max_lag > n - 2) {
        throw RangeError("acf_report: need max_lag <= n-2");
    }
    AcfReport report;
    report.lags.resize(max_lag + 1);
    report.autocov.resize(max_lag + 1);
    report.corr.resize(max_lag + 1);
    parallel_for(max_lag + 1, [&](std::size_t h) {
        report.lags[h] = h;
        report.autocov[h] = sample_autocov_squares(series, h);
    });
    const double s0 = report.autocov[0];
    for (std::size_t h = 0; h <= max_lag; ++h) {
        report.corr[h] = s0 > 0.0 ? report.autocov[h] / s0 : (h == 0 ? 1.0 : 0.0);
    }
    if (s0 > 0.0) report.corr[0] = 1.0;
    return report;
}

TestResult ljung_box(const std::vector<double>& values, std::size_t lags) {
    const std::size_t n = values.size();
    if (lags < 1 || lags >= n) {
        throw RangeError("ljung_box: need 1 <= lags < n");
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double c0 = 0.0;
    for (double v : values) c0 += (v - mean) * (v - mean);
    if (!(c0 > 0.0)) {
        throw TestError("ljung_box: series has zero variance");
    }
    double q = 0.0;
    for (std::size_t k = 1; k <= lags; ++k) {
        double ck = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) {
            ck += (values[t] - mean) * (values[t + k] - mean);
        }
        const double rho = ck / c0;
        q += rho * rho / static_cast<double>(n - k);
    }
    q *= static_cast<double>(n) * (static_cast<double>(n) + 2.0);
    TestResult out;
    out.statistic = q;
    out.p_value = special::chi_square_upper_tail(q, static_cast<double>(lags));
    return out;
}

TestResult ks_gaussian(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 10) {
        throw RangeError("ks_gaussian: need at least 10 observations");
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n - 1);
    if (!(var > 0.0)) {
        throw TestError("ks_gaussian: series has zero variance");
    }
    const double sd = std::sqrt(var);
    std::vector<double> z(values);
    for (double& v : z) v = (v - mean) / sd;
    std::sort(z.begin(), z.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double cdf = special::normal_cdf(z[i]);
        const double lo = cdf - static_cast<double>(i) / static_cast<double>(n);
        const double hi = static_cast<double>(i + 1) / static_cast<double>(n) - cdf;
        d = std::max({d, lo, hi});
    }
    TestResult out;
    out.statistic = d;
    out.p_value = special::kolmogorov_upper_tail(std::sqrt(static_cast<double>(n)) * d);
    return out;
}

MomentSummary moment_summary(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 4) {
        throw RangeError("moment_summary: need at least 4 observations");
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    if (!(m2 > 0.0)) {
        throw TestError("moment_summary: series has zero variance");
    }
    MomentSummary out;
    out.mean = mean;
    out.variance = m2 * static_cast<double>(n) / static_cast<double>(n - 1);
    out.skewness = m3 / std::pow(m2, 1.5);
    out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    return out;
}

}  // namespace tvarch
