#include "tvarch/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tvarch/errors.hpp"
#include "tvarch/parallel.hpp"

namespace tvarch {

FitPoint leave_out_fit_point(const ReturnSeries& series, std::size_t t, double b,
                             const Kernel& kernel, int p) {
    series.require_fit_length(p);
    const std::size_t n = series.size();
    if (t < 1 || t > n) throw RangeError("leave_out_fit: t outside the series");

    LocalMeanOptions mu_opts;
    mu_opts.exclude = t;
    const double mu = local_mean_full(series, t, b, kernel, mu_opts).value;

    const std::vector<double> sq = series.squares();
    const WeightVector wv = weights_at(kernel, t, b, n);
    auto kappa = [&](std::size_t k) {
        double s = mu;
        for (int j = 1; j <= p; ++j) s += sq[k - static_cast<std::size_t>(j) - 1];
        return s;
    };
    const std::size_t skip_hi = std::min<std::size_t>(t + static_cast<std::size_t>(p), n);

    FitPoint point;
    point.t0 = t;
    point.u0 = static_cast<double>(t) / static_cast<double>(n);
    point.b = b;
    point.mu_hat = mu;
    point.a_hat = detail::wls_squares(sq, p, wv, kappa, t, skip_hi);
    return point;
}

std::vector<double> leave_out_fit(const ReturnSeries& series, std::size_t t, double b,
                                  const Kernel& kernel, int p) {
    return leave_out_fit_point(series, t, b, kernel, p).a_hat;
}

double cv_criterion(const ReturnSeries& series, double b, std::size_t h,
                    const Kernel& kernel, int p) {
    series.require_fit_length(p);
    if (h < 1) throw RangeError("cv_criterion: stride must be >= 1");
    const std::size_t n = series.size();
    const std::vector<double> sq = series.squares();

    std::vector<std::size_t> points;
    for (std::size_t t = h; t <= n; t += h) {
        if (t > static_cast<std::size_t>(p)) points.push_back(t);
    }
    if (points.empty()) throw CvError("cv_criterion: no usable grid points");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> terms(points.size(), nan);
    parallel_for(points.size(), [&](std::size_t i) {
        const std::size_t t = points[i];
        try {
            const FitPoint fit = leave_out_fit_point(series, t, b, kernel, p);
            double pred = fit.a_hat[0];
            double denom = fit.mu_hat;
            for (int j = 1; j <= p; ++j) {
                const double lag = sq[t - static_cast<std::size_t>(j) - 1];
                pred += fit.a_hat[static_cast<std::size_t>(j)] * lag;
                denom += lag;
            }
            const double err = sq[t - 1] - pred;
            terms[i] = (err * err) / (denom * denom);
        } catch (const Error&) {
            // leave NaN: this grid point is dropped from the sum
        }
    });

    double sum = 0.0;
    std::size_t ok = 0;
    for (double v : terms) {
        if (std::isnan(v)) continue;
        sum += v;
        ++ok;
    }
    if (ok == 0) throw CvError("cv_criterion: every grid point failed");
    return sum * static_cast<double>(h) / static_cast<double>(n);
}

namespace {

// Observation count of an interior kernel window, used by the skip rule.
std::size_t interior_window_count(const Kernel& kernel, double b, std::size_t n) {
    const std::size_t t0 = (n + 1) / 2;
    const WeightVector wv = weights_at(kernel, t0, b, n);
    return wv.hi - wv.lo + 1;
}

}  // namespace

CvReport select_bandwidth(const ReturnSeries& series, const std::vector<double>& grid,
                          std::size_t h, const Kernel& kernel, int p) {
    if (grid.empty()) throw CvError("select_bandwidth: empty bandwidth grid");
    const std::size_t n = series.size();

    CvReport report;
    report.grid = grid;
    std::sort(report.grid.begin(), report.grid.end());
    report.h = h;
    report.scores.assign(report.grid.size(), std::numeric_limits<double>::quiet_NaN());
    report.skipped.assign(report.grid.size(), 0);

    const std::size_t min_window = 10 * (static_cast<std::size_t>(p) + 1);
    bool have = false;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
        const double b = report.grid[i];
        try {
            if (interior_window_count(kernel, b, n) < min_window) {
                report.skipped[i] = 1;
                continue;
            }
            report.scores[i] = cv_criterion(series, b, h, kernel, p);
        } catch (const Error&) {
            report.skipped[i] = 1;
            continue;
        }
        // strict comparison in ascending grid order: ties go to the smaller b
        if (!have || report.scores[i] < best) {
            have = true;
            best = report.scores[i];
            report.b_opt = b;
        }
    }
    if (!have) throw CvError("select_bandwidth: all bandwidths skipped");
    return report;
}

std::vector<double> default_bandwidth_grid() {
    std::vector<double> grid(20);
    for (std::size_t i = 0; i < 20; ++i) grid[i] = 0.025 * static_cast<double>(i + 1);
    return grid;
}

std::size_t default_cv_stride(std::size_t n) {
    if (n >= 1000 && n <= 4000) return 10;
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(
                                        static_cast<double>(n) / 100.0)));
}

}  // namespace tvarch
