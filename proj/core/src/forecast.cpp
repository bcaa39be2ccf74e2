#include "tvarch/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "tvarch/errors.hpp"
#include "tvarch/estimator.hpp"
#include "tvarch/parallel.hpp"
#include "tvarch/special.hpp"

namespace tvarch {

std::vector<double> span_fit(const ReturnSeries& series, std::size_t t, std::size_t m, int p) {
    const std::size_t d = static_cast<std::size_t>(p) + 1;
    if (m < 2 * d) throw RangeError("span_fit: span shorter than 2(p+1)");
    if (t < m || t > series.size()) {
        throw RangeError("span_fit: need m <= t <= N");
    }
    ReturnSeries segment;
    segment.values.assign(series.values.begin() + static_cast<std::ptrdiff_t>(t - m),
                          series.values.begin() + static_cast<std::ptrdiff_t>(t));
    const FitPoint fit =
        nls_fit_at(segment, (m + 1) / 2, 1.0, Kernel::rectangular(), p);
    return clip_coefficients(fit.a_hat, 0.01, 1e-8 * fit.mu_hat);
}

ForecastPath h_step_forecast(const std::vector<double>& a,
                             const std::vector<double>& last_squares, std::size_t horizon) {
    if (horizon < 1) throw RangeError("h_step_forecast: horizon must be >= 1");
    if (a.empty()) throw RangeError("h_step_forecast: empty coefficient vector");
    const std::size_t p = a.size() - 1;
    if (last_squares.size() < p) {
        throw RangeError("h_step_forecast: need the p most recent squares");
    }
    double lag_sum = 0.0;
    for (std::size_t j = 1; j <= p; ++j) lag_sum += a[j];
    if (!(lag_sum < 1.0)) {
        throw StabilityError("h_step_forecast: lag coefficients sum to " +
                             std::to_string(lag_sum) + ", forecast would diverge");
    }

    ForecastPath path;
    path.horizon = horizon;
    path.v.resize(horizon);
    for (std::size_t h = 1; h <= horizon; ++h) {
        double v = a[0];
        for (std::size_t j = 1; j <= p; ++j) {
            // w_{h-j}: already-forecast value for positive index, observed
            // square for zero or negative index
            const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(h) -
                                     static_cast<std::ptrdiff_t>(j);
            const double w = k >= 1 ? path.v[static_cast<std::size_t>(k) - 1]
                                    : last_squares[static_cast<std::size_t>(-k)];
            v += a[j] * w;
        }
        path.v[h - 1] = v;
    }
    return path;
}

double aggregate_forecast(const ForecastPath& path) {
    double sum = 0.0;
    for (double v : path.v) sum += v;
    return sum;
}

double realized_volatility(const ReturnSeries& series, std::size_t t, std::size_t horizon) {
    if (horizon < 1) throw RangeError("realized_volatility: horizon must be >= 1");
    if (t + horizon > series.size()) {
        throw RangeError("realized_volatility: horizon reaches past the series end");
    }
    double sum = 0.0;
    for (std::size_t h = 1; h <= horizon; ++h) sum += series.square(t + h);
    return sum;
}

double amse(const std::vector<double>& forecasts, const std::vector<double>& realized,
            double scale) {
    if (forecasts.size() != realized.size() || forecasts.empty()) {
        throw RangeError("amse: forecast and realized lists must have equal nonzero length");
    }
    if (!(scale > 0.0)) throw RangeError("amse: scale must be positive");
    double sum = 0.0;
    for (std::size_t i = 0; i < forecasts.size(); ++i) {
        const double d = forecasts[i] - realized[i];
        sum += d * d;
    }
    return sum / static_cast<double>(forecasts.size()) / scale;
}

namespace {

std::vector<double> recent_squares(const ReturnSeries& series, std::size_t t, int p) {
    std::vector<double> out(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) {
        out[static_cast<std::size_t>(j)] = series.square(t - static_cast<std::size_t>(j));
    }
    return out;
}

}  // namespace

SpanValidation forward_validate_span(const ReturnSeries& series,
                                     const std::vector<std::size_t>& spans, int p,
                                     const std::vector<std::size_t>& origins,
                                     std::size_t horizon) {
    if (spans.empty()) throw RangeError("forward_validate_span: no spans given");
    if (horizon < 1) throw RangeError("forward_validate_span: horizon must be >= 1");
    std::vector<std::size_t> sorted_spans = spans;
    std::sort(sorted_spans.begin(), sorted_spans.end());
    const std::size_t max_span = sorted_spans.back();
    const std::size_t n = series.size();

    SpanValidation val;
    for (std::size_t t : origins) {
        if (t >= max_span && t + horizon <= n) val.origins.push_back(t);
    }
    std::sort(val.origins.begin(), val.origins.end());
    if (val.origins.empty()) {
        throw RangeError("forward_validate_span: no origin admits every span plus horizon");
    }

    std::vector<double> realized(val.origins.size());
    std::vector<double> agg_return(val.origins.size());
    for (std::size_t i = 0; i < val.origins.size(); ++i) {
        const std::size_t t = val.origins[i];
        realized[i] = realized_volatility(series, t, horizon);
        double s = 0.0;
        for (std::size_t h = 1; h <= horizon; ++h) s += series.at(t + h);
        agg_return[i] = s;
    }

    val.scores.resize(sorted_spans.size());
    val.rows.resize(sorted_spans.size());
    for (std::size_t si = 0; si < sorted_spans.size(); ++si) {
        const std::size_t m = sorted_spans[si];
        std::vector<OriginRow> rows(val.origins.size());
        std::vector<std::string> errors(val.origins.size());
        parallel_for(val.origins.size(), [&](std::size_t i) {
            const std::size_t t = val.origins[i];
            try {
                const std::vector<double> a = span_fit(series, t, m, p);
                const ForecastPath path =
                    h_step_forecast(a, recent_squares(series, t, p), horizon);
                OriginRow& row = rows[i];
                row.t = t;
                row.span = m;
                row.forecast = aggregate_forecast(path);
                row.realized = realized[i];
                row.y = row.forecast > 0.0 ? agg_return[i] / std::sqrt(row.forecast) : 0.0;
            } catch (const Error& e) {
                errors[i] = e.what();
            }
        });
        for (std::size_t i = 0; i < errors.size(); ++i) {
            if (!errors[i].empty()) {
                throw SingularDesignError("span " + std::to_string(m) + " failed at origin " +
                                          std::to_string(val.origins[i]) + ": " + errors[i]);
            }
        }
        std::vector<double> f(val.origins.size());
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = rows[i].forecast;
        val.scores[si] = {m, amse(f, realized), val.origins.size()};
        val.rows[si] = std::move(rows);
    }

    // ascending span order with strict comparison: ties pick the smaller m
    std::size_t best = 0;
    for (std::size_t si = 1; si < val.scores.size(); ++si) {
        if (val.scores[si].amse < val.scores[best].amse) best = si;
    }
    val.best_span = val.scores[best].span;
    return val;
}

double gaussian_coverage(const ReturnSeries& series, const std::vector<OriginRow>& rows,
                         std::size_t horizon, double alpha) {
    if (rows.empty()) throw RangeError("gaussian_coverage: no origins");
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw RangeError("gaussian_coverage: alpha must lie in (0, 1]");
    }
    const double z = special::normal_quantile(1.0 - alpha / 2.0);
    std::size_t inside = 0;
    for (const OriginRow& row : rows) {
        if (!(row.forecast > 0.0)) {
            throw CoverageError("gaussian_coverage: nonpositive forecast at origin " +
                                std::to_string(row.t));
        }
        double s = 0.0;
        for (std::size_t h = 1; h <= horizon; ++h) s += series.at(row.t + h);
        if (std::abs(s / std::sqrt(row.forecast)) <= z) ++inside;
    }
    return static_cast<double>(inside) / static_cast<double>(rows.size());
}

BacktestReport run_backtest(
    const ReturnSeries& series, const std::vector<std::size_t>& spans, int p,
    std::size_t horizon, std::size_t origin_start, std::size_t origin_stride,
    double coverage_alpha,
    const std::vector<std::pair<std::string, std::vector<std::pair<std::size_t, double>>>>&
        external) {
    if (origin_stride < 1) throw RangeError("run_backtest: origin stride must be >= 1");
    const std::size_t n = series.size();
    std::vector<std::size_t> origins;
    for (std::size_t t = origin_start; t + horizon <= n; t += origin_stride) {
        origins.push_back(t);
    }

    const SpanValidation val = forward_validate_span(series, spans, p, origins, horizon);

    BacktestReport report;
    report.order = p;
    report.horizon = horizon;
    report.chosen_span = val.best_span;
    report.span_scores = val.scores;
    report.coverage_alpha = coverage_alpha;
    for (std::size_t si = 0; si < val.scores.size(); ++si) {
        if (val.scores[si].span == val.best_span) {
            report.rows = val.rows[si];
            break;
        }
    }
    report.coverage = gaussian_coverage(series, report.rows, horizon, coverage_alpha);

    for (const auto& [name, table] : external) {
        std::vector<double> f, r;
        for (const auto& [t, forecast] : table) {
            const auto it = std::lower_bound(val.origins.begin(), val.origins.end(), t);
            if (it == val.origins.end() || *it != t) continue;
            f.push_back(forecast);
            r.push_back(realized_volatility(series, t, horizon));
        }
        ExternalScore score;
        score.name = name;
        score.origins_used = f.size();
        score.amse = f.empty() ? std::numeric_limits<double>::quiet_NaN() : amse(f, r);
        report.external.push_back(std::move(score));
    }
    return report;
}

}  // namespace tvarch
