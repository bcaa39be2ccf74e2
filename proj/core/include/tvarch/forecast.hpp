#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "tvarch/series.hpp"

namespace tvarch {

// h-step-ahead conditional variance forecasts from one origin.
struct ForecastPath {
    std::size_t origin = 0;
    std::size_t horizon = 0;
    std::vector<double> v;   // v[h-1] = forecast of X^2_{origin+h}
    std::size_t span = 0;    // fitting window length, 0 when not span-based
    std::string model_tag;
};

struct OriginRow {
    std::size_t t = 0;        // forecast origin
    std::size_t span = 0;
    double forecast = 0.0;    // aggregated variance forecast over the horizon
    double realized = 0.0;    // sum of realized squared returns
    double y = 0.0;           // aggregated return / sqrt(forecast)
};

struct SpanScore {
    std::size_t span = 0;
    double amse = 0.0;
    std::size_t origins_used = 0;
};

struct SpanValidation {
    std::size_t best_span = 0;
    std::vector<std::size_t> origins;
    std::vector<SpanScore> scores;                // ascending span order
    std::vector<std::vector<OriginRow>> rows;     // parallel to scores
};

struct ExternalScore {
    std::string name;
    double amse = 0.0;
    std::size_t origins_used = 0;
};

struct BacktestReport {
    int order = 0;
    std::size_t horizon = 0;
    std::size_t chosen_span = 0;
    std::vector<SpanScore> span_scores;
    std::vector<OriginRow> rows;       // per-origin rows for the chosen span
    double coverage = std::numeric_limits<double>::quiet_NaN();
    double coverage_alpha = 0.05;
    std::vector<ExternalScore> external;
};

// Stationary two-stage fit of the last m observations ending at t
// (rectangular kernel over the whole segment), clipped so the forecast
// recursion is stable and positive.  Requires t >= m >= 2(p+1).
std::vector<double> span_fit(const ReturnSeries& series, std::size_t t, std::size_t m, int p);

// Variance forecast recursion v_h = a_0 + sum_j a_j w_{h-j}, where w_k is
// the forecast v_k for k >= 1 and the observed square for k <= 0.
// last_squares holds the p most recent squares, most recent first; a must
// satisfy sum_{j>=1} a_j < 1 (StabilityError otherwise).
ForecastPath h_step_forecast(const std::vector<double>& a,
                             const std::vector<double>& last_squares, std::size_t horizon);

// Sum of the per-step forecasts: the aggregated variance over the horizon.
double aggregate_forecast(const ForecastPath& path);

// Sum of realized squared returns X^2_{t+1..t+H}; requires t + H <= N.
double realized_volatility(const ReturnSeries& series, std::size_t t, std::size_t horizon);

// Mean squared difference between aggregated forecasts and realized values,
// divided by the presentation scale (1 = plain mean).
double amse(const std::vector<double>& forecasts, const std::vector<double>& realized,
            double scale = 1.0);

// Scores every span over the shared set of valid origins (t >= max span,
// t + H <= N) and picks the AMSE minimizer, ties toward the smaller span.
// RangeError when no origin qualifies.
SpanValidation forward_validate_span(const ReturnSeries& series,
                                     const std::vector<std::size_t>& spans, int p,
                                     const std::vector<std::size_t>& origins,
                                     std::size_t horizon);

// Fraction of origins whose aggregated return, standardized by the
// forecast, lands inside the central Gaussian interval:
//   |sum_{h<=H} X_{t+h}| / sqrt(forecast_t)  <=  z_{1-alpha/2}.
// Forecasts must be strictly positive (CoverageError otherwise).
double gaussian_coverage(const ReturnSeries& series, const std::vector<OriginRow>& rows,
                         std::size_t horizon, double alpha);

// Rolling backtest: origins origin_start, origin_start+stride, ... while
// t + H <= N; spans validated forward, per-origin rows reported for the
// winner, optional external forecast tables (pairs of origin, aggregated
// forecast) scored by the same AMSE over the overlapping origins.
BacktestReport run_backtest(
    const ReturnSeries& series, const std::vector<std::size_t>& spans, int p,
    std::size_t horizon, std::size_t origin_start, std::size_t origin_stride = 1,
    double coverage_alpha = 0.05,
    const std::vector<std::pair<std::string, std::vector<std::pair<std::size_t, double>>>>&
        external = {});

}  // namespace tvarch
