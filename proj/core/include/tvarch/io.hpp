#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tvarch/bandwidth.hpp"
#include "tvarch/bootstrap.hpp"
#include "tvarch/diagnostics.hpp"
#include "tvarch/estimator.hpp"
#include "tvarch/forecast.hpp"
#include "tvarch/model.hpp"
#include "tvarch/qml.hpp"
#include "tvarch/series.hpp"

// File formats: CSV for series and tabular reports (single-column or
// timestamp,value input; headers optional and auto-detected), JSON for
// models and structured fit output.  All writers go through a temp file
// plus rename, and print doubles with the shortest decimal that parses
// back exactly.

namespace tvarch::io {

std::string format_double(double v);

void atomic_write_text(const std::string& path, const std::string& content);

ReturnSeries read_series_csv(const std::string& path);
void write_series_csv(const std::string& path, const ReturnSeries& series);

struct ModelSpec {
    ParamCurves curves;
    InnovationDist dist;
};

ModelSpec read_model_json(const std::string& path);
void write_model_json(const std::string& path, const ModelSpec& spec);

void write_fit_curve_csv(const std::string& path, const FitCurve& curve);
void write_fit_curve_json(const std::string& path, const FitCurve& curve,
                          const CvReport* cv = nullptr);
void write_cv_report_csv(const std::string& path, const CvReport& report);

void write_bands_csv(const std::string& path, const BootstrapBands& bands);

void write_backtest_rows_csv(const std::string& path, const BacktestReport& report);
void write_backtest_summary_csv(const std::string& path, const BacktestReport& report);

// (origin, aggregated forecast) pairs, e.g. volatility forecasts produced
// by another model for side-by-side scoring.
std::vector<std::pair<std::size_t, double>> read_forecast_table_csv(const std::string& path);

void write_acf_csv(const std::string& path, const AcfReport& report);

struct DiagnosticsSummary {
    std::size_t n = 0;
    MomentSummary moments;
    TestResult ks;
    std::size_t lb_lags = 0;
    TestResult lb_z;       // Ljung-Box on residuals
    TestResult lb_abs_z;   // on absolute residuals
    TestResult lb_z2;      // on squared residuals
};

void write_diagnostics_csv(const std::string& path, const DiagnosticsSummary& summary);

void write_comparison_csv(const std::string& path, const ComparisonTable& table);

}  // namespace tvarch::io
