#include "tvarch/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tvarch/errors.hpp"

namespace tvarch::io {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

void atomic_write_text(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp + " for writing");
        out << content;
        out.flush();
        if (!out) throw IoError("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw IoError("cannot rename " + tmp + " to " + path + ": " +
                      std::strerror(errno));
    }
}

namespace {

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.c_str();
    char* end = nullptr;
    errno = 0;
    out = std::strtod(begin, &end);
    if (end == begin || errno == ERANGE) return false;
    while (*end == ' ' || *end == '\t') ++end;
    return *end == '\0';
}

[[noreturn]] void bad_line(const std::string& path, std::size_t lineno,
                           const std::string& what) {
    throw IoError(path + ":" + std::to_string(lineno) + ": " + what);
}

}  // namespace

ReturnSeries read_series_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    ReturnSeries series;
    bool saw_data = false;
    bool timestamped = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::vector<std::string> fields = split_csv(lines[i]);
        if (fields.size() > 2) {
            bad_line(path, i + 1, "expected 1 or 2 columns, found " +
                                      std::to_string(fields.size()));
        }
        const std::string& value_field = fields.back();
        double v = 0.0;
        if (!parse_double(value_field, v)) {
            if (!saw_data) continue;  // header line
            bad_line(path, i + 1, "cannot parse value '" + value_field + "'");
        }
        if (!saw_data) {
            timestamped = fields.size() == 2;
        } else if ((fields.size() == 2) != timestamped) {
            bad_line(path, i + 1, "inconsistent column count");
        }
        saw_data = true;
        series.values.push_back(v);
        if (timestamped) series.timestamps.push_back(fields[0]);
    }
    if (!saw_data) throw IoError(path + ": no data rows");
    return series;
}

void write_series_csv(const std::string& path, const ReturnSeries& series) {
    const bool timestamped = !series.timestamps.empty();
    std::string out = timestamped ? "timestamp,value\n" : "value\n";
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        if (timestamped) {
            out += series.timestamps[i];
            out += ',';
        }
        out += format_double(series.values[i]);
        out += '\n';
    }
    atomic_write_text(path, out);
}

ModelSpec read_model_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    try {
        ModelSpec spec;
        if (j.contains("builtin")) {
            const std::string name = j.at("builtin").get<std::string>();
            if (name == "constant_variance_example") {
                spec.curves = ParamCurves::constant_variance_example();
            } else {
                throw IoError(path + ": unknown builtin model '" + name + "'");
            }
        } else {
            spec.curves.order = j.at("order").get<int>();
            spec.curves.knots = j.at("knots").get<std::vector<double>>();
            spec.curves.curves = j.at("curves").get<std::vector<std::vector<double>>>();
        }
        if (j.contains("innovation")) {
            const json& inn = j.at("innovation");
            spec.dist = InnovationDist::from_name(inn.at("kind").get<std::string>(),
                                                  inn.value("df", 0.0));
        }
        spec.curves.validate();
        spec.dist.validate();
        return spec;
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

void write_model_json(const std::string& path, const ModelSpec& spec) {
    json j;
    j["order"] = spec.curves.order;
    j["knots"] = spec.curves.knots;
    j["curves"] = spec.curves.curves;
    j["innovation"]["kind"] = spec.dist.name();
    if (spec.dist.kind == InnovationDist::Kind::StudentT) {
        j["innovation"]["df"] = spec.dist.df;
    }
    atomic_write_text(path, j.dump(2) + "\n");
}

void write_fit_curve_csv(const std::string& path, const FitCurve& curve) {
    std::string out = "t0,u0,mu_hat";
    for (int j = 0; j <= curve.order; ++j) out += ",a_" + std::to_string(j);
    out += '\n';
    for (const FitPoint& pt : curve.points) {
        out += std::to_string(pt.t0);
        out += ',';
        out += format_double(pt.u0);
        out += ',';
        out += format_double(pt.mu_hat);
        for (double a : pt.a_hat) {
            out += ',';
            out += format_double(a);
        }
        out += '\n';
    }
    atomic_write_text(path, out);
}

namespace {

json cv_to_json(const CvReport& cv) {
    json j;
    j["grid"] = cv.grid;
    j["scores"] = cv.scores;
    std::vector<bool> skipped(cv.skipped.begin(), cv.skipped.end());
    j["skipped"] = skipped;
    j["b_opt"] = cv.b_opt;
    j["h"] = cv.h;
    return j;
}

}  // namespace

void write_fit_curve_json(const std::string& path, const FitCurve& curve,
                          const CvReport* cv) {
    json j;
    j["order"] = curve.order;
    j["kernel"] = curve.kernel.name();
    j["b"] = curve.b;
    j["points"] = json::array();
    for (const FitPoint& pt : curve.points) {
        json jp;
        jp["t0"] = pt.t0;
        jp["u0"] = pt.u0;
        jp["mu_hat"] = pt.mu_hat;
        jp["a"] = pt.a_hat;
        j["points"].push_back(std::move(jp));
    }
    j["failures"] = json::array();
    for (const auto& [t0, message] : curve.failures) {
        j["failures"].push_back({{"t0", t0}, {"message", message}});
    }
    if (cv != nullptr) j["cv"] = cv_to_json(*cv);
    atomic_write_text(path, j.dump(2) + "\n");
}

void write_cv_report_csv(const std::string& path, const CvReport& report) {
    std::string out = "b,score,skipped,chosen\n";
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
        out += format_double(report.grid[i]);
        out += ',';
        out += report.skipped[i] ? "" : format_double(report.scores[i]);
        out += ',';
        out += report.skipped[i] ? "1" : "0";
        out += ',';
        out += (!report.skipped[i] && report.grid[i] == report.b_opt) ? "1" : "0";
        out += '\n';
    }
    atomic_write_text(path, out);
}

void write_bands_csv(const std::string& path, const BootstrapBands& bands) {
    std::string out = "t0,j,center,lower,upper,level,B,failures\n";
    for (const CiEntry& e : bands.entries) {
        for (std::size_t j = 0; j < e.center.size(); ++j) {
            out += std::to_string(e.t0);
            out += ',' + std::to_string(j);
            out += ',' + format_double(e.center[j]);
            out += ',' + format_double(e.lower[j]);
            out += ',' + format_double(e.upper[j]);
            out += ',' + format_double(e.level);
            out += ',' + std::to_string(e.B);
            out += ',' + std::to_string(e.failures);
            out += '\n';
        }
    }
    atomic_write_text(path, out);
}

void write_backtest_rows_csv(const std::string& path, const BacktestReport& report) {
    std::string out = "t,span,sigma2_bar,x2_bar,y\n";
    for (const OriginRow& row : report.rows) {
        out += std::to_string(row.t);
        out += ',' + std::to_string(row.span);
        out += ',' + format_double(row.forecast);
        out += ',' + format_double(row.realized);
        out += ',' + format_double(row.y);
        out += '\n';
    }
    atomic_write_text(path, out);
}

void write_backtest_summary_csv(const std::string& path, const BacktestReport& report) {
    std::string out = "model,span,amse,origins,chosen,coverage,coverage_alpha\n";
    const std::string tag = "tvarch_p" + std::to_string(report.order);
    for (const SpanScore& s : report.span_scores) {
        const bool chosen = s.span == report.chosen_span;
        out += tag;
        out += ',' + std::to_string(s.span);
        out += ',' + format_double(s.amse);
        out += ',' + std::to_string(s.origins_used);
        out += chosen ? ",1" : ",0";
        if (chosen) {
            out += ',' + format_double(report.coverage);
            out += ',' + format_double(report.coverage_alpha);
        } else {
            out += ",,";
        }
        out += '\n';
    }
    for (const ExternalScore& s : report.external) {
        out += s.name;
        out += ",,";
        out += format_double(s.amse);
        out += ',' + std::to_string(s.origins_used);
        out += ",0,,\n";
    }
    atomic_write_text(path, out);
}

std::vector<std::pair<std::size_t, double>> read_forecast_table_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    std::vector<std::pair<std::size_t, double>> table;
    bool saw_data = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::vector<std::string> fields = split_csv(lines[i]);
        if (fields.size() != 2) {
            bad_line(path, i + 1, "expected 2 columns (origin, forecast)");
        }
        double t = 0.0, f = 0.0;
        if (!parse_double(fields[0], t) || !parse_double(fields[1], f)) {
            if (!saw_data) continue;  // header line
            bad_line(path, i + 1, "cannot parse row");
        }
        if (t < 1.0 || t != std::floor(t)) {
            bad_line(path, i + 1, "origin must be a positive integer");
        }
        saw_data = true;
        table.emplace_back(static_cast<std::size_t>(t), f);
    }
    if (!saw_data) throw IoError(path + ": no data rows");
    return table;
}

void write_acf_csv(const std::string& path, const AcfReport& report) {
    std::string out = "lag,autocov,corr\n";
    for (std::size_t i = 0; i < report.lags.size(); ++i) {
        out += std::to_string(report.lags[i]);
        out += ',' + format_double(report.autocov[i]);
        out += ',' + format_double(report.corr[i]);
        out += '\n';
    }
    atomic_write_text(path, out);
}

void write_diagnostics_csv(const std::string& path, const DiagnosticsSummary& summary) {
    std::string out = "metric,value\n";
    auto row = [&](const std::string& name, double value) {
        out += name;
        out += ',' + format_double(value);
        out += '\n';
    };
    row("n", static_cast<double>(summary.n));
    row("mean", summary.moments.mean);
    row("variance", summary.moments.variance);
    row("skewness", summary.moments.skewness);
    row("excess_kurtosis", summary.moments.excess_kurtosis);
    row("ks_stat", summary.ks.statistic);
    row("ks_p", summary.ks.p_value);
    row("lb_lags", static_cast<double>(summary.lb_lags));
    row("lb_z_stat", summary.lb_z.statistic);
    row("lb_z_p", summary.lb_z.p_value);
    row("lb_abs_z_stat", summary.lb_abs_z.statistic);
    row("lb_abs_z_p", summary.lb_abs_z.p_value);
    row("lb_z2_stat", summary.lb_z2.statistic);
    row("lb_z2_p", summary.lb_z2.p_value);
    atomic_write_text(path, out);
}

void write_comparison_csv(const std::string& path, const ComparisonTable& table) {
    std::string out = "coefficient";
    for (std::size_t n : table.sample_sizes) out += ',' + std::to_string(n);
    out += '\n';
    for (std::size_t j = 0; j <= table.order; ++j) {
        out += "a_" + std::to_string(j);
        for (std::size_t si = 0; si < table.sample_sizes.size(); ++si) {
            out += ',' + format_double(table.ratio[si][j]);
        }
        out += '\n';
    }
    out += "failures";
    for (std::size_t f : table.failures) out += ',' + std::to_string(f);
    out += '\n';
    atomic_write_text(path, out);
}

}  // namespace tvarch::io
