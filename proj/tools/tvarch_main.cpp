// Command-line driver: simulate | fit | bootstrap | backtest | diagnose |
// compare-qml.  A JSON config file supplies defaults; command-line flags
// override it.  Exit codes: 0 success, 1 numerical failure, 2 usage or I/O.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tvarch/bandwidth.hpp"
#include "tvarch/bootstrap.hpp"
#include "tvarch/diagnostics.hpp"
#include "tvarch/errors.hpp"
#include "tvarch/estimator.hpp"
#include "tvarch/forecast.hpp"
#include "tvarch/io.hpp"
#include "tvarch/qml.hpp"
#include "tvarch/simulate.hpp"

namespace {

using nlohmann::json;

struct RunConfig {
    std::string command;
    std::string input;
    std::string output = "out";
    int p = 1;
    std::string kernel = "parzen";
    double b = 0.0;  // 0 = not set
    bool cv = false;
    std::string grid;   // comma list of bandwidths; empty = default grid
    std::size_t h = 0;  // CV stride; 0 = automatic
    std::uint64_t seed = 1;

    // simulate
    std::string model;
    std::size_t n = 1024;
    std::size_t burn_in = 500;

    // fit / diagnose
    bool oracle_refit = false;
    std::size_t fit_stride = 1;
    std::size_t max_lag = 40;
    std::size_t lb_lags = 20;

    // bootstrap
    std::size_t B = 100;
    double level = 0.8;
    double delta = 0.01;
    bool equal_tailed = false;
    std::string t0_list;       // explicit comma list of fit locations
    std::size_t t0_stride = 0; // grid stride when no explicit list; 0 = N/20

    // backtest
    std::string spans = "50,100,150,200,250,300,350,400,450,500";
    std::size_t horizon = 250;
    std::size_t origin_start = 1000;
    std::size_t origin_stride = 1;
    double alpha = 0.05;
    std::vector<std::string> external;  // name=path

    // compare-qml
    std::string coeffs;
    std::string dist = "gaussian";
    double df = 0.0;
    std::string sizes = "15,25,50,100,250";
    std::size_t reps = 100;
};

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw tvarch::IoError("cannot parse " + what + " entry '" + item + "'");
        }
    }
    if (out.empty()) throw tvarch::IoError(what + " list is empty");
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text, const std::string& what) {
    std::vector<std::size_t> out;
    for (double v : parse_double_list(text, what)) {
        if (v < 1.0 || v != std::floor(v)) {
            throw tvarch::IoError(what + " entries must be positive integers");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

// Config values land in the same fields the flags are bound to, so flags
// parsed afterwards override them.
void apply_config(RunConfig& cfg, const json& j, const std::string& path) {
    try {
        auto str = [&](const char* key, std::string& field) {
            if (j.contains(key)) field = j.at(key).get<std::string>();
        };
        auto list = [&](const char* key, std::string& field) {
            if (!j.contains(key)) return;
            if (j.at(key).is_array()) {
                std::string joined;
                for (const auto& v : j.at(key)) {
                    if (!joined.empty()) joined += ',';
                    joined += v.dump();
                }
                field = joined;
            } else {
                field = j.at(key).get<std::string>();
            }
        };
        str("command", cfg.command);
        str("input", cfg.input);
        str("output", cfg.output);
        if (j.contains("p")) cfg.p = j.at("p").get<int>();
        str("kernel", cfg.kernel);
        if (j.contains("b")) cfg.b = j.at("b").get<double>();
        if (j.contains("cv")) cfg.cv = j.at("cv").get<bool>();
        list("grid", cfg.grid);
        if (j.contains("h")) cfg.h = j.at("h").get<std::size_t>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        str("model", cfg.model);
        if (j.contains("n")) cfg.n = j.at("n").get<std::size_t>();
        if (j.contains("burn_in")) cfg.burn_in = j.at("burn_in").get<std::size_t>();
        if (j.contains("oracle_refit")) cfg.oracle_refit = j.at("oracle_refit").get<bool>();
        if (j.contains("fit_stride")) cfg.fit_stride = j.at("fit_stride").get<std::size_t>();
        if (j.contains("max_lag")) cfg.max_lag = j.at("max_lag").get<std::size_t>();
        if (j.contains("lb_lags")) cfg.lb_lags = j.at("lb_lags").get<std::size_t>();
        if (j.contains("B")) cfg.B = j.at("B").get<std::size_t>();
        if (j.contains("level")) cfg.level = j.at("level").get<double>();
        if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
        if (j.contains("equal_tailed")) cfg.equal_tailed = j.at("equal_tailed").get<bool>();
        list("t0", cfg.t0_list);
        if (j.contains("t0_stride")) cfg.t0_stride = j.at("t0_stride").get<std::size_t>();
        list("spans", cfg.spans);
        if (j.contains("horizon")) cfg.horizon = j.at("horizon").get<std::size_t>();
        if (j.contains("origin_start")) cfg.origin_start = j.at("origin_start").get<std::size_t>();
        if (j.contains("origin_stride"))
            cfg.origin_stride = j.at("origin_stride").get<std::size_t>();
        if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
        if (j.contains("external")) {
            cfg.external = j.at("external").get<std::vector<std::string>>();
        }
        list("coeffs", cfg.coeffs);
        str("dist", cfg.dist);
        if (j.contains("df")) cfg.df = j.at("df").get<double>();
        list("sizes", cfg.sizes);
        if (j.contains("reps")) cfg.reps = j.at("reps").get<std::size_t>();
    } catch (const json::exception& e) {
        throw tvarch::IoError(path + ": " + e.what());
    }
}

double resolve_bandwidth(const RunConfig& cfg, const tvarch::ReturnSeries& series,
                         const tvarch::Kernel& kernel, tvarch::CvReport* cv_out) {
    if (!cfg.cv && cfg.b > 0.0) return cfg.b;
    const std::vector<double> grid = cfg.grid.empty()
                                         ? tvarch::default_bandwidth_grid()
                                         : parse_double_list(cfg.grid, "grid");
    const std::size_t h = cfg.h > 0 ? cfg.h : tvarch::default_cv_stride(series.size());
    tvarch::CvReport report = tvarch::select_bandwidth(series, grid, h, kernel, cfg.p);
    const double b = report.b_opt;
    if (cv_out != nullptr) *cv_out = std::move(report);
    return b;
}

std::vector<std::size_t> thinned_grid(std::size_t n, int p, std::size_t stride) {
    std::vector<std::size_t> grid;
    for (std::size_t t = static_cast<std::size_t>(p) + 1; t <= n; t += stride) {
        grid.push_back(t);
    }
    return grid;
}

int cmd_simulate(const RunConfig& cfg) {
    if (cfg.model.empty()) throw tvarch::IoError("simulate: --model is required");
    const tvarch::io::ModelSpec spec = tvarch::io::read_model_json(cfg.model);
    const tvarch::ReturnSeries series =
        tvarch::simulate_tvarch(spec.curves, spec.dist, cfg.n, cfg.seed, cfg.burn_in);
    tvarch::io::write_series_csv(cfg.output + ".csv", series);
    tvarch::io::write_model_json(cfg.output + ".model.json", spec);
    std::cout << "wrote " << cfg.output << ".csv (" << series.size() << " rows)\n";
    return 0;
}

int cmd_fit(const RunConfig& cfg) {
    const tvarch::ReturnSeries series = tvarch::io::read_series_csv(cfg.input);
    const tvarch::Kernel kernel = tvarch::Kernel::from_name(cfg.kernel);
    tvarch::CvReport cv;
    const bool ran_cv = cfg.cv || cfg.b <= 0.0;
    const double b = resolve_bandwidth(cfg, series, kernel, &cv);

    const std::vector<std::size_t> grid = thinned_grid(series.size(), cfg.p, cfg.fit_stride);
    tvarch::FitCurve curve = tvarch::nls_fit_curve(series, grid, b, kernel, cfg.p);
    if (cfg.oracle_refit) {
        // replace each estimate by the variance-weighted refit where the
        // first stage permits it (all coefficients positive)
        for (tvarch::FitPoint& pt : curve.points) {
            try {
                pt.a_hat = tvarch::oracle_refit(series, pt.t0, b, kernel, pt);
            } catch (const tvarch::NotApplicableError&) {
            }
        }
    }
    tvarch::io::write_fit_curve_csv(cfg.output + ".fit.csv", curve);
    tvarch::io::write_fit_curve_json(cfg.output + ".fit.json", curve,
                                     ran_cv ? &cv : nullptr);
    if (ran_cv) tvarch::io::write_cv_report_csv(cfg.output + ".cv.csv", cv);
    std::cout << "fit " << curve.points.size() << " points at b = " << b << "\n";
    return 0;
}

int cmd_bootstrap(const RunConfig& cfg) {
    const tvarch::ReturnSeries series = tvarch::io::read_series_csv(cfg.input);
    const tvarch::Kernel kernel = tvarch::Kernel::from_name(cfg.kernel);
    const double b = resolve_bandwidth(cfg, series, kernel, nullptr);

    std::vector<std::size_t> grid;
    if (!cfg.t0_list.empty()) {
        grid = parse_size_list(cfg.t0_list, "t0");
    } else {
        const std::size_t stride =
            cfg.t0_stride > 0 ? cfg.t0_stride : std::max<std::size_t>(1, series.size() / 20);
        grid = thinned_grid(series.size(), cfg.p, stride);
    }

    tvarch::BootstrapConfig bc;
    bc.B = cfg.B;
    bc.level = cfg.level;
    bc.delta = cfg.delta;
    bc.seed = cfg.seed;
    bc.equal_tailed = cfg.equal_tailed;
    const tvarch::BootstrapBands bands =
        tvarch::bootstrap_bands(series, grid, b, kernel, cfg.p, bc);
    tvarch::io::write_bands_csv(cfg.output + ".bands.csv", bands);
    std::cout << "bands at " << bands.entries.size() << " locations, " << bands.failures.size()
              << " failed\n";
    return bands.entries.empty() ? 1 : 0;
}

int cmd_backtest(const RunConfig& cfg) {
    const tvarch::ReturnSeries series = tvarch::io::read_series_csv(cfg.input);
    std::vector<std::pair<std::string, std::vector<std::pair<std::size_t, double>>>> external;
    for (const std::string& item : cfg.external) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) {
            throw tvarch::IoError("--external expects name=path, got '" + item + "'");
        }
        external.emplace_back(item.substr(0, eq),
                              tvarch::io::read_forecast_table_csv(item.substr(eq + 1)));
    }
    const tvarch::BacktestReport report = tvarch::run_backtest(
        series, parse_size_list(cfg.spans, "spans"), cfg.p, cfg.horizon, cfg.origin_start,
        cfg.origin_stride, cfg.alpha, external);
    tvarch::io::write_backtest_rows_csv(cfg.output + ".origins.csv", report);
    tvarch::io::write_backtest_summary_csv(cfg.output + ".summary.csv", report);
    std::cout << "chosen span " << report.chosen_span << ", coverage " << report.coverage
              << " at alpha " << report.coverage_alpha << "\n";
    return 0;
}

int cmd_diagnose(const RunConfig& cfg) {
    const tvarch::ReturnSeries series = tvarch::io::read_series_csv(cfg.input);
    const tvarch::Kernel kernel = tvarch::Kernel::from_name(cfg.kernel);
    const double b = resolve_bandwidth(cfg, series, kernel, nullptr);

    const std::vector<std::size_t> grid = thinned_grid(series.size(), cfg.p, cfg.fit_stride);
    const tvarch::FitCurve curve = tvarch::nls_fit_curve(series, grid, b, kernel, cfg.p);
    const std::vector<double> z = tvarch::curve_residuals(series, curve, cfg.delta);
    std::vector<double> abs_z(z.size()), z2(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        abs_z[i] = std::abs(z[i]);
        z2[i] = z[i] * z[i];
    }

    tvarch::io::DiagnosticsSummary summary;
    summary.n = z.size();
    summary.moments = tvarch::moment_summary(z);
    summary.ks = tvarch::ks_gaussian(z);
    summary.lb_lags = cfg.lb_lags;
    summary.lb_z = tvarch::ljung_box(z, cfg.lb_lags);
    summary.lb_abs_z = tvarch::ljung_box(abs_z, cfg.lb_lags);
    summary.lb_z2 = tvarch::ljung_box(z2, cfg.lb_lags);

    tvarch::io::write_acf_csv(cfg.output + ".acf.csv",
                              tvarch::acf_report(series, cfg.max_lag));
    tvarch::io::write_diagnostics_csv(cfg.output + ".summary.csv", summary);
    std::cout << "diagnostics over " << z.size() << " residuals at b = " << b << "\n";
    return 0;
}

int cmd_compare_qml(const RunConfig& cfg) {
    if (cfg.coeffs.empty()) {
        throw tvarch::IoError("compare-qml: --coeffs is required (e.g. 1,0.6,0.3)");
    }
    const tvarch::ParamCurves model =
        tvarch::ParamCurves::constant(parse_double_list(cfg.coeffs, "coeffs"));
    const tvarch::InnovationDist dist = tvarch::InnovationDist::from_name(cfg.dist, cfg.df);
    const std::vector<std::size_t> sizes = parse_size_list(cfg.sizes, "sizes");
    const tvarch::ComparisonTable table =
        tvarch::compare_nls_qml(model, dist, sizes, cfg.reps, cfg.seed);
    tvarch::io::write_comparison_csv(cfg.output + ".csv", table);
    std::cout << "wrote " << cfg.output << ".csv\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;

    // Pre-pass: load --config before building the app, so config values act
    // as defaults and explicit flags override them.
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) {
            config_path = argv[i + 1];
        } else if (arg.rfind("--config=", 0) == 0) {
            config_path = arg.substr(9);
        }
    }
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config " << config_path << "\n";
            return 2;
        }
        json j;
        try {
            in >> j;
            apply_config(cfg, j, config_path);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    CLI::App app{"Local least-squares estimation, resampling and forecasting "
                 "for time-varying ARCH processes"};
    app.set_help_all_flag("--help-all");
    std::string config_dummy;
    app.add_option("--config", config_dummy, "JSON config file (flags override it)");

    std::string chosen;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--in", cfg.input, "input series CSV (one value per row, or timestamp,value)");
        sub->add_option("--out", cfg.output, "output path prefix");
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->callback([&chosen, sub] { chosen = sub->get_name(); });
    };
    auto add_fit_opts = [&](CLI::App* sub) {
        sub->add_option("-p,--p", cfg.p, "ARCH order");
        sub->add_option("--kernel", cfg.kernel, "parzen | rectangular | triangular");
        sub->add_option("--b", cfg.b, "bandwidth in (0, 1]; omit to cross-validate");
        sub->add_flag("--cv", cfg.cv, "force bandwidth cross-validation");
        sub->add_option("--grid", cfg.grid, "comma list of CV bandwidths");
        sub->add_option("--stride", cfg.h, "CV subsampling stride (0 = automatic)");
    };

    CLI::App* sim = app.add_subcommand("simulate", "simulate a model to CSV");
    add_common(sim);
    sim->add_option("--model", cfg.model, "model JSON file");
    sim->add_option("--n", cfg.n, "series length");
    sim->add_option("--burn-in", cfg.burn_in, "burn-in samples");

    CLI::App* fit = app.add_subcommand("fit", "local coefficient curves");
    add_common(fit);
    add_fit_opts(fit);
    fit->add_flag("--oracle-refit", cfg.oracle_refit,
                  "refit with estimated-variance weights where admissible");
    fit->add_option("--fit-stride", cfg.fit_stride, "fit every k-th time point");

    CLI::App* boot = app.add_subcommand("bootstrap", "pointwise confidence bands");
    add_common(boot);
    add_fit_opts(boot);
    boot->add_option("--B", cfg.B, "bootstrap replicates");
    boot->add_option("--level", cfg.level, "band coverage level in (0,1)");
    boot->add_option("--delta", cfg.delta, "clip margin");
    boot->add_flag("--equal-tailed", cfg.equal_tailed, "percentile band instead of symmetric");
    boot->add_option("--t0", cfg.t0_list, "comma list of fit locations");
    boot->add_option("--t0-stride", cfg.t0_stride, "grid stride when --t0 absent");

    CLI::App* back = app.add_subcommand("backtest", "span-validated volatility forecasts");
    add_common(back);
    back->add_option("-p,--p", cfg.p, "ARCH order");
    back->add_option("--spans", cfg.spans, "comma list of fitting spans");
    back->add_option("--H", cfg.horizon, "forecast horizon");
    back->add_option("--origin-start", cfg.origin_start, "first forecast origin");
    back->add_option("--origin-stride", cfg.origin_stride, "origin step");
    back->add_option("--alpha", cfg.alpha, "coverage interval alpha");
    back->add_option("--external", cfg.external,
                     "name=path of an external (origin,forecast) CSV; repeatable");

    CLI::App* diag = app.add_subcommand("diagnose", "residual diagnostics");
    add_common(diag);
    add_fit_opts(diag);
    diag->add_option("--fit-stride", cfg.fit_stride, "fit every k-th time point");
    diag->add_option("--max-lag", cfg.max_lag, "autocovariance lags to report");
    diag->add_option("--lb-lags", cfg.lb_lags, "Ljung-Box lag count");

    CLI::App* cmp = app.add_subcommand("compare-qml", "NLS vs QML error ratios");
    add_common(cmp);
    cmp->add_option("--coeffs", cfg.coeffs, "constant coefficients a_0,...,a_p");
    cmp->add_option("--dist", cfg.dist, "gaussian | laplace | student_t");
    cmp->add_option("--df", cfg.df, "Student-t degrees of freedom");
    cmp->add_option("--sizes", cfg.sizes, "comma list of sample sizes");
    cmp->add_option("--reps", cfg.reps, "replicates per size");

    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (chosen.empty()) chosen = cfg.command;
    if (chosen.empty()) {
        std::cerr << app.help();
        return 2;
    }

    try {
        if (chosen == "simulate") return cmd_simulate(cfg);
        if (chosen == "fit") return cmd_fit(cfg);
        if (chosen == "bootstrap") return cmd_bootstrap(cfg);
        if (chosen == "backtest") return cmd_backtest(cfg);
        if (chosen == "diagnose") return cmd_diagnose(cfg);
        if (chosen == "compare-qml") return cmd_compare_qml(cfg);
        std::cerr << "error: unknown command '" << chosen << "'\n";
        return 2;
    } catch (const tvarch::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tvarch::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
