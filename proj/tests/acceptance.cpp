// Release gate: one check per shipping claim.  Each check prints a single
// PASS/FAIL line with its runtime and the measured quantities; the exit code
// is the number of failed checks.  Every randomized check pins its seeds, so
// a failure here reproduces exactly.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tvarch/bandwidth.hpp"
#include "tvarch/bootstrap.hpp"
#include "tvarch/diagnostics.hpp"
#include "tvarch/estimator.hpp"
#include "tvarch/forecast.hpp"
#include "tvarch/io.hpp"
#include "tvarch/kernel.hpp"
#include "tvarch/model.hpp"
#include "tvarch/qml.hpp"
#include "tvarch/rng.hpp"
#include "tvarch/series.hpp"
#include "tvarch/simulate.hpp"

namespace fs = std::filesystem;
using namespace tvarch;

namespace {

struct CheckResult {
    bool pass = false;
    std::string detail;
};

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// 1. The closed-form weighted least-squares solution equals an independent
//    numerical minimizer of the same criterion.
//
// The oracle minimizes  Q(a) = sum_k w_k (X^2_k - sum_j a_j z_kj)^2  by
// cyclic coordinate descent with exact per-coordinate line minimization,
// sharing nothing with the library solver but the stage-one local mean.

CheckResult check_closed_form() {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (int inst = 0; inst < 20; ++inst) {
        const int p = 1 + inst % 2;
        const std::size_t n =
            std::uniform_int_distribution<std::size_t>(60, 200)(rng);
        std::vector<double> coef{std::uniform_real_distribution<>(0.3, 1.5)(rng)};
        coef.push_back(std::uniform_real_distribution<>(0.1, p == 1 ? 0.6 : 0.4)(rng));
        if (p == 2) coef.push_back(std::uniform_real_distribution<>(0.05, 0.3)(rng));
        const ReturnSeries x = simulate_tvarch(ParamCurves::constant(coef),
                                               InnovationDist::gaussian(), n, 1000 + inst);
        const std::size_t t0 =
            std::uniform_int_distribution<std::size_t>(n / 4, 3 * n / 4)(rng);
        const double b = std::uniform_real_distribution<>(0.3, 1.0)(rng);
        const Kernel W = inst % 2 ? Kernel::parzen() : Kernel::rectangular();

        const FitPoint fit = nls_fit_at(x, t0, b, W, p);

        const double bn = b * static_cast<double>(n);
        const std::size_t d = static_cast<std::size_t>(p) + 1;
        std::vector<double> w, y;
        std::vector<std::vector<double>> z;
        for (std::size_t k = d; k <= n; ++k) {
            double kap = fit.mu_hat;
            for (int j = 1; j <= p; ++j) kap += x.square(k - static_cast<std::size_t>(j));
            const double wk =
                (W((static_cast<double>(t0) - static_cast<double>(k)) / bn) / bn) /
                (kap * kap);
            if (wk <= 0.0) continue;
            w.push_back(wk);
            y.push_back(x.square(k));
            std::vector<double> row{1.0};
            for (int j = 1; j <= p; ++j) row.push_back(x.square(k - static_cast<std::size_t>(j)));
            z.push_back(std::move(row));
        }

        std::vector<double> a(d, 0.0);
        for (int sweep = 0; sweep < 20000; ++sweep) {
            double step = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                double num = 0.0, den = 0.0;
                for (std::size_t i = 0; i < w.size(); ++i) {
                    double rest = 0.0;
                    for (std::size_t l = 0; l < d; ++l) {
                        if (l != j) rest += a[l] * z[i][l];
                    }
                    num += w[i] * z[i][j] * (y[i] - rest);
                    den += w[i] * z[i][j] * z[i][j];
                }
                const double next = num / den;
                step = std::max(step, std::abs(next - a[j]));
                a[j] = next;
            }
            if (step < 1e-13) break;
        }

        for (std::size_t j = 0; j < d; ++j) {
            worst = std::max(worst, std::abs(fit.a_hat[j] - a[j]));
        }
    }
    return {worst < 1e-6, "max coefficient gap " + fmt(worst) + " over 20 instances"};
}

// ---------------------------------------------------------------------------
// 2. A deterministic upward variance ramp, fed through the sample
//    autocovariance of squares, produces a flat plateau over lags 5..40 (the
//    signature that gets mistaken for long memory), while a genuine ARCH(1)
//    autocovariance collapses by lag 40.

CheckResult check_long_memory_illusion() {
    // a_0(u) = 1e-8 + (2 - 1e-8) u: the tiny floor keeps a_0 positive at
    // u = 0, which model validation requires; within double precision the
    // path is the straight ramp 2u.
    ParamCurves ramp;
    ramp.order = 0;
    ramp.knots = {0.0, 1.0};
    ramp.curves = {{1e-8, 2.0}};

    const std::size_t n = 20000;
    std::vector<std::vector<double>> s(41 - 5);
    for (int rep = 0; rep < 20; ++rep) {
        const ReturnSeries x =
            simulate_tvarch(ramp, InnovationDist::gaussian(), n, 100 + rep);
        for (int h = 5; h <= 40; ++h) {
            s[static_cast<std::size_t>(h - 5)].push_back(sample_autocov_squares(x, h));
        }
    }
    double lo = 1e300, hi = -1e300;
    for (auto& per_h : s) {
        const double m = median(per_h);
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    const bool plateau_ok = lo >= 0.25 && hi <= 0.41;

    const ParamCurves arch = ParamCurves::constant({1.0, 0.3});
    double ratio_max = -1e300;
    for (int rep = 0; rep < 20; ++rep) {
        const ReturnSeries x =
            simulate_tvarch(arch, InnovationDist::gaussian(), n, 300 + rep);
        ratio_max = std::max(ratio_max,
                             sample_autocov_squares(x, 40) / sample_autocov_squares(x, 1));
    }
    const bool decay_ok = ratio_max < 0.1;

    return {plateau_ok && decay_ok, "ramp medians in [" + fmt(lo) + ", " + fmt(hi) +
                                        "] (need [0.25, 0.41]); ARCH lag-40/lag-1 max " +
                                        fmt(ratio_max) + " (need < 0.1)"};
}

// ---------------------------------------------------------------------------
// 3. Small-sample accuracy of the closed-form estimator relative to the
//    likelihood baseline on stationary ARCH(2) data.
//
// The target band encodes a historical comparison in which the likelihood
// side was much weaker at N = 15.  With the multi-restart box-projected
// optimizer shipped here, the measured a_0 ratio sits near 1.2 at N = 15 and
// stays there under every optimizer variant tried (single start, loose
// tolerances, log-parameterization), so the N = 15 half of this band is
// expected to fail.  The band is kept as-is rather than widened to match the
// implementation.

CheckResult check_small_sample_ratio() {
    const ParamCurves model = ParamCurves::constant({1.0, 0.6, 0.3});
    const ComparisonTable t =
        compare_nls_qml(model, InnovationDist::gaussian(), {15, 250}, 100, 7);
    const double r15 = t.ratio[0][0];
    const double r250 = t.ratio[1][0];
    const bool pass = r15 < 0.9 && r250 > 0.85;
    return {pass, "a_0 MAE ratio at N=15: " + fmt(r15) + " (need < 0.9); at N=250: " +
                      fmt(r250) + " (need > 0.85)"};
}

// ---------------------------------------------------------------------------
// 4. Consistency: with bandwidth N^{-0.4}, the fit error at the window
//    center shrinks as the sample grows.

CheckResult check_consistency() {
    ParamCurves model;
    model.order = 1;
    model.knots = {0.0, 1.0};
    model.curves = {{1.0, 1.0}, {0.2, 0.5}};

    std::vector<double> med;
    for (std::size_t n : {std::size_t(500), std::size_t(2000), std::size_t(8000)}) {
        const double b = std::pow(static_cast<double>(n), -0.4);
        const std::size_t t0 = n / 2;
        std::vector<double> maes;
        for (int rep = 0; rep < 200; ++rep) {
            const ReturnSeries x =
                simulate_tvarch(model, InnovationDist::gaussian(), n, mix_seed(11, rep));
            const FitPoint fp = nls_fit_at(x, t0, b, Kernel::parzen(), 1);
            const double a1_true = 0.2 + 0.3 * fp.u0;
            maes.push_back(0.5 * (std::abs(fp.a_hat[0] - 1.0) +
                                  std::abs(fp.a_hat[1] - a1_true)));
        }
        med.push_back(median(std::move(maes)));
    }
    const bool pass = med[0] > med[1] && med[1] > med[2];
    return {pass, "median MAE " + fmt(med[0]) + " -> " + fmt(med[1]) + " -> " + fmt(med[2]) +
                      " for N = 500, 2000, 8000 (need strictly decreasing)"};
}

// ---------------------------------------------------------------------------
// 5. Bandwidth selection: on the fast-switching constant-variance example
//    the selected bandwidth lands in a moderate range, and the criterion
//    value equals a term-by-term recomputation on short series.

double oracle_cv_p1(const ReturnSeries& x, double b, std::size_t h, const Kernel& W) {
    const std::size_t n = x.size();
    const double bn = b * static_cast<double>(n);
    double total = 0.0;
    bool any = false;
    for (std::size_t t = h; t <= n; t += h) {
        if (t <= 1) continue;
        double num = 0.0, den = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            if (k == t) continue;
            const double w = W((static_cast<double>(t) - static_cast<double>(k)) / bn) / bn;
            num += w * x.square(k);
            den += w;
        }
        if (den <= 0.0) continue;
        double mu = num / den;
        if (mu < 1e-12) mu = 1e-12;
        double s00 = 0, s01 = 0, s11 = 0, r0 = 0, r1 = 0;
        for (std::size_t k = 2; k <= n; ++k) {
            if (k >= t && k <= t + 1) continue;
            const double kap = mu + x.square(k - 1);
            const double w =
                (W((static_cast<double>(t) - static_cast<double>(k)) / bn) / bn) /
                (kap * kap);
            if (w <= 0.0) continue;
            const double z = x.square(k - 1);
            s00 += w;
            s01 += w * z;
            s11 += w * z * z;
            r0 += w * x.square(k);
            r1 += w * z * x.square(k);
        }
        const double det = s00 * s11 - s01 * s01;
        if (!(std::fabs(det) > 1e-300)) continue;
        const double a0 = (r0 * s11 - r1 * s01) / det;
        const double a1 = (s00 * r1 - s01 * r0) / det;
        const double kap_t = mu + x.square(t - 1);
        const double resid = x.square(t) - a0 - a1 * x.square(t - 1);
        total += resid * resid / (kap_t * kap_t);
        any = true;
    }
    return any ? static_cast<double>(h) / static_cast<double>(n) * total
               : std::numeric_limits<double>::quiet_NaN();
}

CheckResult check_bandwidth_selection() {
    const ParamCurves model = ParamCurves::constant_variance_example();
    int in_band = 0;
    for (int rep = 0; rep < 20; ++rep) {
        const ReturnSeries x =
            simulate_tvarch(model, InnovationDist::gaussian(), 1024, mix_seed(51, rep));
        const CvReport r =
            select_bandwidth(x, default_bandwidth_grid(), 10, Kernel::parzen(), 1);
        if (r.b_opt >= 0.05 && r.b_opt <= 0.3) ++in_band;
    }

    // exact agreement with the independent recomputation on short series;
    // b >= 0.35 keeps every leave-out window usable at N = 30
    const ParamCurves short_model = ParamCurves::linear({0.5, 0.2}, {0.8, 0.5});
    double worst = 0.0;
    for (int inst = 0; inst < 5; ++inst) {
        const ReturnSeries x = simulate_tvarch(short_model, InnovationDist::gaussian(), 30,
                                               42 + static_cast<std::uint64_t>(inst));
        for (double b : {0.35, 0.5}) {
            const double mine = cv_criterion(x, b, 3, Kernel::parzen(), 1);
            const double want = oracle_cv_p1(x, b, 3, Kernel::parzen());
            if (!std::isfinite(want)) return {false, "oracle produced no terms"};
            worst = std::max(worst, std::abs(mine - want));
        }
    }

    const bool pass = in_band >= 16 && worst < 1e-10;
    return {pass, "selected b in [0.05, 0.3] in " + std::to_string(in_band) +
                      "/20 runs (need >= 16); max criterion gap " + fmt(worst) +
                      " (need < 1e-10)"};
}

// ---------------------------------------------------------------------------
// 6. Bootstrap band coverage near the nominal level on stationary ARCH(1).

CheckResult check_bootstrap_coverage() {
    const ParamCurves model = ParamCurves::constant({1.0, 0.5});
    const std::size_t n = 2000, t0 = 1000;
    int hit0 = 0, hit1 = 0, completed = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const ReturnSeries x =
            simulate_tvarch(model, InnovationDist::gaussian(), n, mix_seed(1, rep));
        BootstrapConfig cfg;
        cfg.B = 100;
        cfg.level = 0.8;
        cfg.seed = mix_seed(2, rep);
        try {
            const CiEntry ci = pointwise_ci(x, t0, 0.2, Kernel::parzen(), 1, cfg);
            ++completed;
            if (ci.lower[0] <= 1.0 && 1.0 <= ci.upper[0]) ++hit0;
            if (ci.lower[1] <= 0.5 && 0.5 <= ci.upper[1]) ++hit1;
        } catch (const Error&) {
        }
    }
    const double c0 = hit0 / static_cast<double>(completed);
    const double c1 = hit1 / static_cast<double>(completed);
    const bool pass = completed >= 95 && c0 >= 0.70 && c0 <= 0.90 && c1 >= 0.70 && c1 <= 0.90;
    return {pass, "coverage a_0 " + fmt(c0) + ", a_1 " + fmt(c1) + " over " +
                      std::to_string(completed) + "/100 runs (need both in [0.70, 0.90])"};
}

// ---------------------------------------------------------------------------
// 7. The forecast recursion agrees with the geometric closed form for
//    ARCH(1) and with Monte Carlo conditional means.

CheckResult check_forecast_recursion() {
    double worst = 0.0;
    const double triples[][3] = {{1.0, 0.5, 4.0}, {0.3, 0.7, 0.1}, {2.0, 0.2, 9.0}};
    for (const auto& tr : triples) {
        const double a0 = tr[0], a1 = tr[1], x2 = tr[2];
        const ForecastPath path = h_step_forecast({a0, a1}, {x2}, 20);
        for (std::size_t h = 1; h <= 20; ++h) {
            const double ah = std::pow(a1, static_cast<double>(h));
            const double closed = a0 * (1.0 - ah) / (1.0 - a1) + ah * x2;
            worst = std::max(worst, std::abs(path.v[h - 1] - closed));
        }
    }
    if (worst >= 1e-12) {
        return {false, "closed-form gap " + fmt(worst) + " (need < 1e-12)"};
    }

    // conditional-mean oracle: 1e6 simulated continuations of X^2_t = 4
    const double a0 = 1.0, a1 = 0.5, x2 = 4.0;
    const ForecastPath path = h_step_forecast({a0, a1}, {x2}, 20);
    const std::size_t reps = 1000000;
    const std::size_t hs[] = {1, 5, 20};
    double sum[3] = {0, 0, 0}, sumsq[3] = {0, 0, 0};
    std::mt19937_64 rng = make_rng(77);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t r = 0; r < reps; ++r) {
        double prev = x2;
        std::size_t hi = 0;
        for (std::size_t h = 1; h <= 20; ++h) {
            const double z = gauss(rng);
            const double cur = (a0 + a1 * prev) * z * z;
            if (hi < 3 && h == hs[hi]) {
                sum[hi] += cur;
                sumsq[hi] += cur * cur;
                ++hi;
            }
            prev = cur;
        }
    }
    std::string detail = "closed-form gap " + fmt(worst);
    bool mc_ok = true;
    for (std::size_t i = 0; i < 3; ++i) {
        const double mean = sum[i] / static_cast<double>(reps);
        const double var = sumsq[i] / static_cast<double>(reps) - mean * mean;
        const double se = std::sqrt(var / static_cast<double>(reps));
        const double gap = std::abs(path.v[hs[i] - 1] - mean);
        mc_ok = mc_ok && gap < 3.0 * se;
        detail += "; h=" + std::to_string(hs[i]) + " |gap|/SE " + fmt(gap / se);
    }
    return {mc_ok, detail + " (need all < 3)"};
}

// ---------------------------------------------------------------------------
// 8. No lookahead, and byte-identical artifacts under fixed seeds.
//
// The lookahead check poisons data outside each computation's advertised
// read range and demands bit-identical results: stronger than access
// logging, which only observes reads, this proves the outputs cannot
// depend on the forbidden range.

CheckResult check_no_lookahead_and_determinism() {
    const ReturnSeries x = simulate_tvarch(ParamCurves::constant({0.8, 0.4}),
                                           InnovationDist::gaussian(), 600, 88);
    const std::size_t span = 100, H = 20;
    for (std::size_t t : {std::size_t(450), std::size_t(500), std::size_t(520)}) {
        ReturnSeries future_poisoned = x;
        for (std::size_t k = t + 1; k <= x.size(); ++k) {
            future_poisoned.values[k - 1] = 1e6 + static_cast<double>(k);
        }
        const std::vector<double> a_clean = span_fit(x, t, span, 1);
        const std::vector<double> a_poisoned = span_fit(future_poisoned, t, span, 1);
        if (a_clean != a_poisoned) {
            return {false, "span fit at origin " + std::to_string(t) + " read future data"};
        }
        const ForecastPath f_clean = h_step_forecast(a_clean, {x.square(t)}, H);
        const ForecastPath f_poisoned =
            h_step_forecast(a_poisoned, {future_poisoned.square(t)}, H);
        if (t + 1 <= x.size() &&
            aggregate_forecast(f_clean) != aggregate_forecast(f_clean)) {
            return {false, "forecast not deterministic"};
        }
        (void)f_poisoned;

        ReturnSeries past_poisoned = x;
        for (std::size_t k = 1; k <= t; ++k) {
            past_poisoned.values[k - 1] = -1e6 - static_cast<double>(k);
        }
        if (realized_volatility(x, t, H) != realized_volatility(past_poisoned, t, H)) {
            return {false, "realized volatility at origin " + std::to_string(t) +
                               " read data at or before the origin"};
        }
    }

    // byte-identical reruns of every artifact-producing pipeline
    const fs::path dir =
        fs::temp_directory_path() / ("tvarch_acc_" + std::to_string(getpid()));
    fs::create_directories(dir);
    std::vector<std::string> mismatches;
    auto compare_twice = [&](const std::string& tag,
                             const std::function<void(const std::string&)>& render) {
        const fs::path a = dir / (tag + ".a");
        const fs::path b = dir / (tag + ".b");
        render(a.string());
        render(b.string());
        if (slurp(a) != slurp(b)) mismatches.push_back(tag);
    };

    compare_twice("series", [&](const std::string& p) {
        io::write_series_csv(p, simulate_tvarch(ParamCurves::constant({1.0, 0.3}),
                                                InnovationDist::gaussian(), 256, 5));
    });
    compare_twice("bands", [&](const std::string& p) {
        BootstrapConfig cfg;
        cfg.B = 50;
        cfg.seed = 5;
        io::write_bands_csv(p, bootstrap_bands(x, {300}, 0.25, Kernel::parzen(), 1, cfg));
    });
    compare_twice("comparison", [&](const std::string& p) {
        io::write_comparison_csv(
            p, compare_nls_qml(ParamCurves::constant({1.0, 0.4}),
                               InnovationDist::gaussian(), {25}, 5, 3));
    });
    compare_twice("backtest", [&](const std::string& p) {
        const BacktestReport r = run_backtest(x, {60, 120}, 1, 10, 400, 25);
        io::write_backtest_summary_csv(p + ".summary", r);
        io::write_backtest_rows_csv(p, r);
    });
    // the .summary twins are written next to the rows; fold them in
    if (slurp(dir / "backtest.a.summary") != slurp(dir / "backtest.b.summary")) {
        mismatches.push_back("backtest-summary");
    }
    fs::remove_all(dir);

    if (!mismatches.empty()) {
        std::string d = "non-reproducible artifacts:";
        for (const auto& m : mismatches) d += " " + m;
        return {false, d};
    }
    return {true, "poisoned-range fits and realized volatility bit-identical; "
                  "series/bands/comparison/backtest artifacts byte-stable"};
}

// ---------------------------------------------------------------------------
// 9. Order-1 span forecasts beat order-0 on data generated with a moving
//    lag coefficient, and externally supplied forecast tables are scored
//    over the overlapping origins.  (Comparisons against the historical
//    FX / index datasets are out of scope: those datasets are not bundled.)

CheckResult check_backtest_harness() {
    ParamCurves model;
    model.order = 1;
    model.knots = {0.0, 1.0};
    model.curves = {{0.4, 0.4}, {0.25, 0.55}};
    int wins = 0;
    for (int rep = 0; rep < 20; ++rep) {
        const ReturnSeries x =
            simulate_tvarch(model, InnovationDist::gaussian(), 2000, mix_seed(1, rep));
        const BacktestReport r1 = run_backtest(x, {250}, 1, 1, 1000, 1);
        const BacktestReport r0 = run_backtest(x, {250}, 0, 1, 1000, 1);
        if (r1.span_scores[0].amse < r0.span_scores[0].amse) ++wins;
    }
    if (wins < 14) {
        return {false, "order-1 beat order-0 in " + std::to_string(wins) +
                           "/20 runs (need >= 14)"};
    }

    const std::string fixtures = TVARCH_FIXTURE_DIR;
    const ReturnSeries s = io::read_series_csv(fixtures + "/backtest_series.csv");
    const auto table = io::read_forecast_table_csv(fixtures + "/external_naive.csv");
    const BacktestReport r =
        run_backtest(s, {60, 120}, 1, 10, 300, 10, 0.05, {{"naive", table}});
    const bool external_ok =
        r.external.size() == 1 && r.external[0].name == "naive" &&
        r.external[0].origins_used == 10 && std::isfinite(r.external[0].amse) &&
        r.external[0].amse > 0.0 && r.rows.size() == 10 &&
        (r.chosen_span == 60 || r.chosen_span == 120);
    if (!external_ok) {
        return {false, "external forecast table mis-scored (origins_used " +
                           std::to_string(r.external.empty()
                                              ? 0
                                              : r.external[0].origins_used) +
                           ", table rows " + std::to_string(table.size()) + ")"};
    }
    return {true, "order-1 won " + std::to_string(wins) +
                      "/20 runs; external table scored over 10/11 rows "
                      "(out-of-range origin ignored)"};
}

}  // namespace

int main() {
    struct Check {
        const char* name;
        CheckResult (*fn)();
    };
    const Check checks[] = {
        {"closed-form weighted LS equals a numerical minimizer", check_closed_form},
        {"variance ramp mimics long memory; genuine ARCH decays",
         check_long_memory_illusion},
        {"small-sample accuracy ratio vs likelihood baseline", check_small_sample_ratio},
        {"fit error shrinks as the sample grows", check_consistency},
        {"bandwidth selection plausible; criterion matches recomputation",
         check_bandwidth_selection},
        {"bootstrap band coverage near nominal", check_bootstrap_coverage},
        {"forecast recursion matches closed form and Monte Carlo",
         check_forecast_recursion},
        {"no lookahead; artifacts byte-stable under fixed seeds",
         check_no_lookahead_and_determinism},
        {"order-1 forecaster beats order-0; external tables scored",
         check_backtest_harness},
    };

    int failures = 0;
    int id = 0;
    for (const Check& c : checks) {
        ++id;
        const auto start = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            r = c.fn();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::printf("[%s] %d. %s (%.1fs) — %s\n", r.pass ? "PASS" : "FAIL", id, c.name,
                    secs, r.detail.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failures;
    }
    std::printf("%d of 9 checks passed\n", 9 - failures);
    return failures;
}
