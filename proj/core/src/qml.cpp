#include "tvarch/qml.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tvarch/errors.hpp"
#include "tvarch/estimator.hpp"
#include "tvarch/parallel.hpp"
#include "tvarch/rng.hpp"
#include "tvarch/simulate.hpp"

namespace tvarch {

namespace {

struct Box {
    double eps;
    double lag_cap;

    void project(std::vector<double>& a) const {
        a[0] = std::max(a[0], eps);
        for (std::size_t j = 1; j < a.size(); ++j) {
            a[j] = std::clamp(a[j], eps, lag_cap);
        }
    }
};

double objective(const std::vector<double>& sq, std::size_t p, const std::vector<double>& a) {
    const std::size_t n = sq.size();
    double sum = 0.0;
    for (std::size_t k = p + 1; k <= n; ++k) {
        double s2 = a[0];
        for (std::size_t j = 1; j <= p; ++j) s2 += a[j] * sq[k - 1 - j];
        sum += std::log(s2) + sq[k - 1] / s2;
    }
    return sum / static_cast<double>(n - p);
}

struct SimplexResult {
    std::vector<double> x;
    double f = std::numeric_limits<double>::infinity();
    std::size_t iterations = 0;
    bool converged = false;
};

// Nelder-Mead with every candidate projected into the box before
// evaluation. Stops when both the objective spread and the simplex
// diameter fall under tolerance; the diameter test is what pins the
// parameters down (the objective is flat to second order at the optimum).
SimplexResult simplex_minimize(const std::vector<double>& sq, std::size_t p,
                               std::vector<double> start, const Box& box,
                               const QmlOptions& opt) {
    const std::size_t d = p + 1;
    box.project(start);

    std::vector<std::vector<double>> xs(d + 1, start);
    for (std::size_t i = 0; i < d; ++i) {
        const double step = std::max(0.1 * std::abs(start[i]), 0.02);
        xs[i + 1][i] += step;
        box.project(xs[i + 1]);
        if (xs[i + 1][i] == start[i]) {
            xs[i + 1][i] = start[i] - step;
            box.project(xs[i + 1]);
        }
    }
    std::vector<double> fs(d + 1);
    for (std::size_t i = 0; i <= d; ++i) fs[i] = objective(sq, p, xs[i]);

    std::vector<std::size_t> order(d + 1);
    SimplexResult res;
    for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
        const std::size_t best = order[0], worst = order[d], second = order[d - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                diameter = std::max(diameter, std::abs(xs[i][j] - xs[best][j]));
            }
        }
        const double spread = fs[worst] - fs[best];
        double x_scale = 1.0;
        for (double v : xs[best]) x_scale = std::max(x_scale, std::abs(v));
        if (spread <= opt.f_tol * (std::abs(fs[best]) + opt.f_tol) &&
            diameter <= opt.x_tol * x_scale) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < d; ++j) centroid[j] += xs[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(d);

        auto try_point = [&](double coef) {
            std::vector<double> x(d);
            for (std::size_t j = 0; j < d; ++j) {
                x[j] = centroid[j] + coef * (centroid[j] - xs[worst][j]);
            }
            box.project(x);
            return x;
        };

        std::vector<double> xr = try_point(1.0);
        const double fr = objective(sq, p, xr);
        if (fr < fs[best]) {
            std::vector<double> xe = try_point(2.0);
            const double fe = objective(sq, p, xe);
            if (fe < fr) {
                xs[worst] = std::move(xe);
                fs[worst] = fe;
            } else {
                xs[worst] = std::move(xr);
                fs[worst] = fr;
            }
        } else if (fr < fs[second]) {
            xs[worst] = std::move(xr);
            fs[worst] = fr;
        } else {
            const bool outside = fr < fs[worst];
            std::vector<double> xc = try_point(outside ? 0.5 : -0.5);
            const double fc = objective(sq, p, xc);
            if (fc < std::min(fr, fs[worst])) {
                xs[worst] = std::move(xc);
                fs[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= d; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < d; ++j) {
                        xs[i][j] = xs[best][j] + 0.5 * (xs[i][j] - xs[best][j]);
                    }
                    box.project(xs[i]);
                    fs[i] = objective(sq, p, xs[i]);
                }
            }
        }
    }

    const std::size_t best =
        static_cast<std::size_t>(std::min_element(fs.begin(), fs.end()) - fs.begin());
    res.x = xs[best];
    res.f = fs[best];
    return res;
}

}  // namespace

QmlFit qml_fit_segment(const ReturnSeries& segment, std::size_t p,
                       const std::optional<std::vector<double>>& init,
                       const QmlOptions& options) {
    segment.require_fit_length(static_cast<int>(p));
    const std::size_t n = segment.size();
    if (n < 2 * (p + 1)) {
        throw InsufficientWindowError("qml_fit_segment: segment shorter than 2(p+1)");
    }
    if (init && init->size() != p + 1) {
        throw InitError("qml_fit_segment: initializer must have p+1 entries");
    }
    const std::vector<double> sq = segment.squares();

    std::vector<double> base;
    if (init) {
        base = *init;
    } else {
        const double mean_sq =
            std::accumulate(sq.begin(), sq.end(), 0.0) / static_cast<double>(n);
        base.assign(p + 1, p > 0 ? 0.3 / static_cast<double>(p) : 0.0);
        base[0] = 0.5 * mean_sq;
    }
    const Box box{options.epsilon, 1.0 - options.delta};
    {
        std::vector<double> probe = base;
        box.project(probe);
        if (!std::isfinite(objective(sq, p, probe))) {
            throw InitError("qml_fit_segment: objective not finite at the initializer");
        }
    }

    QmlFit fit;
    fit.objective = std::numeric_limits<double>::infinity();
    // Restart jitter comes from a fixed seed: the fit is a deterministic
    // function of the data alone.
    std::mt19937_64 jitter_rng = make_rng(0x51c2a9f0d3e4b861ULL);
    std::uniform_real_distribution<double> jitter(0.5, 1.5);
    for (std::size_t r = 0; r < std::max<std::size_t>(options.restarts, 1); ++r) {
        std::vector<double> start = base;
        if (r > 0) {
            for (double& v : start) v *= jitter(jitter_rng);
        }
        SimplexResult res = simplex_minimize(sq, p, std::move(start), box, options);
        fit.iterations += res.iterations;
        if (res.f < fit.objective) {
            fit.objective = res.f;
            fit.a_hat = std::move(res.x);
            fit.converged = res.converged;
        }
    }
    return fit;
}

ComparisonTable compare_nls_qml(const ParamCurves& model, const InnovationDist& dist,
                                const std::vector<std::size_t>& sample_sizes,
                                std::size_t reps, std::uint64_t seed) {
    for (const auto& row : model.curves) {
        for (double v : row) {
            if (v != row.front()) {
                throw ModelError("compare_nls_qml: requires constant coefficient curves");
            }
        }
    }
    if (reps == 0) throw RangeError("compare_nls_qml: reps must be >= 1");
    model.validate();
    dist.validate();

    const std::size_t p = static_cast<std::size_t>(model.order);
    std::vector<double> truth(p + 1);
    for (std::size_t j = 0; j <= p; ++j) truth[j] = model.curves[j].front();

    ComparisonTable table;
    table.order = p;
    table.sample_sizes = sample_sizes;
    table.reps = reps;
    table.failures.assign(sample_sizes.size(), 0);

    for (std::size_t si = 0; si < sample_sizes.size(); ++si) {
        const std::size_t n = sample_sizes[si];
        const std::size_t t0 = (n + 1) / 2;

        std::vector<std::vector<double>> err_nls(reps), err_qml(reps);
        std::vector<char> failed(reps, 0);
        parallel_for(reps, [&](std::size_t rep) {
            const std::uint64_t rep_seed = mix_seed(seed, si * reps + rep);
            try {
                const ReturnSeries path = simulate_tvarch(model, dist, n, rep_seed);
                const FitPoint nls =
                    nls_fit_at(path, t0, 1.0, Kernel::rectangular(), static_cast<int>(p));
                const QmlFit qml = qml_fit_segment(path, p);
                err_nls[rep].resize(p + 1);
                err_qml[rep].resize(p + 1);
                for (std::size_t j = 0; j <= p; ++j) {
                    err_nls[rep][j] = std::abs(nls.a_hat[j] - truth[j]);
                    err_qml[rep][j] = std::abs(qml.a_hat[j] - truth[j]);
                }
            } catch (const Error&) {
                failed[rep] = 1;
            }
        });

        std::vector<double> mae_nls(p + 1, 0.0), mae_qml(p + 1, 0.0);
        std::size_t ok = 0;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            if (failed[rep]) {
                ++table.failures[si];
                continue;
            }
            ++ok;
            for (std::size_t j = 0; j <= p; ++j) {
                mae_nls[j] += err_nls[rep][j];
                mae_qml[j] += err_qml[rep][j];
            }
        }
        std::vector<double> ratio(p + 1, std::numeric_limits<double>::quiet_NaN());
        if (ok > 0) {
            for (std::size_t j = 0; j <= p; ++j) {
                mae_nls[j] /= static_cast<double>(ok);
                mae_qml[j] /= static_cast<double>(ok);
                ratio[j] = mae_qml[j] > 0.0
                               ? mae_nls[j] / mae_qml[j]
                               : (mae_nls[j] == 0.0
                                      ? 1.0
                                      : std::numeric_limits<double>::infinity());
            }
        } else {
            mae_nls.assign(p + 1, std::numeric_limits<double>::quiet_NaN());
            mae_qml.assign(p + 1, std::numeric_limits<double>::quiet_NaN());
        }
        table.mae_nls.push_back(std::move(mae_nls));
        table.mae_qml.push_back(std::move(mae_qml));
        table.ratio.push_back(std::move(ratio));
    }
    return table;
}

}  // namespace tvarch
