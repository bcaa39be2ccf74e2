#include "tvarch/bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "tvarch/errors.hpp"
#include "tvarch/parallel.hpp"
#include "tvarch/rng.hpp"

namespace tvarch {

namespace {

void check_config(const BootstrapConfig& cfg) {
    if (cfg.B < 1) throw RangeError("bootstrap: B must be >= 1");
    if (!(cfg.level > 0.0 && cfg.level < 1.0)) {
        throw RangeError("bootstrap: level must lie in (0, 1)");
    }
}

void check_generator(const std::vector<double>& clipped, double delta) {
    if (clipped.empty() || !(clipped[0] > 0.0)) {
        throw ModelError("bootstrap: clipped a_0 must be positive");
    }
    double lag_sum = 0.0;
    for (std::size_t j = 1; j < clipped.size(); ++j) {
        if (clipped[j] < 0.0) throw ModelError("bootstrap: clipped a_j must be nonnegative");
        lag_sum += clipped[j];
    }
    if (lag_sum > 1.0 - delta + 1e-12) {
        throw ModelError("bootstrap: clipped lag coefficients must sum to at most 1 - delta");
    }
}

// Empirical quantile: the ceil(q*m)-th smallest of the sample (type 1).
double empirical_quantile(std::vector<double> sample, double q) {
    std::sort(sample.begin(), sample.end());
    const std::size_t m = sample.size();
    std::size_t idx = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(m)));
    idx = std::clamp<std::size_t>(idx, 1, m);
    return sample[idx - 1];
}

}  // namespace

ResidualEdf residual_edf(const ReturnSeries& series, std::size_t t0, double b,
                         const std::vector<double>& clipped) {
    ResidualEdf edf;
    edf.residuals = residuals(series, t0, b, clipped);
    return edf;
}

std::vector<double> bootstrap_path(const ResidualEdf& edf, const std::vector<double>& clipped,
                                   std::size_t length, std::uint64_t seed) {
    check_generator(clipped, 0.0);
    const std::size_t p = clipped.size() - 1;
    std::mt19937_64 rng = make_rng(seed);
    std::vector<double> x2(length);
    for (std::size_t t = 1; t <= length; ++t) {
        double s2 = clipped[0];
        for (std::size_t j = 1; j <= p && j < t; ++j) {
            s2 += clipped[j] * x2[t - 1 - j];
        }
        x2[t - 1] = s2 * edf.sample(rng);
    }
    return x2;
}

std::vector<double> bootstrap_fit(const std::vector<double>& squared_path,
                                  double mu_hat_original, std::size_t t0, double b,
                                  const Kernel& kernel, int p, std::size_t n_scale) {
    const WeightVector wv = weights_at(kernel, t0, b, n_scale);
    auto kappa = [&](std::size_t k) {
        double s = mu_hat_original;
        for (int j = 1; j <= p; ++j) s += squared_path[k - static_cast<std::size_t>(j) - 1];
        if (!(s > 0.0)) {
            throw SingularDesignError("bootstrap_fit: nonpositive normalization at k = " +
                                      std::to_string(k));
        }
        return s;
    };
    return detail::wls_squares(squared_path, p, wv, kappa);
}

CiEntry pointwise_ci(const ReturnSeries& series, std::size_t t0, double b,
                     const Kernel& kernel, int p, const BootstrapConfig& cfg) {
    check_config(cfg);
    const std::size_t n = series.size();

    const FitPoint fit = nls_fit_at(series, t0, b, kernel, p);
    const std::vector<double> a_bar =
        clip_coefficients(fit.a_hat, cfg.delta, 1e-8 * fit.mu_hat);
    const ResidualEdf edf = residual_edf(series, t0, b, a_bar);

    const std::size_t length =
        t0 + static_cast<std::size_t>(std::floor(b * static_cast<double>(n) / 2.0));
    const std::size_t d = static_cast<std::size_t>(p) + 1;

    std::vector<std::vector<double>> reps(cfg.B);
    parallel_for(cfg.B, [&](std::size_t rep) {
        const std::uint64_t rep_seed = mix_seed(cfg.seed, rep);
        try {
            const std::vector<double> path = bootstrap_path(edf, a_bar, length, rep_seed);
            reps[rep] = bootstrap_fit(path, fit.mu_hat, t0, b, kernel, p, n);
        } catch (const Error&) {
            // empty slot marks a failed replicate
        }
    });

    CiEntry entry;
    entry.t0 = t0;
    entry.u0 = static_cast<double>(t0) / static_cast<double>(n);
    entry.center = a_bar;
    entry.level = cfg.level;
    entry.B = cfg.B;
    entry.equal_tailed = cfg.equal_tailed;

    std::vector<std::vector<double>> per_coef(d);
    for (const auto& r : reps) {
        if (r.empty()) {
            ++entry.failures;
            continue;
        }
        for (std::size_t j = 0; j < d; ++j) per_coef[j].push_back(r[j]);
    }
    if (5 * entry.failures > cfg.B) {
        throw CiUnreliableError("pointwise_ci: " + std::to_string(entry.failures) + " of " +
                                std::to_string(cfg.B) + " replicates failed");
    }

    entry.lower.resize(d);
    entry.upper.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        if (cfg.equal_tailed) {
            const double alpha = 1.0 - cfg.level;
            entry.lower[j] = empirical_quantile(per_coef[j], alpha / 2.0);
            entry.upper[j] = empirical_quantile(per_coef[j], 1.0 - alpha / 2.0);
        } else {
            std::vector<double> diffs(per_coef[j].size());
            for (std::size_t i = 0; i < diffs.size(); ++i) {
                diffs[i] = std::abs(per_coef[j][i] - a_bar[j]);
            }
            const double q = empirical_quantile(std::move(diffs), cfg.level);
            entry.lower[j] = a_bar[j] - q;
            entry.upper[j] = a_bar[j] + q;
        }
    }
    return entry;
}

BootstrapBands bootstrap_bands(const ReturnSeries& series, const std::vector<std::size_t>& grid,
                               double b, const Kernel& kernel, int p,
                               const BootstrapConfig& cfg) {
    check_config(cfg);
    BootstrapBands bands;
    bands.order = p;
    bands.b = b;
    bands.config = cfg;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        BootstrapConfig point_cfg = cfg;
        // decorrelate grid points while keeping each reproducible
        point_cfg.seed = mix_seed(cfg.seed, 0x10000000ULL + i);
        try {
            bands.entries.push_back(pointwise_ci(series, grid[i], b, kernel, p, point_cfg));
        } catch (const Error& e) {
            bands.failures.emplace_back(grid[i], e.what());
        }
    }
    return bands;
}

}  // namespace tvarch
