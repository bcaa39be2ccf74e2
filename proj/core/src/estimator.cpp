#include "tvarch/estimator.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tvarch/parallel.hpp"

namespace tvarch {

namespace detail {

std::vector<double> wls_squares(const std::vector<double>& sq, int p, const WeightVector& wv,
                                const std::function<double(std::size_t)>& kappa,
                                std::size_t skip_lo, std::size_t skip_hi) {
    const std::size_t n = sq.size();
    const int d = p + 1;
    const std::size_t k_lo = std::max<std::size_t>(wv.lo, static_cast<std::size_t>(p) + 1);
    const std::size_t k_hi = std::min<std::size_t>(wv.hi, n);

    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(d, d);
    Eigen::VectorXd r = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd reg(d);
    std::size_t used = 0;

    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        if (k >= skip_lo && k <= skip_hi) continue;
        const double w = wv.at(k);
        if (w == 0.0) continue;
        const double kap = kappa(k);
        const double c = w / (kap * kap);
        reg(0) = 1.0;
        for (int j = 1; j <= p; ++j) reg(j) = sq[k - static_cast<std::size_t>(j) - 1];
        R.selfadjointView<Eigen::Lower>().rankUpdate(reg, c);
        r += c * sq[k - 1] * reg;
        ++used;
    }

    if (used < 2 * static_cast<std::size_t>(d)) {
        throw InsufficientWindowError("local regression at t0 = " + std::to_string(wv.t0) +
                                      " has only " + std::to_string(used) +
                                      " weighted observations, need " + std::to_string(2 * d));
    }

    R = R.selfadjointView<Eigen::Lower>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R);
    const auto& ev = es.eigenvalues();
    const double lam_max = ev(d - 1);
    const double lam_min = ev(0);
    if (!(lam_max > 0.0) || lam_min <= lam_max * 1e-12) {
        throw SingularDesignError("singular local design at t0 = " + std::to_string(wv.t0) +
                                  " (window [" + std::to_string(k_lo) + ", " +
                                  std::to_string(k_hi) + "])");
    }

    const Eigen::VectorXd a = es.eigenvectors() *
                              (es.eigenvectors().transpose() * r).cwiseQuotient(ev);
    return std::vector<double>(a.data(), a.data() + d);
}

}  // namespace detail

LocalMean local_mean_full(const ReturnSeries& series, std::size_t t0, double b,
                          const Kernel& kernel, const LocalMeanOptions& opts) {
    const std::size_t n = series.size();
    if (n == 0) throw RangeError("empty series");
    const WeightVector wv = weights_at(kernel, t0, b, n);

    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = wv.lo; k <= wv.hi; ++k) {
        if (k == opts.exclude) continue;
        const double w = wv.at(k);
        num += w * series.square(k);
        den += w;
    }

    LocalMean out;
    out.value = opts.ratio_normalized && den > 0.0 ? num / den : num;
    if (!(out.value > 0.0)) {
        out.value = opts.floor_epsilon;
        out.floored = true;
    }
    return out;
}

double local_mean(const ReturnSeries& series, std::size_t t0, double b, const Kernel& kernel) {
    return local_mean_full(series, t0, b, kernel).value;
}

std::vector<double> weighted_ls(const ReturnSeries& series, std::size_t t0, double b,
                                const Kernel& kernel, int p,
                                const std::function<double(std::size_t)>& kappa) {
    series.require_fit_length(p);
    const WeightVector wv = weights_at(kernel, t0, b, series.size());
    return detail::wls_squares(series.squares(), p, wv, kappa);
}

namespace {

double resolve_mu(const ReturnSeries& series, std::size_t t0, double b, const Kernel& kernel,
                  const MuMode& mode) {
    switch (mode.kind) {
        case MuMode::Kind::Local:
            return local_mean(series, t0, b, kernel);
        case MuMode::Kind::Global: {
            double s = 0.0;
            for (double v : series.values) s += v * v;
            return s / static_cast<double>(series.size());
        }
        case MuMode::Kind::Supplied:
            return mode.value;
    }
    return 0.0;  // unreachable
}

}  // namespace

FitPoint nls_fit_at(const ReturnSeries& series, std::size_t t0, double b, const Kernel& kernel,
                    int p, const MuMode& mu_mode) {
    series.require_fit_length(p);
    const double mu = resolve_mu(series, t0, b, kernel, mu_mode);

    const auto sq = series.squares();
    auto kappa = [&](std::size_t k) {
        double s = mu;
        for (int j = 1; j <= p; ++j) s += sq[k - static_cast<std::size_t>(j) - 1];
        return s;
    };

    const WeightVector wv = weights_at(kernel, t0, b, series.size());
    FitPoint fp;
    fp.t0 = t0;
    fp.u0 = static_cast<double>(t0) / static_cast<double>(series.size());
    fp.b = b;
    fp.mu_hat = mu;
    fp.a_hat = detail::wls_squares(sq, p, wv, kappa);
    return fp;
}

FitCurve nls_fit_curve(const ReturnSeries& series, const std::vector<std::size_t>& grid,
                       double b, const Kernel& kernel, int p, const MuMode& mu_mode) {
    FitCurve curve;
    curve.order = p;
    curve.kernel = kernel;
    curve.b = b;

    std::vector<FitPoint> slots(grid.size());
    std::vector<std::string> errors(grid.size());

    parallel_for(grid.size(), [&](std::size_t i) {
        try {
            slots[i] = nls_fit_at(series, grid[i], b, kernel, p, mu_mode);
        } catch (const Error& e) {
            errors[i] = e.what();
        }
    });

    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (errors[i].empty()) {
            curve.points.push_back(std::move(slots[i]));
        } else {
            curve.failures.emplace_back(grid[i], errors[i]);
        }
    }
    return curve;
}

std::vector<std::size_t> full_grid(std::size_t n, int p) {
    std::vector<std::size_t> g;
    for (std::size_t t = static_cast<std::size_t>(p) + 1; t <= n; ++t) g.push_back(t);
    return g;
}

std::vector<double> oracle_refit(const ReturnSeries& series, std::size_t t0, double b,
                                 const Kernel& kernel, const FitPoint& first_stage) {
    for (double a : first_stage.a_hat) {
        if (!(a > 0.0)) {
            throw NotApplicableError(
                "conditional-variance reweighting needs strictly positive first-stage "
                "coefficients");
        }
    }
    const int p = static_cast<int>(first_stage.a_hat.size()) - 1;
    const auto sq = series.squares();
    auto kappa = [&](std::size_t k) {
        double s = first_stage.a_hat[0];
        for (int j = 1; j <= p; ++j) {
            s += first_stage.a_hat[static_cast<std::size_t>(j)] *
                 sq[k - static_cast<std::size_t>(j) - 1];
        }
        return s;
    };
    const WeightVector wv = weights_at(kernel, t0, b, series.size());
    return detail::wls_squares(sq, p, wv, kappa);
}

std::vector<double> clip_coefficients(std::vector<double> a_hat, double delta, double a0_floor) {
    if (a_hat.empty()) return a_hat;
    a_hat[0] = std::max(a_hat[0], a0_floor);
    double sum = 0.0;
    for (std::size_t j = 1; j < a_hat.size(); ++j) {
        a_hat[j] = std::max(a_hat[j], 0.0);
        sum += a_hat[j];
    }
    if (sum > 1.0 - delta) {
        const double scale = (1.0 - delta) / sum;
        for (std::size_t j = 1; j < a_hat.size(); ++j) a_hat[j] *= scale;
    }
    return a_hat;
}

ResidualSet residuals(const ReturnSeries& series, std::size_t t0, double b,
                      const std::vector<double>& clipped) {
    const int p = static_cast<int>(clipped.size()) - 1;
    const std::size_t n = series.size();
    const auto bn = static_cast<long long>(std::llround(b * static_cast<double>(n)));

    const long long lo_ll = std::max<long long>(static_cast<long long>(t0) - bn, p + 1);
    const long long hi_ll =
        std::min<long long>(static_cast<long long>(t0) + bn - 1, static_cast<long long>(n));
    if (hi_ll - lo_ll + 1 < 10) {
        throw InsufficientWindowError("residual window at t0 = " + std::to_string(t0) +
                                      " holds fewer than 10 observations");
    }

    ResidualSet rs;
    rs.lo = static_cast<std::size_t>(lo_ll);
    rs.hi = static_cast<std::size_t>(hi_ll);
    rs.z2_raw.reserve(rs.hi - rs.lo + 1);
    for (std::size_t k = rs.lo; k <= rs.hi; ++k) {
        double s2 = clipped[0];
        for (int j = 1; j <= p; ++j) {
            s2 += clipped[static_cast<std::size_t>(j)] * series.square(k - static_cast<std::size_t>(j));
        }
        rs.z2_raw.push_back(series.square(k) / s2);
    }

    const double mean =
        std::accumulate(rs.z2_raw.begin(), rs.z2_raw.end(), 0.0) /
        static_cast<double>(rs.z2_raw.size());
    // Shift so the window mean is 1, then floor at zero: a downward shift can
    // push small squares negative, and a negative "square" would let the
    // bootstrap recursion produce negative variances.  Flooring raises the
    // mean, so rescale to restore it; when nothing was floored the scale is
    // exactly 1 and the plain shift survives unchanged.
    rs.z2.resize(rs.z2_raw.size());
    double floored_mean = 0.0;
    for (std::size_t i = 0; i < rs.z2_raw.size(); ++i) {
        rs.z2[i] = std::max(rs.z2_raw[i] - mean + 1.0, 0.0);
        floored_mean += rs.z2[i];
    }
    floored_mean /= static_cast<double>(rs.z2.size());
    rs.signed_z.resize(rs.z2.size());
    for (std::size_t i = 0; i < rs.z2.size(); ++i) {
        rs.z2[i] /= floored_mean;
        const double x = series.at(rs.lo + i);
        const double mag = std::sqrt(rs.z2[i]);
        rs.signed_z[i] = x < 0.0 ? -mag : mag;
    }
    return rs;
}

std::vector<double> curve_residuals(const ReturnSeries& series, const FitCurve& curve,
                                    double delta) {
    std::vector<double> out;
    out.reserve(curve.points.size());
    const int p = curve.order;
    for (const FitPoint& fp : curve.points) {
        if (fp.t0 <= static_cast<std::size_t>(p)) continue;
        const auto a = clip_coefficients(fp.a_hat, delta, 1e-8 * fp.mu_hat);
        double s2 = a[0];
        for (int j = 1; j <= p; ++j) {
            s2 += a[static_cast<std::size_t>(j)] * series.square(fp.t0 - static_cast<std::size_t>(j));
        }
        out.push_back(series.at(fp.t0) / std::sqrt(s2));
    }
    return out;
}

}  // namespace tvarch
