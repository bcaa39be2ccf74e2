#include "tvarch/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tvarch {

InnovationDist InnovationDist::student_t(double df) {
    InnovationDist d{Kind::StudentT, df};
    d.validate();
    return d;
}

void InnovationDist::validate() const {
    if (kind == Kind::StudentT && !(df > 4.0)) {
        throw DistributionError("student_t innovations require df > 4, got df = " +
                                std::to_string(df));
    }
}

double InnovationDist::sample(std::mt19937_64& rng) const {
    switch (kind) {
        case Kind::Gaussian: {
            std::normal_distribution<double> n(0.0, 1.0);
            return n(rng);
        }
        case Kind::Laplace: {
            // Inverse CDF; scale 1/sqrt(2) gives unit variance.
            std::uniform_real_distribution<double> u01(0.0, 1.0);
            double u = u01(rng);
            while (u <= 0.0 || u >= 1.0) u = u01(rng);
            const double scale = 1.0 / std::sqrt(2.0);
            return u < 0.5 ? scale * std::log(2.0 * u) : -scale * std::log(2.0 * (1.0 - u));
        }
        case Kind::StudentT: {
            std::student_t_distribution<double> t(df);
            return t(rng) * std::sqrt((df - 2.0) / df);
        }
    }
    return 0.0;  // unreachable
}

std::string InnovationDist::name() const {
    switch (kind) {
        case Kind::Gaussian: return "gaussian";
        case Kind::Laplace: return "laplace";
        case Kind::StudentT: return "student_t";
    }
    return "?";
}

InnovationDist InnovationDist::from_name(const std::string& name, double df) {
    if (name == "gaussian" || name == "normal") return gaussian();
    if (name == "laplace") return laplace();
    if (name == "student_t" || name == "student-t" || name == "t") return student_t(df);
    throw DistributionError("unknown innovation distribution: " + name);
}

double ParamCurves::eval(int j, double u) const {
    const auto& c = curves[static_cast<std::size_t>(j)];
    if (knots.size() == 1) return c[0];
    if (u <= knots.front()) return c.front();
    if (u >= knots.back()) return c.back();
    const auto it = std::upper_bound(knots.begin(), knots.end(), u);
    const std::size_t hi = static_cast<std::size_t>(it - knots.begin());
    const std::size_t lo = hi - 1;
    const double w = (u - knots[lo]) / (knots[hi] - knots[lo]);
    return (1.0 - w) * c[lo] + w * c[hi];
}

double ParamCurves::lag_sum(double u) const {
    double s = 0.0;
    for (int j = 1; j <= order; ++j) s += eval(j, u);
    return s;
}

void ParamCurves::validate(double delta) const {
    if (order < 0) throw ModelError("negative model order");
    if (curves.size() != static_cast<std::size_t>(order) + 1) {
        throw ModelError("expected " + std::to_string(order + 1) + " curves, have " +
                         std::to_string(curves.size()));
    }
    if (knots.empty()) throw ModelError("empty knot grid");
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i] > knots[i - 1])) throw ModelError("knot grid must be strictly increasing");
    }
    if (knots.front() < 0.0 || knots.back() > 1.0) {
        throw ModelError("knots must lie within [0, 1]");
    }
    for (const auto& c : curves) {
        if (c.size() != knots.size()) throw ModelError("curve/knot length mismatch");
    }
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!(curves[0][i] > 0.0)) {
            throw ModelError("a_0 must be strictly positive at every knot");
        }
        double s = 0.0;
        for (int j = 1; j <= order; ++j) {
            if (curves[static_cast<std::size_t>(j)][i] < 0.0) {
                throw ModelError("a_" + std::to_string(j) + " must be nonnegative");
            }
            s += curves[static_cast<std::size_t>(j)][i];
        }
        if (s > 1.0 - delta) {
            throw ModelError("lag coefficients sum to " + std::to_string(s) +
                             " > 1 - delta at knot u = " + std::to_string(knots[i]));
        }
    }
}

ParamCurves ParamCurves::constant(std::vector<double> coeffs) {
    ParamCurves m;
    m.order = static_cast<int>(coeffs.size()) - 1;
    m.knots = {0.0, 1.0};
    for (double c : coeffs) m.curves.push_back({c, c});
    return m;
}

ParamCurves ParamCurves::linear(std::vector<double> at_zero, std::vector<double> at_one) {
    ParamCurves m;
    m.order = static_cast<int>(at_zero.size()) - 1;
    m.knots = {0.0, 1.0};
    for (std::size_t j = 0; j < at_zero.size(); ++j) m.curves.push_back({at_zero[j], at_one[j]});
    return m;
}

ParamCurves ParamCurves::sinusoidal(std::vector<double> center, std::vector<double> amplitude,
                                    double cycles, std::size_t n_knots) {
    ParamCurves m;
    m.order = static_cast<int>(center.size()) - 1;
    m.knots.resize(n_knots);
    for (std::size_t i = 0; i < n_knots; ++i) {
        m.knots[i] = static_cast<double>(i) / static_cast<double>(n_knots - 1);
    }
    for (std::size_t j = 0; j < center.size(); ++j) {
        std::vector<double> c(n_knots);
        for (std::size_t i = 0; i < n_knots; ++i) {
            c[i] = center[j] +
                   amplitude[j] * std::sin(2.0 * std::numbers::pi * cycles * m.knots[i]);
        }
        m.curves.push_back(std::move(c));
    }
    return m;
}

ParamCurves ParamCurves::constant_variance_arch1(double mu_star, std::vector<double> a1_knots_u,
                                                 std::vector<double> a1_values) {
    ParamCurves m;
    m.order = 1;
    m.knots = std::move(a1_knots_u);
    std::vector<double> a0(a1_values.size());
    for (std::size_t i = 0; i < a1_values.size(); ++i) a0[i] = mu_star * (1.0 - a1_values[i]);
    m.curves.push_back(std::move(a0));
    m.curves.push_back(std::move(a1_values));
    return m;
}

namespace {

// Rounded square wave on [0,1): levels +1/-1 joined by C1 smoothstep ramps
// covering the first quarter of each half-cycle.
double rounded_square(double phase) {
    constexpr double ramp = 0.25;
    const double q = std::fmod(phase, 0.5) / 0.5;
    const double level = phase < 0.5 ? 1.0 : -1.0;
    if (q >= ramp) return level;
    const double s = q / ramp;
    return level * (2.0 * (3.0 - 2.0 * s) * s * s - 1.0);
}

}  // namespace

ParamCurves ParamCurves::constant_variance_example() {
    const std::size_t n = 2401;
    std::vector<double> u(n), a1(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = static_cast<double>(i) / static_cast<double>(n - 1);
        const double phase = std::fmod(6.0 * u[i], 1.0);
        a1[i] = 0.5 + 0.47 * rounded_square(phase);
    }
    return constant_variance_arch1(1.0, std::move(u), std::move(a1));
}

double unconditional_mean(const ParamCurves& model, double u) {
    const double s = model.lag_sum(u);
    if (s >= 1.0) {
        throw DivergenceError("lag coefficients sum to " + std::to_string(s) +
                              " >= 1 at u = " + std::to_string(u));
    }
    return model.eval(0, u) / (1.0 - s);
}

}  // namespace tvarch
