#include "tvarch/simulate.hpp"

#include <cmath>

#include "tvarch/rng.hpp"

namespace tvarch {

namespace {

// Shared recursion. u_of_t supplies the rescaled time for step t (1-based);
// burn-in always runs at u_frozen.
ReturnSeries simulate_impl(const ParamCurves& model, const InnovationDist& dist, std::size_t n,
                           std::uint64_t seed, std::size_t burn_in, double u_frozen,
                           bool time_varying) {
    model.validate();
    dist.validate();
    if (n < 1) throw RangeError("simulation length must be at least 1");

    const int p = model.order;
    auto rng = make_rng(seed);

    // Lag buffer of squared values, most recent first.
    std::vector<double> lag_sq(static_cast<std::size_t>(std::max(p, 1)),
                               unconditional_mean(model, u_frozen));

    auto step = [&](double u) {
        double s2 = model.eval(0, u);
        for (int j = 1; j <= p; ++j) s2 += model.eval(j, u) * lag_sq[static_cast<std::size_t>(j - 1)];
        const double x = std::sqrt(s2) * dist.sample(rng);
        for (int j = p - 1; j >= 1; --j) lag_sq[static_cast<std::size_t>(j)] = lag_sq[static_cast<std::size_t>(j - 1)];
        if (p >= 1) lag_sq[0] = x * x;
        return x;
    };

    for (std::size_t t = 0; t < burn_in; ++t) step(u_frozen);

    ReturnSeries out;
    out.values.reserve(n);
    for (std::size_t t = 1; t <= n; ++t) {
        const double u = time_varying ? static_cast<double>(t) / static_cast<double>(n) : u_frozen;
        out.values.push_back(step(u));
    }
    return out;
}

}  // namespace

ReturnSeries simulate_tvarch(const ParamCurves& model, const InnovationDist& dist, std::size_t n,
                             std::uint64_t seed, std::size_t burn_in) {
    const double u1 = 1.0 / static_cast<double>(n);
    return simulate_impl(model, dist, n, seed, burn_in, u1, true);
}

ReturnSeries simulate_stationary(const ParamCurves& model, double u0, const InnovationDist& dist,
                                 std::size_t n, std::uint64_t seed, std::size_t burn_in) {
    if (!(u0 > 0.0 && u0 <= 1.0)) throw RangeError("u0 must lie in (0, 1]");
    return simulate_impl(model, dist, n, seed, burn_in, u0, false);
}

}  // namespace tvarch
