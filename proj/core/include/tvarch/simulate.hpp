#pragma once

#include <cstdint>

#include "tvarch/model.hpp"
#include "tvarch/series.hpp"

namespace tvarch {

/// Simulate a time-varying ARCH(p) path X_1..X_N:
///
///   sigma_t^2 = a_0(t/N) + sum_j a_j(t/N) X_{t-j}^2,   X_t = sigma_t Z_t.
///
/// Burn-in samples are generated with the coefficients frozen at u = 1/N and
/// discarded; pre-sample squares start at the unconditional mean at u = 1/N.
/// Deterministic for a fixed (model, dist, N, seed, burn_in).
ReturnSeries simulate_tvarch(const ParamCurves& model, const InnovationDist& dist,
                             std::size_t n, std::uint64_t seed, std::size_t burn_in = 500);

/// Same recursion with the coefficients frozen at u0 for every t: the
/// stationary process that locally approximates the time-varying one.
ReturnSeries simulate_stationary(const ParamCurves& model, double u0,
                                 const InnovationDist& dist, std::size_t n,
                                 std::uint64_t seed, std::size_t burn_in = 500);

}  // namespace tvarch
