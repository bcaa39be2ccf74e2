#include "tvarch/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace tvarch {

namespace {

// Classic piecewise-cubic window on [-1, 1].
double parzen_window(double u) {
    const double a = std::abs(u);
    if (a <= 0.5) return 1.0 - 6.0 * u * u + 6.0 * a * a * a;
    if (a <= 1.0) {
        const double d = 1.0 - a;
        return 2.0 * d * d * d;
    }
    return 0.0;
}

}  // namespace

Kernel Kernel::from_name(const std::string& name) {
    if (name == "parzen") return parzen();
    if (name == "rectangular" || name == "rect") return rectangular();
    if (name == "triangular" || name == "tri") return triangular();
    throw Error("unknown kernel: " + name);
}

std::string Kernel::name() const {
    switch (kind) {
        case Kind::Parzen: return "parzen";
        case Kind::Rectangular: return "rectangular";
        case Kind::Triangular: return "triangular";
    }
    return "?";
}

double Kernel::operator()(double x) const {
    if (std::abs(x) > 0.5) return 0.0;
    switch (kind) {
        case Kind::Rectangular:
            return 1.0;
        case Kind::Triangular:
            return 2.0 - 4.0 * std::abs(x);
        case Kind::Parzen:
            return (8.0 / 3.0) * parzen_window(2.0 * x);
    }
    return 0.0;
}

WeightVector weights_at(const Kernel& kernel, std::size_t t0, double b, std::size_t n) {
    if (t0 < 1 || t0 > n) throw RangeError("weight center outside the series");
    if (!(b > 0.0 && b <= 1.0)) throw BandwidthError("bandwidth must lie in (0, 1]");
    const double bn = b * static_cast<double>(n);
    if (bn < 2.0) {
        throw BandwidthError("bandwidth too small: b*N = " + std::to_string(bn) + " < 2");
    }

    const double half = bn / 2.0;
    const auto lo = static_cast<std::size_t>(
        std::max<double>(1.0, std::ceil(static_cast<double>(t0) - half)));
    const auto hi = static_cast<std::size_t>(
        std::min<double>(static_cast<double>(n), std::floor(static_cast<double>(t0) + half)));

    WeightVector wv;
    wv.t0 = t0;
    wv.b = b;
    wv.lo = lo;
    wv.hi = hi;
    wv.w.resize(hi - lo + 1);
    for (std::size_t k = lo; k <= hi; ++k) {
        const double x = (static_cast<double>(t0) - static_cast<double>(k)) / bn;
        const double wk = kernel(x) / bn;
        wv.w[k - lo] = wk;
        wv.raw_sum += wk;
    }
    return wv;
}

}  // namespace tvarch
