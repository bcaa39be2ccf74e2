#pragma once

#include <stdexcept>
#include <string>

namespace tvarch {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parameter curves violate the model constraints (a_0 not positive,
/// lag coefficients summing past the stability bound, bad order).
class ModelError : public Error {
public:
    using Error::Error;
};

/// Innovation specification is unusable (e.g. Student-t df <= 4).
class DistributionError : public Error {
public:
    using Error::Error;
};

/// Local mean is undefined because the lag coefficients sum to >= 1.
class DivergenceError : public Error {
public:
    using Error::Error;
};

/// Kernel window too narrow for the requested bandwidth (b*N < 2).
class BandwidthError : public Error {
public:
    using Error::Error;
};

/// The weighted design matrix of a local regression is singular or
/// numerically indistinguishable from singular.
class SingularDesignError : public Error {
public:
    using Error::Error;
};

/// A residual or estimation window holds too few observations.
class InsufficientWindowError : public Error {
public:
    using Error::Error;
};

/// The refit with estimated conditional-variance weights requires all
/// first-stage coefficients to be strictly positive.
class NotApplicableError : public Error {
public:
    using Error::Error;
};

/// Cross-validation could not be evaluated (all grid points failed or
/// every candidate bandwidth was skipped).
class CvError : public Error {
public:
    using Error::Error;
};

/// Too many bootstrap replicates failed for the bands to be trusted.
class CiUnreliableError : public Error {
public:
    using Error::Error;
};

/// Forecast recursion would diverge (lag coefficients sum to >= 1).
class StabilityError : public Error {
public:
    using Error::Error;
};

/// An index or horizon reaches outside the available data.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Coverage checks need strictly positive volatility forecasts.
class CoverageError : public Error {
public:
    using Error::Error;
};

/// A statistical test cannot be computed (e.g. zero-variance input).
class TestError : public Error {
public:
    using Error::Error;
};

/// QML optimizer could not start (non-finite objective at the initializer).
class InitError : public Error {
public:
    using Error::Error;
};

/// File parsing or writing failed; message names the offending line.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace tvarch
