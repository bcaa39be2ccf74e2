#pragma once

// Scalar special functions used by the diagnostic tests.  Accuracy targets
// are modest (absolute error around 1e-8 on p-values), which the classic
// series / continued-fraction evaluations reach comfortably in double
// precision.

namespace tvarch::special {

// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
// Series expansion for x < a + 1, continued fraction otherwise.
double gamma_p(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

// Upper tail of the chi-square distribution with k > 0 degrees of freedom:
// P(X > x) = Q(k/2, x/2).
double chi_square_upper_tail(double x, double k);

// Standard normal CDF.
double normal_cdf(double x);

// Standard normal quantile (inverse CDF) for prob in (0, 1).
// Rational initial guess refined by Newton steps on normal_cdf.
double normal_quantile(double prob);

// Asymptotic Kolmogorov distribution Q(t) = P(K > t) where K is the limit
// of sqrt(n) * D_n.  Uses the alternating theta series for large t and the
// dual series for small t; accurate to ~1e-10 everywhere.
double kolmogorov_upper_tail(double t);

}  // namespace tvarch::special
