#pragma once

// Scalar special functions needed by the Levy densities and samplers:
// modified Bessel K of half-integer and integer order, the exponential
// integral E1, and the standard normal cdf/quantile pair.

#include "weaklevy/types.hpp"

namespace weaklevy {

// Modified Bessel function of the second kind K_rho(r), r > 0.
// rho must be a nonnegative multiple of 1/2 (negative orders are mapped by
// the symmetry K_{-rho} = K_rho).  Half-integer orders use the closed form
// K_{1/2}(r) = sqrt(pi/(2r)) e^{-r} plus the three-term recurrence
// K_{rho+1} = K_{rho-1} + (2 rho / r) K_rho; integer orders use an
// ascending series for r < 2 and a Steed continued fraction for r >= 2.
double bessel_k(double rho, double r);

// Scaled variant r^rho * K_rho(r); finite as r -> 0+ for rho > 0.
double bessel_k_scaled(double rho, double r);

namespace detail {
// The two integer-order branches, exposed so the seam at r = 2 can be
// checked directly; each returns (K_0(r), K_1(r)).
std::pair<double, double> bessel_k01_series(double r);
std::pair<double, double> bessel_k01_cf(double r);
}  // namespace detail

// Exponential integral E1(x) = int_x^inf e^{-t}/t dt, x > 0.
double exponential_integral_e1(double x);

// Scaled variant e^x E1(x); representable for all x > 0 (E1 itself
// underflows near x ~ 745), used by inverse-CDF solves in log space.
double exponential_integral_e1_scaled(double x);

double normal_cdf(double x);

// Inverse standard normal cdf on (0,1); rational approximation refined by a
// Halley step, good to ~1e-15.
double normal_quantile(double p);

}  // namespace weaklevy
