#pragma once

// Characteristic and Laplace exponents.  All exponents are per unit time:
// E exp(i<theta, Z(t)>) = exp(t * psi(theta)).  Every complex logarithm is
// taken on the principal branch and its argument is checked to have
// strictly positive real part; a violation is a hard numerical error.

#include "weaklevy/types.hpp"

namespace weaklevy {

enum class ExponentMethod { Closed, Quadrature };

// Principal-branch log with the positivity guard described above.
Complex log_guarded(Complex w);

// Brownian motion with drift: i<mu,theta> - 0.5 theta' sigma theta.
Complex bm_exponent(const Vector& theta, const BrownianSpec& b);

// Deterministic multivariate time: exponent of X(t) for a Brownian X,
// i<t.mu, theta> - 0.5 theta' (t.sigma) theta.
Complex multitime_exponent(const Vector& t, const Vector& theta,
                           const BrownianSpec& b);

// Variance gamma: -b log{(b - i<mu,theta> + 0.5 theta' sigma theta)/b}.
Complex vg_exponent(const Vector& theta, const VGParams& p);

// Weak variance alpha-gamma: common gamma factor plus one-dimensional
// idiosyncratic factors with shapes beta_k.
Complex wvag_exponent(const Vector& theta, const WVaGParams& p);

// Variance generalised gamma convolution driven by a finite Thorin measure
// and a deterministic time drift.
Complex vggc_exponent(const Vector& theta, const Vector& drift,
                      const BrownianSpec& b, const ThorinAtomicMeasure& u);

// Joint exponent of the pair (T, X o T) evaluated at (theta_time,
// theta_space).  Closed form sums a Frullani log per gamma ray; the
// quadrature method integrates the ray terms numerically against the gamma
// Levy density (it exists as an independent cross-check of the closed form).
Complex weak_pair_exponent(const Vector& theta_time, const Vector& theta_space,
                           const SubordinatorSpec& t, const BrownianSpec& b,
                           ExponentMethod method = ExponentMethod::Closed);

// Marginal exponent of the subordinator itself.
Complex subordinator_exponent(const Vector& theta, const SubordinatorSpec& t);

// Laplace exponents: E exp(-<lambda, T(t)>) = exp(-t * Lambda(lambda)),
// lambda componentwise >= 0.
double subordinator_laplace(const Vector& lambda, const SubordinatorSpec& t);
double thorin_laplace(const Vector& lambda, const Vector& drift,
                      const ThorinAtomicMeasure& u);

}  // namespace weaklevy
