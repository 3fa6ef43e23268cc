#pragma once

// Levy measures of the subordinators and of their weakly subordinated
// Brownian images: gamma-ray decompositions, Thorin measure transforms,
// variance gamma densities, the WVaG decomposition into a full-support part
// plus one-dimensional axis parts, and the finite-Thorin VGGC density
// restricted to a support pattern J.

#include <functional>

#include "weaklevy/types.hpp"

namespace weaklevy {

// Multivariate variance gamma Levy density at v != 0:
//   2 b exp{<mu,v>_{sigma^{-1}}} K-hat_{n/2}(c ||v||_{sigma^{-1}})
//   / ((2 pi)^{n/2} |sigma|^{1/2} ||v||^n_{sigma^{-1}}),
// with c = (2b + ||mu||^2_{sigma^{-1}})^{1/2} and K-hat the scaled Bessel
// function r^rho K_rho(r).
double vg_levy_density(const Vector& v, const VGParams& p);

// Ray decomposition of the alpha-gamma subordinator: a common ray along
// alpha with (shape, rate) = (a, b) plus axis rays e_k with shape beta_k and
// rate b/alpha_k.
SubordinatorSpec alpha_gamma_rays(const WVaGParams& p);

// Thorin measure of the alpha-gamma subordinator: weight a at b*alpha/
// ||alpha||^2 plus weight beta_k at (b/alpha_k) e_k.
ThorinAtomicMeasure wvag_thorin_measure(const WVaGParams& p);

// A Thorin atom (u, w) generates the gamma ray (direction u, shape w,
// rate ||u||^2); the converse rescales the direction to preserve the radial
// law.  The round trip is law-equivalent (equal Laplace exponents), not a
// structural identity.
SubordinatorSpec thorin_to_rays(const Vector& drift,
                                const ThorinAtomicMeasure& u);
ThorinAtom ray_to_thorin_atom(const GammaRay& r);

// WVaG Levy measure: absolutely continuous full-support part f_0 plus a
// one-dimensional part f_k on each coordinate axis.
struct WvagLevyDecomposition {
  std::function<double(const Vector&)> full_support;
  std::vector<std::function<double(double)>> axis;
};

WvagLevyDecomposition wvag_levy_density(const WVaGParams& p);

// VGGC Levy density restricted to the support pattern J: the sum over
// Thorin atoms whose support is exactly J of the variance gamma density on
// the J-subspace induced by the atom.  y must have nonzero J-coordinates;
// coordinates outside J are ignored.
double vggc_levy_density(const Vector& y, const std::vector<int>& J,
                         const BrownianSpec& b, const ThorinAtomicMeasure& u);

// Path-variation classification of the subordinated process: a VGGC with
// zero time drift has finite variation and no linear drift; a nonzero time
// drift with invertible sigma produces a Gaussian component and infinite
// variation; a nonzero drift with singular sigma is not classified.
enum class VariationClass { FvDriftless, NotFv, FvUnknown };

const char* to_string(VariationClass c);

VariationClass classify_variation(const Vector& drift,
                                  const ThorinAtomicMeasure& u,
                                  bool sigma_invertible);

}  // namespace weaklevy
