#pragma once

// First and second moments per unit time of the subordinator T and of the
// weakly subordinated Brownian motion Y = X o T.  For a gamma ray the jump
// integrals reduce to shape/rate and shape/rate^2; atoms contribute their
// intensity-weighted point products.

#include "weaklevy/types.hpp"

namespace weaklevy {

struct SubordinatorMoments {
  Vector mean;  // drift + sum_rays (a/b) u + sum_atoms lambda t
  Matrix cov;   // sum_rays (a/b^2) u u' + sum_atoms lambda t t'
};

struct MomentReport {
  Vector mean_t;
  Matrix cov_t;
  Vector mean_y;
  Matrix cov_y;
  Matrix cov_yt;  // cov_yt(k, l) = Cov(Y_k(1), T_l(1))
};

SubordinatorMoments subordinator_moments(const SubordinatorSpec& t);

MomentReport weak_bm_moments(const SubordinatorSpec& t, const BrownianSpec& b);

// Closed forms for the WVaG pair; agrees with
// weak_bm_moments(alpha_gamma_rays(p), BM(mu, sigma)).
MomentReport wvag_moments(const WVaGParams& p);

}  // namespace weaklevy
