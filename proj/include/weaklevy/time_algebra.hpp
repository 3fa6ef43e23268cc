#pragma once

// Deterministic multivariate time algebra.  A multivariate time
// t in [0,inf)^n acts on Brownian/Levy characteristics (mu, sigma, X) by
//
//   (t . mu)_k      = t_k mu_k
//   (t . sigma)_kl  = sigma_kl * min(t_k, t_l)
//   t . X           = sum_k dt_(k) * X projected onto coordinates {(k)..(n)}
//
// where t_(1) <= ... <= t_(n) is the ascending rearrangement of t and
// dt_(k) = t_(k) - t_(k-1) are the spacings.  The compensation vector
// collects the drift correction produced by jumps that leave the unit ball
// under projection.  All results are invariant under the tie-breaking order
// used for equal components.

#include "weaklevy/types.hpp"

namespace weaklevy {

enum class TieBreak { IndexAscending, IndexDescending };

// Ascending rearrangement of t: order[k] is the coordinate holding the
// (k+1)-th smallest component; spacings[k] = t_(k+1) - t_(k) (with t_(0)=0).
struct TimeOrdering {
  std::vector<Index> order;
  Vector spacings;
};

TimeOrdering ascending_spacings(const Vector& t,
                                TieBreak tie = TieBreak::IndexAscending);

Vector time_product_drift(const Vector& t, const Vector& mu);
Matrix time_product_cov(const Vector& t, const Matrix& sigma);

FiniteAtomicMeasure time_product_measure(const Vector& t,
                                         const FiniteAtomicMeasure& x,
                                         TieBreak tie = TieBreak::IndexAscending);

// Drift correction c(t, X) = sum_{k>=2} dt_(k) * integral over the
// complement of the closed unit ball of pi_{(k)..(n)}(x) restricted to
// projections landing inside the ball.  Zero when X has no atoms.
Vector compensation_vector(const Vector& t, const FiniteAtomicMeasure& x,
                           TieBreak tie = TieBreak::IndexAscending);

}  // namespace weaklevy
