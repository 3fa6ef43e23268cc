#pragma once

// Levy triplet of the pair Z = (T, X o T) for a Brownian subordinate: the
// truncated drifts
//   m1 = d + int t P((t, X(t)) in D) T(dt),
//   m2 = d (.) mu + int E[X(t) 1_D(t, X(t))] T(dt),
// the Gaussian block diag(0, d (.) sigma), and a structural tag for the
// marked jump measure.  D is the closed unit ball of R^{2n}.
//
// The ball functionals are exact for deterministic and rank <= 1 marks
// (normal cdf / density), and use a deterministic Halton-sequence
// quasi-Monte Carlo rule (2^14 points) for higher ranks, so evaluation is
// reproducible bit for bit.

#include <cstdint>

#include "weaklevy/types.hpp"

namespace weaklevy {

WeakPairCharacteristics weak_pair_characteristics(const SubordinatorSpec& t,
                                                  const BrownianSpec& b);

namespace detail {

// Probability and truncated mean of a Gaussian vector on the centered ball
// of squared radius radius2: prob = P(||W||^2 <= radius2) and
// mean = E[W 1{||W||^2 <= radius2}] for W ~ N(mean_in, cov).
struct BallMoments {
  double prob = 0.0;
  Vector mean;
};

BallMoments gaussian_ball_moments(const Vector& mean_in, const Matrix& cov,
                                  double radius2);

// Radical-inverse (van der Corput) value of index in the given base.
double halton(std::uint64_t index, unsigned base);

}  // namespace detail

}  // namespace weaklevy
