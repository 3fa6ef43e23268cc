#include "weaklevy/weak_pair.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <vector>

#include "weaklevy/quadrature.hpp"
#include "weaklevy/special.hpp"
#include "weaklevy/time_algebra.hpp"

namespace weaklevy {

namespace detail {

double halton(std::uint64_t index, unsigned base) {
  double f = 1.0, value = 0.0;
  while (index > 0) {
    f /= base;
    value += f * static_cast<double>(index % base);
    index /= base;
  }
  return value;
}

namespace {

constexpr unsigned kHaltonBases[8] = {2, 3, 5, 7, 11, 13, 17, 19};
constexpr std::uint64_t kQmcPoints = 1u << 14;

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
}

}  // namespace

BallMoments gaussian_ball_moments(const Vector& mean_in, const Matrix& cov,
                                  double radius2) {
  const Index n = mean_in.size();
  BallMoments out;
  out.mean = Vector::Zero(n);
  if (radius2 < 0.0) return out;

  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  if (eig.info() != Eigen::Success) {
    throw NumericError("gaussian_ball_moments: eigendecomposition failed");
  }
  const Vector vals = eig.eigenvalues();
  const double scale = std::max(vals.cwiseAbs().maxCoeff(), 0.0);
  std::vector<Index> live;
  for (Index i = 0; i < n; ++i) {
    if (vals[i] > kPsdJitterRel * scale && vals[i] > 0.0) live.push_back(i);
  }
  const Index rank = static_cast<Index>(live.size());

  if (rank == 0) {
    if (mean_in.squaredNorm() <= radius2) {
      out.prob = 1.0;
      out.mean = mean_in;
    }
    return out;
  }

  if (rank == 1) {
    // W = mean + a z with scalar z ~ N(0,1): the ball condition is a
    // quadratic inequality in z with an interval (or empty) solution set.
    const Vector a = eig.eigenvectors().col(live[0]) * std::sqrt(vals[live[0]]);
    const double qa = a.squaredNorm();
    const double qb = 2.0 * mean_in.dot(a);
    const double qc = mean_in.squaredNorm() - radius2;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc <= 0.0) return out;
    const double root = std::sqrt(disc);
    const double lo = (-qb - root) / (2.0 * qa);
    const double hi = (-qb + root) / (2.0 * qa);
    out.prob = normal_cdf(hi) - normal_cdf(lo);
    out.mean = out.prob * mean_in + (normal_pdf(lo) - normal_pdf(hi)) * a;
    return out;
  }

  if (rank > static_cast<Index>(sizeof(kHaltonBases) / sizeof(unsigned))) {
    throw NumericError(
        "gaussian_ball_moments: rank exceeds the supported QMC dimension");
  }

  Matrix factor(n, rank);
  for (Index j = 0; j < rank; ++j) {
    factor.col(j) = eig.eigenvectors().col(live[j]) * std::sqrt(vals[live[j]]);
  }
  double prob = 0.0;
  Vector mean_acc = Vector::Zero(n);
  Vector z(rank), w(n);
  for (std::uint64_t i = 1; i <= kQmcPoints; ++i) {
    for (Index j = 0; j < rank; ++j) {
      z[j] = normal_quantile(halton(i, kHaltonBases[j]));
    }
    w = mean_in + factor * z;
    if (w.squaredNorm() <= radius2) {
      prob += 1.0;
      mean_acc += w;
    }
  }
  out.prob = prob / static_cast<double>(kQmcPoints);
  out.mean = mean_acc / static_cast<double>(kQmcPoints);
  return out;
}

}  // namespace detail

namespace {

// Truncated moments of one jump shape t0: P((t0, X(t0)) in D) and
// E[X(t0) 1_D(t0, X(t0))], where the 2n-ball condition reduces to
// ||X(t0)||^2 <= 1 - ||t0||^2.
detail::BallMoments jump_ball_moments(const Vector& t0,
                                      const BrownianSpec& b) {
  const double radius2 = 1.0 - t0.squaredNorm();
  return detail::gaussian_ball_moments(time_product_drift(t0, b.mu),
                                       time_product_cov(t0, b.sigma), radius2);
}

}  // namespace

WeakPairCharacteristics weak_pair_characteristics(const SubordinatorSpec& t,
                                                  const BrownianSpec& b) {
  const Index n = t.dim();
  if (b.dim() != n) {
    throw SpecError("weak_pair_characteristics: spec dimensions differ");
  }
  WeakPairCharacteristics out;
  out.m1 = t.drift;
  out.m2 = time_product_drift(t.drift, b.mu);
  out.theta = Matrix::Zero(2 * n, 2 * n);
  out.theta.bottomRightCorner(n, n) = time_product_cov(t.drift, b.sigma);

  for (const JumpAtom& atom : t.atoms) {
    const detail::BallMoments bm = jump_ball_moments(atom.point, b);
    out.m1 += atom.intensity * bm.prob * atom.point;
    out.m2 += atom.intensity * bm.mean;
  }

  for (const GammaRay& ray : t.rays) {
    // Jumps g*u only meet the unit ball for g <= 1/||u||; integrate the
    // bounded, smooth integrands a e^{-bg} (u p(g), v(g)/g) over that range
    // with a composite Gauss-Kronrod rule graded toward the endpoint where
    // the ball probability vanishes with a square-root law.
    const double g_hi = 1.0 / ray.direction.norm();
    const Vector um = time_product_drift(ray.direction, b.mu);
    auto integrand = [&](double g) -> Vector {
      Vector val = Vector::Zero(2 * n);
      if (g <= 0.0) {
        val.head(n) = ray.direction;
        val.tail(n) = um;
        return val;
      }
      const detail::BallMoments bm = jump_ball_moments(g * ray.direction, b);
      val.head(n) = bm.prob * ray.direction;
      val.tail(n) = bm.mean / g;
      return val * std::exp(-ray.rate * g);
    };
    std::vector<double> knots;
    const double split = 0.75 * g_hi;
    const int uniform_panels = 16, graded_panels = 16;
    for (int i = 0; i <= uniform_panels; ++i) {
      knots.push_back(split * i / uniform_panels);
    }
    for (int j = 1; j <= graded_panels; ++j) {
      const double frac =
          j == graded_panels ? 0.0 : std::pow(0.5, static_cast<double>(j));
      knots.push_back(g_hi - (g_hi - split) * frac);
    }
    Vector ray_integral = Vector::Zero(2 * n);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      const double a0 = knots[i], b0 = knots[i + 1];
      const double c = 0.5 * (a0 + b0), h = 0.5 * (b0 - a0);
      Vector acc = gk15::wgk[7] * integrand(c);
      for (int k = 0; k < 7; ++k) {
        acc += gk15::wgk[k] *
               (integrand(c - h * gk15::xgk[k]) + integrand(c + h * gk15::xgk[k]));
      }
      ray_integral += h * acc;
    }
    ray_integral *= ray.shape;
    out.m1 += ray_integral.head(n);
    out.m2 += ray_integral.tail(n);
  }

  char tag[160];
  std::snprintf(tag, sizeof(tag),
                "marked jumps: P(X(t) in dx) T(dt), X(t) ~ N(t(.)mu, "
                "t(.)sigma); rays=%zu atoms=%zu",
                t.rays.size(), t.atoms.size());
  out.measure_description = tag;
  return out;
}

}  // namespace weaklevy
