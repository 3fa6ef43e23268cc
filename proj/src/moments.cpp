#include "weaklevy/moments.hpp"

#include <algorithm>
#include <cmath>

#include "weaklevy/time_algebra.hpp"

namespace weaklevy {

SubordinatorMoments subordinator_moments(const SubordinatorSpec& t) {
  const Index n = t.dim();
  SubordinatorMoments m;
  m.mean = t.drift;
  m.cov = Matrix::Zero(n, n);
  for (const GammaRay& r : t.rays) {
    m.mean += (r.shape / r.rate) * r.direction;
    m.cov += (r.shape / (r.rate * r.rate)) * r.direction * r.direction.transpose();
  }
  for (const JumpAtom& a : t.atoms) {
    m.mean += a.intensity * a.point;
    m.cov += a.intensity * a.point * a.point.transpose();
  }
  return m;
}

MomentReport weak_bm_moments(const SubordinatorSpec& t, const BrownianSpec& b) {
  const Index n = t.dim();
  if (b.dim() != n) throw SpecError("weak_bm_moments: spec dimensions differ");
  const SubordinatorMoments mt = subordinator_moments(t);

  MomentReport rep;
  rep.mean_t = mt.mean;
  rep.cov_t = mt.cov;

  // Mean, covariance and cross-covariance of Y accumulate the Gaussian part
  // at the deterministic drift plus, per jump measure, the conditional
  // moments of X(t) integrated against the jump law; for rays the integrals
  // of g and g^2 against the gamma Levy density are shape/rate and
  // shape/rate^2.
  rep.mean_y = time_product_drift(t.drift, b.mu);
  rep.cov_y = time_product_cov(t.drift, b.sigma);
  rep.cov_yt = Matrix::Zero(n, n);
  for (const GammaRay& r : t.rays) {
    const Vector um = r.direction.cwiseProduct(b.mu);
    const double m1 = r.shape / r.rate;
    const double m2 = r.shape / (r.rate * r.rate);
    rep.mean_y += m1 * um;
    rep.cov_y += m1 * time_product_cov(r.direction, b.sigma) +
                 m2 * um * um.transpose();
    rep.cov_yt += m2 * um * r.direction.transpose();
  }
  for (const JumpAtom& a : t.atoms) {
    const Vector tm = time_product_drift(a.point, b.mu);
    rep.mean_y += a.intensity * tm;
    rep.cov_y += a.intensity *
                 (time_product_cov(a.point, b.sigma) + tm * tm.transpose());
    rep.cov_yt += a.intensity * tm * a.point.transpose();
  }
  return rep;
}

MomentReport wvag_moments(const WVaGParams& p) {
  const WVaGParams q = validate_wvag(p);
  const Index n = q.dim();
  MomentReport rep;
  rep.mean_t = Vector::Ones(n);
  rep.cov_t = Matrix(n, n);
  rep.mean_y = q.mu;
  rep.cov_y = Matrix(n, n);
  rep.cov_yt = Matrix(n, n);
  const double b2 = q.b * q.b;
  for (Index k = 0; k < n; ++k) {
    for (Index l = 0; l < n; ++l) {
      if (k == l) {
        rep.cov_t(k, k) = q.alpha[k] / q.b;
        rep.cov_y(k, k) = (q.b * q.sigma(k, k) + q.mu[k] * q.mu[k] * q.alpha[k]) / q.b;
      } else {
        rep.cov_t(k, l) = q.a * q.alpha[k] * q.alpha[l] / b2;
        rep.cov_y(k, l) = (q.a * q.b * std::min(q.alpha[k], q.alpha[l]) * q.sigma(k, l) +
                           q.a * q.alpha[k] * q.alpha[l] * q.mu[k] * q.mu[l]) /
                          b2;
      }
      rep.cov_yt(k, l) = q.mu[k] * rep.cov_t(k, l);
    }
  }
  return rep;
}

}  // namespace weaklevy
