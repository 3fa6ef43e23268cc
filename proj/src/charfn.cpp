#include "weaklevy/charfn.hpp"

#include <cmath>
#include <sstream>

#include "weaklevy/quadrature.hpp"
#include "weaklevy/time_algebra.hpp"

namespace weaklevy {

namespace {

const Complex kI(0.0, 1.0);

double quad_form(const Vector& theta, const Matrix& m) {
  return theta.dot(m * theta);
}

void require_dim(const Vector& v, Index n, const char* what) {
  if (v.size() != n) throw SpecError(std::string(what) + ": dimension mismatch");
}

// exp(w) - 1 without cancellation for small |w|.
Complex cexpm1(Complex w) {
  if (std::abs(w) < 1e-4) {
    return w * (1.0 + w / 2.0 * (1.0 + w / 3.0 * (1.0 + w / 4.0)));
  }
  return std::exp(w) - 1.0;
}

}  // namespace

Complex log_guarded(Complex w) {
  if (!(w.real() > 0.0)) {
    std::ostringstream os;
    os << "log_guarded: principal branch requires Re > 0, got " << w.real()
       << " + " << w.imag() << "i";
    throw NumericError(os.str());
  }
  return std::log(w);
}

Complex bm_exponent(const Vector& theta, const BrownianSpec& b) {
  require_dim(theta, b.dim(), "bm_exponent.theta");
  return kI * b.mu.dot(theta) - 0.5 * quad_form(theta, b.sigma);
}

Complex multitime_exponent(const Vector& t, const Vector& theta,
                           const BrownianSpec& b) {
  require_dim(theta, b.dim(), "multitime_exponent.theta");
  return kI * time_product_drift(t, b.mu).dot(theta) -
         0.5 * quad_form(theta, time_product_cov(t, b.sigma));
}

Complex vg_exponent(const Vector& theta, const VGParams& p) {
  require_dim(theta, p.dim(), "vg_exponent.theta");
  const Complex arg =
      p.b - kI * p.mu.dot(theta) + 0.5 * quad_form(theta, p.sigma);
  return -p.b * log_guarded(arg / p.b);
}

Complex wvag_exponent(const Vector& theta, const WVaGParams& p) {
  require_dim(theta, p.dim(), "wvag_exponent.theta");
  if (p.beta.size() != p.dim()) {
    throw SpecError("wvag_exponent: params not validated (beta missing)");
  }
  const Vector am = p.alpha.cwiseProduct(p.mu);
  const Matrix as = time_product_cov(p.alpha, p.sigma);
  Complex psi =
      -p.a * log_guarded((p.b - kI * am.dot(theta) + 0.5 * quad_form(theta, as)) / p.b);
  for (Index k = 0; k < p.dim(); ++k) {
    const Complex arg = p.b - kI * p.alpha[k] * p.mu[k] * theta[k] +
                        0.5 * p.alpha[k] * theta[k] * theta[k] * p.sigma(k, k);
    psi -= p.beta[k] * log_guarded(arg / p.b);
  }
  return psi;
}

Complex vggc_exponent(const Vector& theta, const Vector& drift,
                      const BrownianSpec& b, const ThorinAtomicMeasure& u) {
  const Index n = b.dim();
  require_dim(theta, n, "vggc_exponent.theta");
  require_dim(drift, n, "vggc_exponent.drift");
  if (u.dim != n) throw SpecError("vggc_exponent: Thorin measure dimension mismatch");
  Complex psi = kI * time_product_drift(drift, b.mu).dot(theta) -
                0.5 * quad_form(theta, time_product_cov(drift, b.sigma));
  for (const ThorinAtom& atom : u.atoms) {
    const double un2 = atom.location.squaredNorm();
    const Vector um = atom.location.cwiseProduct(b.mu);
    const Complex arg =
        un2 - kI * um.dot(theta) +
        0.5 * quad_form(theta, time_product_cov(atom.location, b.sigma));
    psi -= atom.weight * log_guarded(arg / un2);
  }
  return psi;
}

Complex weak_pair_exponent(const Vector& theta_time, const Vector& theta_space,
                           const SubordinatorSpec& t, const BrownianSpec& b,
                           ExponentMethod method) {
  const Index n = t.dim();
  if (b.dim() != n) throw SpecError("weak_pair_exponent: spec dimensions differ");
  require_dim(theta_time, n, "weak_pair_exponent.theta_time");
  require_dim(theta_space, n, "weak_pair_exponent.theta_space");

  // Deterministic drift part: time moves linearly, the subordinate picks up
  // the Brownian characteristics evaluated at drift (.) per unit time.
  Complex psi = kI * t.drift.dot(theta_time) +
                kI * time_product_drift(t.drift, b.mu).dot(theta_space) -
                0.5 * quad_form(theta_space, time_product_cov(t.drift, b.sigma));

  for (const GammaRay& ray : t.rays) {
    // E exp(i<theta_1, gu> + i<theta_2, X(gu)>) = exp(-z g) with
    // z = -i<theta_1,u> - i<u.mu, theta_2> + 0.5 ||theta_2||^2_{u.sigma};
    // integrating (e^{-zg}-1) against the gamma Levy density gives the
    // Frullani logarithm -shape * log((rate + z)/rate).
    const Vector um = ray.direction.cwiseProduct(b.mu);
    const Complex z =
        -kI * theta_time.dot(ray.direction) - kI * um.dot(theta_space) +
        0.5 * quad_form(theta_space, time_product_cov(ray.direction, b.sigma));
    if (method == ExponentMethod::Closed) {
      psi -= ray.shape * log_guarded((ray.rate + z) / ray.rate);
    } else {
      const double gmax = gamma_ray_cutoff(ray.shape, ray.rate);
      const auto integrand = [&](double g) -> Complex {
        return cexpm1(-z * g) * ray.shape * std::exp(-ray.rate * g) / g;
      };
      psi += integrate_adaptive(integrand, 0.0, gmax, 1e-10);
    }
  }

  for (const JumpAtom& atom : t.atoms) {
    psi += atom.intensity *
           cexpm1(kI * theta_time.dot(atom.point) +
                  multitime_exponent(atom.point, theta_space, b));
  }
  return psi;
}

Complex subordinator_exponent(const Vector& theta, const SubordinatorSpec& t) {
  require_dim(theta, t.dim(), "subordinator_exponent.theta");
  const Complex kIl(0.0, 1.0);
  Complex psi = kIl * t.drift.dot(theta);
  for (const GammaRay& ray : t.rays) {
    psi -= ray.shape *
           log_guarded((ray.rate - kIl * theta.dot(ray.direction)) / ray.rate);
  }
  for (const JumpAtom& atom : t.atoms) {
    psi += atom.intensity * cexpm1(kIl * theta.dot(atom.point));
  }
  return psi;
}

double subordinator_laplace(const Vector& lambda, const SubordinatorSpec& t) {
  require_dim(lambda, t.dim(), "subordinator_laplace.lambda");
  for (Index i = 0; i < lambda.size(); ++i) {
    if (!(lambda[i] >= 0.0)) {
      throw SpecError("subordinator_laplace: lambda must be componentwise >= 0");
    }
  }
  double lam = t.drift.dot(lambda);
  for (const GammaRay& ray : t.rays) {
    lam += ray.shape * std::log1p(lambda.dot(ray.direction) / ray.rate);
  }
  for (const JumpAtom& atom : t.atoms) {
    lam += atom.intensity * -std::expm1(-lambda.dot(atom.point));
  }
  return lam;
}

double thorin_laplace(const Vector& lambda, const Vector& drift,
                      const ThorinAtomicMeasure& u) {
  if (drift.size() != u.dim) throw SpecError("thorin_laplace: dimension mismatch");
  require_dim(lambda, u.dim, "thorin_laplace.lambda");
  for (Index i = 0; i < lambda.size(); ++i) {
    if (!(lambda[i] >= 0.0)) {
      throw SpecError("thorin_laplace: lambda must be componentwise >= 0");
    }
  }
  double lam = drift.dot(lambda);
  for (const ThorinAtom& atom : u.atoms) {
    lam += atom.weight *
           std::log1p(lambda.dot(atom.location) / atom.location.squaredNorm());
  }
  return lam;
}

}  // namespace weaklevy
