#include "weaklevy/levy_measure.hpp"

#include <cmath>
#include <memory>

#include "weaklevy/special.hpp"
#include "weaklevy/time_algebra.hpp"

namespace weaklevy {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

double vg_density_core(double total_mass, const Vector& tilt, double bessel_c,
                       const CovarianceForm& form, const Vector& v) {
  const Index n = form.dim();
  const double r2 = form.quad(v);
  if (!(r2 > 0.0)) throw SpecError("vg_levy_density: evaluation at v = 0");
  const double r = std::sqrt(r2);
  const double pref =
      2.0 * total_mass /
      (std::pow(kTwoPi, 0.5 * n) * std::sqrt(form.det()) * std::pow(r2, 0.5 * n));
  return pref * std::exp(form.bilinear(tilt, v)) *
         bessel_k_scaled(0.5 * n, bessel_c * r);
}

}  // namespace

double vg_levy_density(const Vector& v, const VGParams& p) {
  if (v.size() != p.dim()) throw SpecError("vg_levy_density: dimension mismatch");
  const CovarianceForm form(p.sigma, "vg_levy_density.sigma");
  const double c = std::sqrt(2.0 * p.b + form.quad(p.mu));
  return vg_density_core(p.b, p.mu, c, form, v);
}

SubordinatorSpec alpha_gamma_rays(const WVaGParams& p) {
  const WVaGParams q = validate_wvag(p);
  const Index n = q.dim();
  std::vector<GammaRay> rays;
  rays.push_back(GammaRay{q.alpha, q.a, q.b});
  for (Index k = 0; k < n; ++k) {
    Vector ek = Vector::Zero(n);
    ek[k] = 1.0;
    rays.push_back(GammaRay{std::move(ek), q.beta[k], q.b / q.alpha[k]});
  }
  return SubordinatorSpec::make(Vector::Zero(n), std::move(rays), {});
}

ThorinAtomicMeasure wvag_thorin_measure(const WVaGParams& p) {
  const WVaGParams q = validate_wvag(p);
  const Index n = q.dim();
  std::vector<ThorinAtom> atoms;
  atoms.push_back(ThorinAtom{(q.b / q.alpha.squaredNorm()) * q.alpha, q.a});
  for (Index k = 0; k < n; ++k) {
    Vector loc = Vector::Zero(n);
    loc[k] = q.b / q.alpha[k];
    atoms.push_back(ThorinAtom{std::move(loc), q.beta[k]});
  }
  return ThorinAtomicMeasure::make(n, std::move(atoms));
}

SubordinatorSpec thorin_to_rays(const Vector& drift,
                                const ThorinAtomicMeasure& u) {
  if (drift.size() != u.dim) throw SpecError("thorin_to_rays: dimension mismatch");
  std::vector<GammaRay> rays;
  rays.reserve(u.atoms.size());
  for (const ThorinAtom& a : u.atoms) {
    rays.push_back(GammaRay{a.location, a.weight, a.location.squaredNorm()});
  }
  return SubordinatorSpec::make(drift, std::move(rays), {});
}

ThorinAtom ray_to_thorin_atom(const GammaRay& r) {
  const double n2 = r.direction.squaredNorm();
  if (!(n2 > 0.0)) throw SpecError("ray_to_thorin_atom: zero direction");
  return ThorinAtom{(r.rate / n2) * r.direction, r.shape};
}

WvagLevyDecomposition wvag_levy_density(const WVaGParams& p) {
  const WVaGParams q = validate_wvag(p);
  const Index n = q.dim();

  WvagLevyDecomposition out;

  // Full-support part: variance gamma density with total mass a, drift
  // alpha.mu and covariance alpha.sigma, decaying at rate
  // (2b + ||alpha.mu||^2)^{1/2} in the Mahalanobis norm.
  {
    const Vector am = q.alpha.cwiseProduct(q.mu);
    auto form = std::make_shared<CovarianceForm>(
        time_product_cov(q.alpha, q.sigma), "wvag_levy_density.alpha_sigma");
    const double c = std::sqrt(2.0 * q.b + form->quad(am));
    const double a = q.a;
    out.full_support = [form, am, c, a, n](const Vector& y) {
      if (y.size() != n) throw SpecError("wvag full-support density: dimension mismatch");
      return vg_density_core(a, am, c, *form, y);
    };
  }

  // Axis parts: one-dimensional variance gamma tails
  //   f_k(y) = (beta_k/|y|) exp{(sqrt(alpha_k) mu_k y
  //            - |y| (2 b sigma_kk + alpha_k mu_k^2)^{1/2})/(sqrt(alpha_k) sigma_kk)}.
  for (Index k = 0; k < n; ++k) {
    const double skk = q.sigma(k, k);
    const double beta = q.beta[k];
    if (!(skk > 0.0)) {
      out.axis.push_back([k](double) -> double {
        throw SpecError("wvag axis density: sigma_kk = 0");
      });
      continue;
    }
    const double lin = q.mu[k] / skk;
    const double dec = std::sqrt(2.0 * q.b * skk + q.alpha[k] * q.mu[k] * q.mu[k]) /
                       (std::sqrt(q.alpha[k]) * skk);
    out.axis.push_back([beta, lin, dec](double y) {
      if (y == 0.0) throw SpecError("wvag axis density: evaluation at y = 0");
      return beta / std::abs(y) * std::exp(lin * y - dec * std::abs(y));
    });
  }
  return out;
}

double vggc_levy_density(const Vector& y, const std::vector<int>& J,
                         const BrownianSpec& b, const ThorinAtomicMeasure& u) {
  const Index n = b.dim();
  if (u.dim != n) throw SpecError("vggc_levy_density: dimension mismatch");
  if (y.size() != n) throw SpecError("vggc_levy_density: dimension mismatch");
  require_index_set(J, n);
  const Index m = static_cast<Index>(J.size());
  Vector yj(m);
  for (Index i = 0; i < m; ++i) {
    yj[i] = y[J[static_cast<std::size_t>(i)]];
    if (yj[i] == 0.0) {
      throw SpecError("vggc_levy_density: y must have nonzero J-coordinates");
    }
  }

  double total = 0.0;
  for (const ThorinAtom& atom : u.atoms) {
    // Only atoms whose support pattern is exactly J contribute to the
    // density on the J-subspace.
    bool matches = true;
    std::size_t ji = 0;
    for (Index k = 0; k < n && matches; ++k) {
      const bool in_j =
          ji < J.size() && J[ji] == static_cast<int>(k) && (++ji, true);
      if (in_j ? !(atom.location[k] > 0.0) : atom.location[k] != 0.0) {
        matches = false;
      }
    }
    if (!matches) continue;

    Matrix msub(m, m);
    Vector tilt(m);
    for (Index i = 0; i < m; ++i) {
      const int ki = J[static_cast<std::size_t>(i)];
      tilt[i] = atom.location[ki] * b.mu[ki];
      for (Index l = 0; l < m; ++l) {
        const int kl = J[static_cast<std::size_t>(l)];
        msub(i, l) = b.sigma(ki, kl) * std::min(atom.location[ki], atom.location[kl]);
      }
    }
    const CovarianceForm form(msub, "vggc_levy_density.(u.sigma)_J");
    const double c = std::sqrt(2.0 * atom.location.squaredNorm() + form.quad(tilt));
    const double r2 = form.quad(yj);
    const double r = std::sqrt(r2);
    const double pref = 2.0 * atom.weight /
                        (std::pow(kTwoPi, 0.5 * m) * std::sqrt(form.det()) *
                         std::pow(r2, 0.5 * m));
    total += pref * std::exp(form.bilinear(tilt, yj)) *
             bessel_k_scaled(0.5 * m, c * r);
  }
  return total;
}

const char* to_string(VariationClass c) {
  switch (c) {
    case VariationClass::FvDriftless:
      return "FV-driftless";
    case VariationClass::NotFv:
      return "notFV";
    case VariationClass::FvUnknown:
      return "FV-unknown";
  }
  return "unknown";
}

VariationClass classify_variation(const Vector& drift,
                                  const ThorinAtomicMeasure& u,
                                  bool sigma_invertible) {
  if (drift.size() != u.dim) throw SpecError("classify_variation: dimension mismatch");
  for (Index i = 0; i < drift.size(); ++i) {
    if (!(drift[i] >= 0.0)) throw SpecError("classify_variation: drift must be >= 0");
  }
  // A finitely supported Thorin measure always integrates ||u||^{-1/2}.
  if ((drift.array() == 0.0).all()) return VariationClass::FvDriftless;
  if (sigma_invertible) return VariationClass::NotFv;
  return VariationClass::FvUnknown;
}

}  // namespace weaklevy
