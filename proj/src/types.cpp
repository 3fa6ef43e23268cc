#include "weaklevy/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace weaklevy {

namespace {

void require_nonnegative(const Vector& v, const char* what) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0)) {
      throw SpecError(std::string(what) + ": components must be >= 0");
    }
  }
}

bool is_zero(const Vector& v) { return (v.array() == 0.0).all(); }

}  // namespace

bool is_symmetric(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < i; ++j) {
      if (m(i, j) != m(j, i)) return false;
    }
  }
  return m.allFinite();
}

double min_eigenvalue(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_psd(const Matrix& m) {
  if (!is_symmetric(m)) return false;
  if (m.rows() == 0) return true;
  const double scale = m.diagonal().cwiseAbs().maxCoeff();
  return min_eigenvalue(m) >= -kPsdJitterRel * std::max(scale, 1.0);
}

void require_covariance(const Matrix& m, const char* what) {
  if (!is_symmetric(m)) {
    throw SpecError(std::string(what) + ": covariance must be symmetric as stored");
  }
  if (!is_psd(m)) {
    throw SpecError(std::string(what) + ": covariance must be positive semidefinite");
  }
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw SpecError(std::string(what) + ": entries must be finite");
  }
}

CovarianceForm::CovarianceForm(const Matrix& sigma, const char* what) {
  if (!is_symmetric(sigma)) {
    throw SpecError(std::string(what) + ": matrix must be symmetric as stored");
  }
  if (sigma.rows() == 0) throw SpecError(std::string(what) + ": empty matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
  vals_ = es.eigenvalues();
  vecs_ = es.eigenvectors();
  const double lmax = vals_.maxCoeff();
  const double lmin = vals_.minCoeff();
  if (!(lmin > 0.0) || lmax / lmin > kMaxCondition) {
    throw SpecError(std::string(what) +
                    ": singular or ill-conditioned covariance (condition-number guard 1e12)");
  }
  det_ = vals_.prod();
}

double CovarianceForm::quad(const Vector& x) const {
  const Vector w = vecs_.transpose() * x;
  return (w.array().square() / vals_.array()).sum();
}

double CovarianceForm::bilinear(const Vector& a, const Vector& y) const {
  const Vector wa = vecs_.transpose() * a;
  const Vector wy = vecs_.transpose() * y;
  return (wa.array() * wy.array() / vals_.array()).sum();
}

Matrix psd_factor(const Matrix& m, const char* what) {
  if (!is_symmetric(m)) {
    throw SpecError(std::string(what) + ": matrix must be symmetric as stored");
  }
  if (m.rows() == 0) return m;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const double scale = std::max(m.diagonal().cwiseAbs().maxCoeff(), 1.0);
  Vector lam = es.eigenvalues();
  for (Index i = 0; i < lam.size(); ++i) {
    if (lam[i] < -kPsdJitterRel * scale) {
      throw SpecError(std::string(what) + ": matrix is not positive semidefinite");
    }
    lam[i] = std::max(lam[i], 0.0);
  }
  return es.eigenvectors() * lam.cwiseSqrt().asDiagonal();
}

BrownianSpec BrownianSpec::make(Vector mu, Matrix sigma) {
  require_finite(mu, "BrownianSpec.mu");
  if (sigma.rows() != mu.size() || sigma.cols() != mu.size()) {
    throw SpecError("BrownianSpec: sigma must be n x n");
  }
  require_covariance(sigma, "BrownianSpec.sigma");
  return BrownianSpec{std::move(mu), std::move(sigma)};
}

SubordinatorSpec SubordinatorSpec::make(Vector drift,
                                        std::vector<GammaRay> rays,
                                        std::vector<JumpAtom> atoms) {
  const Index n = drift.size();
  require_finite(drift, "SubordinatorSpec.drift");
  require_nonnegative(drift, "SubordinatorSpec.drift");
  for (const GammaRay& r : rays) {
    if (r.direction.size() != n) {
      throw SpecError("GammaRay: direction dimension mismatch");
    }
    require_finite(r.direction, "GammaRay.direction");
    require_nonnegative(r.direction, "GammaRay.direction");
    if (is_zero(r.direction)) throw SpecError("GammaRay: direction must be nonzero");
    if (!(r.shape > 0.0) || !(r.rate > 0.0)) {
      throw SpecError("GammaRay: shape and rate must be positive");
    }
  }
  for (const JumpAtom& a : atoms) {
    if (a.point.size() != n) throw SpecError("JumpAtom: point dimension mismatch");
    require_finite(a.point, "JumpAtom.point");
    require_nonnegative(a.point, "JumpAtom.point");
    if (is_zero(a.point)) throw SpecError("JumpAtom: point must be nonzero");
    if (!(a.intensity > 0.0)) throw SpecError("JumpAtom: intensity must be positive");
  }
  return SubordinatorSpec{std::move(drift), std::move(rays), std::move(atoms)};
}

SubordinatorSpec SubordinatorSpec::deterministic(Vector drift) {
  return make(std::move(drift), {}, {});
}

ThorinAtomicMeasure ThorinAtomicMeasure::make(Index dim,
                                              std::vector<ThorinAtom> atoms) {
  if (dim <= 0) throw SpecError("ThorinAtomicMeasure: dim must be positive");
  for (const ThorinAtom& a : atoms) {
    if (a.location.size() != dim) {
      throw SpecError("ThorinAtom: location dimension mismatch");
    }
    require_finite(a.location, "ThorinAtom.location");
    require_nonnegative(a.location, "ThorinAtom.location");
    if (is_zero(a.location)) throw SpecError("ThorinAtom: location must be nonzero");
    if (!(a.weight > 0.0)) throw SpecError("ThorinAtom: weight must be positive");
  }
  return ThorinAtomicMeasure{dim, std::move(atoms)};
}

VGParams VGParams::make(double b, Vector mu, Matrix sigma) {
  if (!(b > 0.0)) throw SpecError("VGParams: b must be positive");
  require_finite(mu, "VGParams.mu");
  if (sigma.rows() != mu.size() || sigma.cols() != mu.size()) {
    throw SpecError("VGParams: sigma must be n x n");
  }
  require_covariance(sigma, "VGParams.sigma");
  return VGParams{b, std::move(mu), std::move(sigma)};
}

WVaGParams validate_wvag(double a, double b, Vector alpha, Vector mu,
                         Matrix sigma) {
  WVaGParams p;
  p.a = a;
  p.b = b;
  p.alpha = std::move(alpha);
  p.mu = std::move(mu);
  p.sigma = std::move(sigma);
  return validate_wvag(std::move(p));
}

WVaGParams validate_wvag(WVaGParams p) {
  const Index n = p.alpha.size();
  if (n < 2) throw SpecError("WVaGParams: dimension must be >= 2");
  if (!(p.a > 0.0) || !(p.b > 0.0)) {
    throw SpecError("WVaGParams: a and b must be positive");
  }
  require_finite(p.alpha, "WVaGParams.alpha");
  require_finite(p.mu, "WVaGParams.mu");
  if (p.mu.size() != n) throw SpecError("WVaGParams: mu dimension mismatch");
  if (p.sigma.rows() != n || p.sigma.cols() != n) {
    throw SpecError("WVaGParams: sigma must be n x n");
  }
  require_covariance(p.sigma, "WVaGParams.sigma");
  p.beta.resize(n);
  for (Index k = 0; k < n; ++k) {
    if (!(p.alpha[k] > 0.0)) throw SpecError("WVaGParams: alpha must be positive");
    if (!(p.b > p.a * p.alpha[k])) {
      std::ostringstream os;
      os << "WVaGParams: require b > a*alpha_k strictly (k=" << k
         << ", b=" << p.b << ", a*alpha_k=" << p.a * p.alpha[k] << ")";
      throw SpecError(os.str());
    }
    p.beta[k] = (p.b - p.a * p.alpha[k]) / p.alpha[k];
  }
  return p;
}

FiniteAtomicMeasure FiniteAtomicMeasure::make(Index dim,
                                              std::vector<MassAtom> atoms) {
  if (dim <= 0) throw SpecError("FiniteAtomicMeasure: dim must be positive");
  for (const MassAtom& a : atoms) {
    if (a.point.size() != dim) {
      throw SpecError("MassAtom: point dimension mismatch");
    }
    require_finite(a.point, "MassAtom.point");
    if (!(a.mass >= 0.0)) throw SpecError("MassAtom: mass must be >= 0");
  }
  return FiniteAtomicMeasure{dim, std::move(atoms)};
}

FiniteAtomicMeasure FiniteAtomicMeasure::canonical() const {
  std::vector<MassAtom> sorted = atoms;
  std::sort(sorted.begin(), sorted.end(),
            [](const MassAtom& x, const MassAtom& y) {
              for (Index i = 0; i < x.point.size(); ++i) {
                if (x.point[i] != y.point[i]) return x.point[i] < y.point[i];
              }
              return false;
            });
  std::vector<MassAtom> merged;
  for (const MassAtom& a : sorted) {
    if (a.mass == 0.0) continue;
    if (!merged.empty() && (merged.back().point.array() == a.point.array()).all()) {
      merged.back().mass += a.mass;
    } else {
      merged.push_back(a);
    }
  }
  return FiniteAtomicMeasure{dim, std::move(merged)};
}

void require_index_set(const std::vector<int>& J, Index n) {
  if (J.empty()) throw SpecError("index set J must be nonempty");
  for (std::size_t i = 0; i < J.size(); ++i) {
    if (J[i] < 0 || J[i] >= n) throw SpecError("index set J out of range");
    if (i > 0 && J[i] <= J[i - 1]) {
      throw SpecError("index set J must be strictly increasing");
    }
  }
}

Vector project_vector(const std::vector<int>& J, const Vector& x) {
  require_index_set(J, x.size());
  Vector out = Vector::Zero(x.size());
  for (int j : J) out[j] = x[j];
  return out;
}

Matrix project_matrix(const std::vector<int>& J, const Matrix& m) {
  require_index_set(J, m.rows());
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (int j : J) {
    for (int k : J) out(j, k) = m(j, k);
  }
  return out;
}

BrownianSpec project_spec(const std::vector<int>& J, const BrownianSpec& b) {
  return BrownianSpec{project_vector(J, b.mu), project_matrix(J, b.sigma)};
}

SubordinatorSpec project_spec(const std::vector<int>& J,
                              const SubordinatorSpec& t) {
  SubordinatorSpec out;
  out.drift = project_vector(J, t.drift);
  for (const GammaRay& r : t.rays) {
    Vector dir = project_vector(J, r.direction);
    if (is_zero(dir)) continue;
    out.rays.push_back(GammaRay{std::move(dir), r.shape, r.rate});
  }
  for (const JumpAtom& a : t.atoms) {
    Vector p = project_vector(J, a.point);
    if (is_zero(p)) continue;
    out.atoms.push_back(JumpAtom{std::move(p), a.intensity});
  }
  return out;
}

ThorinAtomicMeasure project_spec(const std::vector<int>& J,
                                 const ThorinAtomicMeasure& u) {
  ThorinAtomicMeasure out;
  out.dim = u.dim;
  for (const ThorinAtom& a : u.atoms) {
    Vector p = project_vector(J, a.location);
    const double pn2 = p.squaredNorm();
    if (pn2 == 0.0) continue;
    // Rescale so the induced gamma ray keeps its radial law: a Thorin atom
    // at location v produces jumps along v with gamma rate ||v||^2;
    // projecting the subordinator keeps the original rate while shortening
    // the direction, so the atom moves to ||u||^2 * pi_J(u) / ||pi_J(u)||^2.
    out.atoms.push_back(ThorinAtom{(a.location.squaredNorm() / pn2) * p, a.weight});
  }
  return out;
}

}  // namespace weaklevy
