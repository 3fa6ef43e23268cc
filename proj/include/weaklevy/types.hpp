#pragma once

// Core parameter types for weakly subordinated Brownian motions: Brownian
// marks, multivariate gamma-type subordinators built from gamma rays and
// Poisson atoms, Thorin atomic measures, and the WVaG / VG parameter packs.
//
// Conventions used throughout the library:
//  * dimension indices are 0-based; an index set J is a sorted list of
//    0-based coordinates,
//  * covariance matrices are validated as stored (exact symmetry) and
//    positive semidefinite up to a relative jitter of 1e-10,
//  * subordinators live on [0,inf)^n: drifts, ray directions and atom
//    points are componentwise nonnegative and nonzero where required.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace weaklevy {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Complex = std::complex<double>;
using Index = Eigen::Index;

// Invalid model input (dimension mismatch, constraint violation, bad JSON).
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure (branch guard, non-convergent quadrature, conditioning).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relative diagonal jitter used by all PSD checks and factorizations.
inline constexpr double kPsdJitterRel = 1e-10;

// Condition-number guard applied whenever a covariance is inverted.
inline constexpr double kMaxCondition = 1e12;

bool is_symmetric(const Matrix& m);          // exact, as stored
double min_eigenvalue(const Matrix& m);      // symmetric input assumed
bool is_psd(const Matrix& m);                // symmetric + eigs >= -jitter
void require_covariance(const Matrix& m, const char* what);
void require_finite(const Vector& v, const char* what);

// Inverse quadratic forms of a strictly positive definite covariance with a
// condition-number guard; used wherever a Levy density divides by sigma.
class CovarianceForm {
 public:
  explicit CovarianceForm(const Matrix& sigma, const char* what = "covariance");

  Index dim() const { return vals_.size(); }
  double det() const { return det_; }
  // x' sigma^{-1} x
  double quad(const Vector& x) const;
  // a' sigma^{-1} y
  double bilinear(const Vector& a, const Vector& y) const;

 private:
  Matrix vecs_;
  Vector vals_;
  double det_ = 1.0;
};

// A with A A' = m for positive semidefinite m (eigenvalues clamped at zero
// within the jitter tolerance); suitable for sampling Gaussian marks with
// possibly singular covariances.
Matrix psd_factor(const Matrix& m, const char* what = "covariance");

// Brownian motion with drift mu and covariance sigma per unit time.
struct BrownianSpec {
  Vector mu;
  Matrix sigma;

  Index dim() const { return mu.size(); }
  static BrownianSpec make(Vector mu, Matrix sigma);
};

// Gamma ray: jumps g*direction with Levy density shape * exp(-rate*g)/g.
struct GammaRay {
  Vector direction;  // componentwise >= 0, not identically zero
  double shape = 1.0;
  double rate = 1.0;
};

// Fixed jump "point" arriving at Poisson rate "intensity".
struct JumpAtom {
  Vector point;  // componentwise >= 0, not identically zero
  double intensity = 1.0;
};

// Driftful finite-activity-per-ray subordinator: deterministic drift plus
// independent gamma rays plus compound-Poisson atoms.
struct SubordinatorSpec {
  Vector drift;
  std::vector<GammaRay> rays;
  std::vector<JumpAtom> atoms;

  Index dim() const { return drift.size(); }
  static SubordinatorSpec make(Vector drift, std::vector<GammaRay> rays,
                               std::vector<JumpAtom> atoms);
  static SubordinatorSpec deterministic(Vector drift);
};

// Atom of a Thorin measure: location in [0,inf)^n \ {0} with positive weight.
struct ThorinAtom {
  Vector location;
  double weight = 1.0;
};

// Finitely supported Thorin measure of a generalised gamma convolution.
struct ThorinAtomicMeasure {
  Index dim = 0;
  std::vector<ThorinAtom> atoms;

  static ThorinAtomicMeasure make(Index dim, std::vector<ThorinAtom> atoms);
};

// Variance gamma parameter pack: subordination of BM^n(mu, sigma) by a
// standard gamma clock of rate b.
struct VGParams {
  double b = 1.0;
  Vector mu;
  Matrix sigma;

  Index dim() const { return mu.size(); }
  static VGParams make(double b, Vector mu, Matrix sigma);
};

// Weak variance alpha-gamma parameter pack.  beta_k = (b - a*alpha_k)/alpha_k
// is derived during validation; the constraint b > a*alpha_k is strict.
struct WVaGParams {
  double a = 1.0;
  double b = 1.0;
  Vector alpha;
  Vector mu;
  Matrix sigma;
  Vector beta;  // filled by validate_wvag

  Index dim() const { return alpha.size(); }
};

WVaGParams validate_wvag(double a, double b, Vector alpha, Vector mu,
                         Matrix sigma);
WVaGParams validate_wvag(WVaGParams p);

// Finite measure given by weighted points; used for the jump part of a
// multivariate time when forming time products and compensation terms.
struct MassAtom {
  Vector point;
  double mass = 1.0;
};

struct FiniteAtomicMeasure {
  Index dim = 0;
  std::vector<MassAtom> atoms;

  static FiniteAtomicMeasure make(Index dim, std::vector<MassAtom> atoms);
  // Sorts atoms lexicographically, merges duplicates, drops zero mass.
  FiniteAtomicMeasure canonical() const;
};

// Characteristics of the joint pair Z = (T, X o T) as a 2n-dim Levy process:
// drift (m1, m2), Gaussian covariance with only the lower-right block
// drift_t (.) sigma populated, and a structural tag describing the Levy
// measure (rays/atoms marked by the Gaussian transition kernel).
struct WeakPairCharacteristics {
  Vector m1;     // time components
  Vector m2;     // space components
  Matrix theta;  // 2n x 2n
  std::string measure_description;
};

// Index-set helpers.  J entries are 0-based, unique, within [0, n).
void require_index_set(const std::vector<int>& J, Index n);

// Coordinate projections pi_J: zero out coordinates outside J.
Vector project_vector(const std::vector<int>& J, const Vector& x);
Matrix project_matrix(const std::vector<int>& J, const Matrix& m);

BrownianSpec project_spec(const std::vector<int>& J, const BrownianSpec& b);
SubordinatorSpec project_spec(const std::vector<int>& J,
                              const SubordinatorSpec& t);
// Thorin atoms are rescaled along the projected direction so that the
// projected measure generates the projection of the original subordinator
// (the gamma rate ||u||^2 of the induced ray must be preserved).
ThorinAtomicMeasure project_spec(const std::vector<int>& J,
                                 const ThorinAtomicMeasure& u);

}  // namespace weaklevy
