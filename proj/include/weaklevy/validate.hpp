#pragma once

// Statistical reconciliation of Monte Carlo samples against analytic laws:
// empirical characteristic functions with studentized CLT bands, two-sample
// ECF comparisons, and mean/covariance tests with delta-method standard
// errors.  All reductions are serial and deterministic.

#include <functional>
#include <vector>

#include "weaklevy/moments.hpp"
#include "weaklevy/simulate.hpp"
#include "weaklevy/types.hpp"

namespace weaklevy {

using ExponentFn = std::function<Complex(const Vector&)>;

// (1/N) sum_j exp(i <theta, row_j>).
Complex ecf(const Matrix& samples, const Vector& theta);

struct ECFReport {
  std::vector<Vector> theta_grid;
  std::vector<Complex> ecf_values;
  std::vector<Complex> analytic;   // exp(t * Psi(theta)); second-sample ECF
                                   // in the two-sample variant
  std::vector<double> studentized;
  double max_studentized = 0.0;
  double threshold = 4.0;
  bool pass = true;
};

// Compares the sample ECF against exp(t * exponent(theta)) on the grid.
// The CLT standard error sqrt((1-|phi|^2)/N) is floored at 1/sqrt(N).
ECFReport ecf_test(const Matrix& samples, const ExponentFn& exponent, double t,
                   const std::vector<Vector>& theta_grid,
                   double threshold = 4.0);

// Two-sample comparison: |ecf_A - ecf_B| / sqrt(1/N_A + 1/N_B).
ECFReport ecf_two_sample_test(const Matrix& samples_a, const Matrix& samples_b,
                              const std::vector<Vector>& theta_grid,
                              double threshold = 4.0);

struct MomentTestReport {
  Vector sample_mean;
  Matrix sample_cov;   // unnormalized maximum-likelihood covariance (1/N)
  Vector analytic_mean;
  Matrix analytic_cov;
  Vector mean_studentized;
  Matrix cov_studentized;
  double max_studentized = 0.0;
  double threshold = 4.0;
  bool pass = true;
};

// Studentizes sample mean and covariance entries of joint rows (T, Y)
// against the analytic per-unit-time report scaled to horizon t.  Entries
// whose estimated standard error vanishes must match exactly.
MomentTestReport moment_test(const Matrix& samples, const MomentReport& report,
                             double t, double threshold = 4.0);

// ecf_test of coordinate k against a univariate VG law.
ECFReport marginal_vg_test(const Matrix& samples, Index k, const VGParams& p,
                           double t, const std::vector<double>& theta_grid,
                           double threshold = 4.0);

// Tensor grid {-3,-1.5,0.5,1.5,3}^min(n,2) over the first coordinates,
// extended by the same values on every axis; exact duplicates removed.
std::vector<Vector> standard_theta_grid(Index n);

// Sample matrices extracted from a PathSample at a fixed grid step:
// rows are paths; columns are T then Y (joint), or one block alone.
Matrix joint_samples_at(const PathSample& sample, Index step);
Matrix t_samples_at(const PathSample& sample, Index step);
Matrix y_samples_at(const PathSample& sample, Index step);

}  // namespace weaklevy
