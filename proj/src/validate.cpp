#include "weaklevy/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weaklevy/charfn.hpp"

namespace weaklevy {

Complex ecf(const Matrix& samples, const Vector& theta) {
  const Index n_rows = samples.rows();
  if (n_rows < 1) throw SpecError("ecf: empty sample set");
  if (samples.cols() != theta.size()) {
    throw SpecError("ecf: sample and theta dimensions differ");
  }
  double re = 0.0, im = 0.0;
  for (Index j = 0; j < n_rows; ++j) {
    const double phase = samples.row(j).dot(theta);
    re += std::cos(phase);
    im += std::sin(phase);
  }
  const double inv_n = 1.0 / static_cast<double>(n_rows);
  return Complex(re * inv_n, im * inv_n);
}

namespace {

ECFReport ecf_report_against(const Matrix& samples,
                             const std::vector<Vector>& theta_grid,
                             const std::function<Complex(const Vector&)>& ref,
                             double se, double threshold) {
  ECFReport rep;
  rep.threshold = threshold;
  rep.theta_grid = theta_grid;
  rep.ecf_values.reserve(theta_grid.size());
  rep.analytic.reserve(theta_grid.size());
  rep.studentized.reserve(theta_grid.size());
  const double n = static_cast<double>(samples.rows());
  for (const Vector& theta : theta_grid) {
    const Complex emp = ecf(samples, theta);
    const Complex target = ref(theta);
    rep.ecf_values.push_back(emp);
    rep.analytic.push_back(target);
    double denom = se;
    if (se <= 0.0) {
      // One-sample case: CLT standard error floored at 1/sqrt(N).
      const double var = (1.0 - std::norm(target)) / n;
      denom = std::max(std::sqrt(std::max(var, 0.0)), 1.0 / std::sqrt(n));
    }
    const double stud = std::abs(emp - target) / denom;
    rep.studentized.push_back(stud);
    rep.max_studentized = std::max(rep.max_studentized, stud);
  }
  rep.pass = rep.max_studentized <= threshold;
  return rep;
}

}  // namespace

ECFReport ecf_test(const Matrix& samples, const ExponentFn& exponent, double t,
                   const std::vector<Vector>& theta_grid, double threshold) {
  for (const Vector& theta : theta_grid) {
    if (theta.size() != samples.cols()) {
      throw SpecError("ecf_test: grid and sample dimensions differ");
    }
  }
  return ecf_report_against(
      samples, theta_grid,
      [&](const Vector& theta) { return std::exp(t * exponent(theta)); },
      /*se=*/0.0, threshold);
}

ECFReport ecf_two_sample_test(const Matrix& samples_a, const Matrix& samples_b,
                              const std::vector<Vector>& theta_grid,
                              double threshold) {
  if (samples_a.cols() != samples_b.cols()) {
    throw SpecError("ecf_two_sample_test: sample dimensions differ");
  }
  if (samples_a.rows() < 1 || samples_b.rows() < 1) {
    throw SpecError("ecf_two_sample_test: empty sample set");
  }
  const double se = std::sqrt(1.0 / static_cast<double>(samples_a.rows()) +
                              1.0 / static_cast<double>(samples_b.rows()));
  return ecf_report_against(
      samples_a, theta_grid,
      [&](const Vector& theta) { return ecf(samples_b, theta); }, se,
      threshold);
}

MomentTestReport moment_test(const Matrix& samples, const MomentReport& report,
                             double t, double threshold) {
  const Index n_rows = samples.rows();
  if (n_rows < 2) throw SpecError("moment_test: need at least two samples");
  const Index n = report.mean_t.size();
  if (samples.cols() != 2 * n) {
    throw SpecError("moment_test: expected joint (T, Y) columns");
  }

  MomentTestReport out;
  out.threshold = threshold;
  out.analytic_mean = Vector(2 * n);
  out.analytic_mean << t * report.mean_t, t * report.mean_y;
  out.analytic_cov = Matrix(2 * n, 2 * n);
  out.analytic_cov.topLeftCorner(n, n) = t * report.cov_t;
  out.analytic_cov.bottomRightCorner(n, n) = t * report.cov_y;
  // cov_yt(k,l) = Cov(Y_k, T_l); the top-right block is Cov(T_k, Y_l).
  out.analytic_cov.bottomLeftCorner(n, n) = t * report.cov_yt;
  out.analytic_cov.topRightCorner(n, n) = t * report.cov_yt.transpose();

  const double dn = static_cast<double>(n_rows);
  out.sample_mean = samples.colwise().mean();
  Matrix centered = samples.rowwise() - out.sample_mean.transpose();
  out.sample_cov = (centered.transpose() * centered) / dn;

  out.mean_studentized = Vector(2 * n);
  out.cov_studentized = Matrix(2 * n, 2 * n);
  double max_stud = 0.0;
  for (Index j = 0; j < 2 * n; ++j) {
    const double sd = std::sqrt(std::max(out.sample_cov(j, j), 0.0));
    const double diff = out.sample_mean[j] - out.analytic_mean[j];
    double stud;
    if (sd == 0.0) {
      stud = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      stud = std::abs(diff) / (sd / std::sqrt(dn));
    }
    out.mean_studentized[j] = stud;
    max_stud = std::max(max_stud, stud);
  }
  for (Index j = 0; j < 2 * n; ++j) {
    for (Index l = 0; l < 2 * n; ++l) {
      // Delta method: Var(S_jl) ~ (m22 - S_jl^2)/N with the centered
      // fourth mixed moment m22.
      double m22 = 0.0;
      for (Index r = 0; r < n_rows; ++r) {
        const double cj = centered(r, j);
        const double cl = centered(r, l);
        m22 += cj * cj * cl * cl;
      }
      m22 /= dn;
      const double s = out.sample_cov(j, l);
      const double var = std::max(m22 - s * s, 0.0) / dn;
      const double se = std::sqrt(var);
      const double diff = out.sample_cov(j, l) - out.analytic_cov(j, l);
      double stud;
      if (se == 0.0) {
        stud = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      } else {
        stud = std::abs(diff) / se;
      }
      out.cov_studentized(j, l) = stud;
      max_stud = std::max(max_stud, stud);
    }
  }
  out.max_studentized = max_stud;
  out.pass = max_stud <= threshold;
  return out;
}

ECFReport marginal_vg_test(const Matrix& samples, Index k, const VGParams& p,
                           double t, const std::vector<double>& theta_grid,
                           double threshold) {
  if (k < 0 || k >= samples.cols()) {
    throw SpecError("marginal_vg_test: coordinate index out of range");
  }
  const VGParams q = VGParams::make(p.b, p.mu, p.sigma);
  if (q.dim() != 1) {
    throw SpecError("marginal_vg_test: VG parameters must be univariate");
  }
  std::vector<Vector> grid;
  grid.reserve(theta_grid.size());
  for (double v : theta_grid) {
    Vector theta(1);
    theta[0] = v;
    grid.push_back(theta);
  }
  const Matrix column = samples.col(k);
  return ecf_test(
      column, [&](const Vector& theta) { return vg_exponent(theta, q); }, t,
      grid, threshold);
}

std::vector<Vector> standard_theta_grid(Index n) {
  if (n < 1) throw SpecError("standard_theta_grid: dimension must be >= 1");
  static const double base[5] = {-3.0, -1.5, 0.5, 1.5, 3.0};
  std::vector<Vector> grid;
  const Index m = std::min<Index>(n, 2);
  if (m == 1) {
    for (double v : base) {
      Vector theta = Vector::Zero(n);
      theta[0] = v;
      grid.push_back(theta);
    }
  } else {
    for (double v0 : base) {
      for (double v1 : base) {
        Vector theta = Vector::Zero(n);
        theta[0] = v0;
        theta[1] = v1;
        grid.push_back(theta);
      }
    }
  }
  for (Index k = 0; k < n; ++k) {
    for (double v : base) {
      Vector theta = Vector::Zero(n);
      theta[k] = v;
      bool duplicate = false;
      for (const Vector& existing : grid) {
        if (existing == theta) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) grid.push_back(theta);
    }
  }
  return grid;
}

namespace {

Matrix block_samples(const PathSample& sample, Index step, bool take_t,
                     bool take_y) {
  if (step < 0 || step >= sample.n_steps) {
    throw SpecError("path sample: step index out of range");
  }
  const Index n = sample.dim;
  const Index cols = (take_t ? n : 0) + (take_y ? n : 0);
  Matrix out(sample.n_paths, cols);
  for (Index p = 0; p < sample.n_paths; ++p) {
    Index c = 0;
    if (take_t) {
      for (Index k = 0; k < n; ++k) out(p, c++) = sample.t_at(p, step, k);
    }
    if (take_y) {
      for (Index k = 0; k < n; ++k) out(p, c++) = sample.y_at(p, step, k);
    }
  }
  return out;
}

}  // namespace

Matrix joint_samples_at(const PathSample& sample, Index step) {
  return block_samples(sample, step, true, true);
}

Matrix t_samples_at(const PathSample& sample, Index step) {
  return block_samples(sample, step, true, false);
}

Matrix y_samples_at(const PathSample& sample, Index step) {
  return block_samples(sample, step, false, true);
}

}  // namespace weaklevy
