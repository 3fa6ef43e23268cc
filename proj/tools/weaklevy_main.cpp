// weaklevy: command-line front end for weakly subordinated Levy processes.
//
// Subcommands:
//   charfn   -- characteristic exponents on a theta grid (CSV out)
//   density  -- Levy densities on a point grid (CSV out)
//   moments  -- per-unit-time mean/covariance report (JSON out)
//   simulate -- path sampling (CSV or binary+sidecar out)
//   validate -- statistical reconciliation of sampled paths (JSON out)
//   classify -- path-variation classification (stdout)
//
// Exit codes: 0 success, 1 usage error, 2 validation/spec error,
// 3 numerical failure, 4 statistical test failure (validate only).

#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "weaklevy/charfn.hpp"
#include "weaklevy/levy_measure.hpp"
#include "weaklevy/model_json.hpp"
#include "weaklevy/moments.hpp"
#include "weaklevy/path_io.hpp"
#include "weaklevy/simulate.hpp"
#include "weaklevy/types.hpp"
#include "weaklevy/validate.hpp"

namespace {

using nlohmann::json;
using namespace weaklevy;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSpec = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitStatistical = 4;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v + 0.0);  // maps -0 to 0
  return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SpecError("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw NumericError("short write to '" + path + "'");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open input file '" + path + "'");
  try {
    json doc;
    in >> doc;
    return doc;
  } catch (const json::exception& e) {
    throw SpecError("invalid JSON in '" + path + "': " + e.what());
  }
}

// A grid file is a JSON array of rows; each row is either an array of
// `width` numbers or, when width == 1, a bare number.
std::vector<Vector> load_vector_grid(const std::string& path, Index width,
                                     const char* what) {
  const json doc = load_json_file(path);
  if (!doc.is_array()) {
    throw SpecError(std::string(what) + " file must be a JSON array");
  }
  std::vector<Vector> rows;
  rows.reserve(doc.size());
  for (const auto& entry : doc) {
    Vector row;
    if (entry.is_number()) {
      row = Vector::Constant(1, entry.get<double>());
    } else if (entry.is_array()) {
      row = Vector(static_cast<Index>(entry.size()));
      for (Index k = 0; k < row.size(); ++k) {
        const auto& cell = entry[static_cast<std::size_t>(k)];
        if (!cell.is_number()) {
          throw SpecError(std::string(what) + " rows must contain numbers");
        }
        row[k] = cell.get<double>();
      }
    } else {
      throw SpecError(std::string(what) +
                      " rows must be numbers or arrays of numbers");
    }
    if (row.size() != width) {
      throw SpecError(std::string(what) + " row has length " +
                      std::to_string(row.size()) + ", expected " +
                      std::to_string(width));
    }
    require_finite(row, what);
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

// The Y-marginal exponent of the model: closed WVaG/VGGC forms where they
// exist, otherwise the weak-pair exponent with the time frequency at zero.
Complex marginal_exponent(const ModelSpec& spec, const Vector& theta) {
  if (spec.kind == "wvag") return wvag_exponent(theta, spec.wvag);
  if (spec.kind == "vggc") {
    return vggc_exponent(theta, spec.drift, spec.brownian, spec.thorin);
  }
  return weak_pair_exponent(Vector::Zero(theta.size()), theta,
                            spec.subordinator, spec.brownian,
                            ExponentMethod::Closed);
}

Complex joint_exponent(const ModelSpec& spec, const Vector& theta) {
  const Index n = spec.dim();
  return weak_pair_exponent(theta.head(n), theta.tail(n), spec.subordinator,
                            spec.brownian, ExponentMethod::Closed);
}

int run_charfn(const std::string& model_path, const std::string& grid_path,
               bool joint, const std::string& out_path) {
  const ModelSpec spec = load_model_file(model_path);
  const Index n = spec.dim();
  const Index width = joint ? 2 * n : n;
  const std::vector<Vector> grid =
      load_vector_grid(grid_path, width, "theta grid");

  std::string csv;
  for (Index k = 0; k < width; ++k) {
    csv += "theta" + std::to_string(k + 1) + ",";
  }
  csv += "re,im\n";
  for (const Vector& theta : grid) {
    const Complex value =
        joint ? joint_exponent(spec, theta) : marginal_exponent(spec, theta);
    for (Index k = 0; k < width; ++k) csv += format_double(theta[k]) + ",";
    csv += format_double(value.real()) + "," + format_double(value.imag());
    csv += "\n";
  }
  write_text_file(out_path, csv);
  return kExitOk;
}

// Support pattern of a point: indices with nonzero coordinates.
std::vector<int> support_of(const Vector& y) {
  std::vector<int> J;
  for (Index k = 0; k < y.size(); ++k) {
    if (y[k] != 0.0) J.push_back(static_cast<int>(k));
  }
  return J;
}

int run_density(const std::string& model_path, const std::string& points_path,
                const std::string& out_path) {
  const ModelSpec spec = load_model_file(model_path);
  if (spec.kind != "wvag" && spec.kind != "vggc") {
    throw SpecError("density: closed-form Levy densities exist for wvag and "
                    "vggc models only");
  }
  const Index n = spec.dim();
  const std::vector<Vector> points =
      load_vector_grid(points_path, n, "points");

  WvagLevyDecomposition wvag_density;
  if (spec.kind == "wvag") wvag_density = wvag_levy_density(spec.wvag);

  std::string csv;
  for (Index k = 0; k < n; ++k) csv += "y" + std::to_string(k + 1) + ",";
  csv += "density\n";
  for (const Vector& y : points) {
    const std::vector<int> J = support_of(y);
    double value = 0.0;
    if (!J.empty()) {
      if (spec.kind == "wvag") {
        if (static_cast<Index>(J.size()) == n) {
          value = wvag_density.full_support(y);
        } else if (J.size() == 1) {
          value = wvag_density.axis[static_cast<std::size_t>(J[0])](y[J[0]]);
        }
        // Other support patterns carry no mass for a WVaG process.
      } else {
        value = vggc_levy_density(y, J, spec.brownian, spec.thorin);
      }
    }
    for (Index k = 0; k < n; ++k) csv += format_double(y[k]) + ",";
    csv += format_double(value) + "\n";
  }
  write_text_file(out_path, csv);
  return kExitOk;
}

MomentReport model_moments(const ModelSpec& spec) {
  if (spec.kind == "wvag") return wvag_moments(spec.wvag);
  return weak_bm_moments(spec.subordinator, spec.brownian);
}

int run_moments(const std::string& model_path, const std::string& out_path) {
  const ModelSpec spec = load_model_file(model_path);
  const MomentReport rep = model_moments(spec);
  json doc;
  doc["version"] = kSchemaVersion;
  doc["kind"] = "moments";
  doc["model"] = spec.kind;
  doc["perUnitTime"]["meanT"] = vector_to_json(rep.mean_t);
  doc["perUnitTime"]["covT"] = matrix_to_json(rep.cov_t);
  doc["perUnitTime"]["meanY"] = vector_to_json(rep.mean_y);
  doc["perUnitTime"]["covY"] = matrix_to_json(rep.cov_y);
  doc["perUnitTime"]["covYT"] = matrix_to_json(rep.cov_yt);
  write_text_file(out_path, doc.dump(2) + "\n");
  return kExitOk;
}

int run_simulate(const std::string& model_path, double t_max, Index steps,
                 Index n_paths, std::uint64_t seed, const std::string& scheme,
                 double epsilon, bool epsilon_given,
                 const std::string& out_path) {
  const ModelSpec spec = load_model_file(model_path);
  const Vector grid = uniform_grid(t_max, steps);
  const Scheme s = scheme_from_string(scheme);

  PathSample sample;
  switch (s) {
    case Scheme::Superposition:
      sample = sample_superposition(spec.subordinator, spec.brownian, grid,
                                    n_paths, seed);
      break;
    case Scheme::Marked: {
      const double eps =
          epsilon_given ? epsilon : default_epsilon(spec.subordinator);
      sample = sample_weak_marked(spec.subordinator, spec.brownian, grid,
                                  n_paths, eps, seed);
      break;
    }
    case Scheme::Strong:
      sample = sample_strong(spec.subordinator, spec.brownian, grid, n_paths,
                             seed);
      break;
  }

  const bool csv = out_path.size() >= 4 &&
                   out_path.compare(out_path.size() - 4, 4, ".csv") == 0;
  const bool bin = out_path.size() >= 4 &&
                   out_path.compare(out_path.size() - 4, 4, ".bin") == 0;
  if (csv) {
    write_paths_csv(sample, out_path);
  } else if (bin) {
    const std::string hash = hash_hex(fnv1a64(canonical_model_json(spec)));
    write_paths_binary(sample, out_path, hash);
  } else {
    throw SpecError("simulate: --out must end in .csv or .bin");
  }
  return kExitOk;
}

json ecf_report_to_json(const ECFReport& rep, const char* analytic_key) {
  json rows = json::array();
  for (std::size_t i = 0; i < rep.theta_grid.size(); ++i) {
    json row;
    row["theta"] = vector_to_json(rep.theta_grid[i]);
    row["ecf"] = {rep.ecf_values[i].real(), rep.ecf_values[i].imag()};
    row[analytic_key] = {rep.analytic[i].real(), rep.analytic[i].imag()};
    row["studentized"] = rep.studentized[i];
    rows.push_back(std::move(row));
  }
  json out;
  out["rows"] = std::move(rows);
  out["maxStudentized"] = rep.max_studentized;
  out["threshold"] = rep.threshold;
  out["pass"] = rep.pass;
  return out;
}

int run_validate(const std::string& model_path, const std::string& paths_path,
                 const std::string& out_path) {
  const ModelSpec spec = load_model_file(model_path);
  const std::string hash = hash_hex(fnv1a64(canonical_model_json(spec)));
  const PathSample sample = read_paths_binary(paths_path, hash);
  const Index n = spec.dim();
  if (sample.dim != n) {
    throw SpecError("validate: path dimension does not match the model");
  }

  const Index last = sample.n_steps - 1;
  const double t = sample.time_grid[sample.n_steps];
  const Matrix joint = joint_samples_at(sample, last);

  const ECFReport joint_rep = ecf_test(
      joint, [&spec](const Vector& theta) { return joint_exponent(spec, theta); },
      t, standard_theta_grid(2 * n));
  const MomentTestReport moment_rep = moment_test(joint, model_moments(spec), t);

  json doc;
  doc["version"] = kSchemaVersion;
  doc["kind"] = "validation";
  doc["model"] = spec.kind;
  doc["time"] = t;
  doc["nSamples"] = sample.n_paths;
  doc["scheme"] = to_string(sample.scheme);
  doc["joint"] = ecf_report_to_json(joint_rep, "analytic");

  json moments;
  moments["sampleMean"] = vector_to_json(moment_rep.sample_mean);
  moments["analyticMean"] = vector_to_json(moment_rep.analytic_mean);
  moments["sampleCov"] = matrix_to_json(moment_rep.sample_cov);
  moments["analyticCov"] = matrix_to_json(moment_rep.analytic_cov);
  moments["meanStudentized"] = vector_to_json(moment_rep.mean_studentized);
  moments["covStudentized"] = matrix_to_json(moment_rep.cov_studentized);
  moments["maxStudentized"] = moment_rep.max_studentized;
  moments["threshold"] = moment_rep.threshold;
  moments["pass"] = moment_rep.pass;
  doc["moments"] = std::move(moments);

  bool pass = joint_rep.pass && moment_rep.pass;

  if (spec.kind == "wvag") {
    const Matrix y = y_samples_at(sample, last);
    const std::vector<double> axis_grid = {-3.0, -1.5, 0.5, 1.5, 3.0};
    json marginals = json::array();
    for (Index k = 0; k < n; ++k) {
      const VGParams marginal = VGParams::make(
          spec.wvag.b / spec.wvag.alpha[k],
          Vector::Constant(1, spec.wvag.mu[k]),
          Matrix::Constant(1, 1, spec.wvag.sigma(k, k)));
      const ECFReport rep = marginal_vg_test(y, k, marginal, t, axis_grid);
      json entry = ecf_report_to_json(rep, "analytic");
      entry["coordinate"] = k + 1;
      marginals.push_back(std::move(entry));
      pass = pass && rep.pass;
    }
    doc["marginals"] = std::move(marginals);
  }

  doc["pass"] = pass;
  write_text_file(out_path, doc.dump(2) + "\n");
  if (!pass) {
    std::cerr << "validate: statistical test failed (max studentized "
              << std::max(joint_rep.max_studentized,
                          moment_rep.max_studentized)
              << " exceeds threshold)\n";
    return kExitStatistical;
  }
  return kExitOk;
}

int run_classify(const std::string& model_path) {
  const ModelSpec spec = load_model_file(model_path);
  ThorinAtomicMeasure thorin;
  if (spec.kind == "wvag") {
    thorin = wvag_thorin_measure(spec.wvag);
  } else if (spec.kind == "vggc") {
    thorin = spec.thorin;
  } else {
    std::vector<ThorinAtom> atoms;
    atoms.reserve(spec.subordinator.rays.size());
    for (const GammaRay& ray : spec.subordinator.rays) {
      atoms.push_back(ray_to_thorin_atom(ray));
    }
    thorin = ThorinAtomicMeasure::make(spec.dim(), std::move(atoms));
  }
  const Eigen::FullPivLU<Matrix> lu(spec.brownian.sigma);
  const VariationClass c =
      classify_variation(spec.drift, thorin, lu.isInvertible());
  std::cout << to_string(c) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weakly subordinated Levy processes: exponents, densities, "
               "moments, samplers, validation"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string model_path;
  std::string grid_path;
  std::string points_path;
  std::string paths_path;
  std::string out_path;
  std::string scheme = "superposition";
  bool joint = false;
  double t_max = 1.0;
  Index steps = 1;
  Index n_paths = 1;
  std::uint64_t seed = 0;
  double epsilon = 0.0;

  CLI::App* charfn = app.add_subcommand(
      "charfn", "evaluate the characteristic exponent on a theta grid");
  charfn->add_option("--model", model_path, "model spec JSON")->required();
  charfn->add_option("--theta-grid", grid_path, "JSON array of theta rows")
      ->required();
  charfn->add_flag("--joint", joint,
                   "evaluate the joint (T, Y) exponent; rows have length 2n");
  charfn->add_option("--out", out_path, "output CSV")->required();

  CLI::App* density = app.add_subcommand(
      "density", "evaluate the Levy density on a point grid");
  density->add_option("--model", model_path, "model spec JSON")->required();
  density->add_option("--points", points_path, "JSON array of points")
      ->required();
  density->add_option("--out", out_path, "output CSV")->required();

  CLI::App* moments = app.add_subcommand(
      "moments", "per-unit-time mean and covariance report");
  moments->add_option("--model", model_path, "model spec JSON")->required();
  moments->add_option("--out", out_path, "output JSON")->required();

  CLI::App* simulate =
      app.add_subcommand("simulate", "sample paths of (T, Y)");
  simulate->add_option("--model", model_path, "model spec JSON")->required();
  simulate->add_option("--t-max", t_max, "horizon (default 1)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--steps", steps, "grid steps (default 1)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--paths", n_paths, "number of paths")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "RNG seed (required)")->required();
  simulate->add_option("--scheme", scheme,
                       "superposition | marked | strong");
  CLI::Option* eps_opt = simulate->add_option(
      "--epsilon", epsilon, "jump truncation level (marked scheme)");
  simulate->add_option("--out", out_path, "output .csv or .bin")->required();

  CLI::App* validate = app.add_subcommand(
      "validate", "reconcile sampled paths against analytic laws");
  validate->add_option("--model", model_path, "model spec JSON")->required();
  validate->add_option("--paths", paths_path, "binary path file")->required();
  validate->add_option("--out", out_path, "output JSON report")->required();

  CLI::App* classify = app.add_subcommand(
      "classify", "path-variation classification of the model");
  classify->add_option("--model", model_path, "model spec JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (charfn->parsed()) {
      return run_charfn(model_path, grid_path, joint, out_path);
    }
    if (density->parsed()) {
      return run_density(model_path, points_path, out_path);
    }
    if (moments->parsed()) return run_moments(model_path, out_path);
    if (simulate->parsed()) {
      return run_simulate(model_path, t_max, steps, n_paths, seed, scheme,
                          epsilon, eps_opt->count() > 0, out_path);
    }
    if (validate->parsed()) {
      return run_validate(model_path, paths_path, out_path);
    }
    if (classify->parsed()) return run_classify(model_path);
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpec;
  } catch (const NumericError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
