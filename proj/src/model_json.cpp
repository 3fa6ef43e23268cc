#include "weaklevy/model_json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "weaklevy/levy_measure.hpp"

namespace weaklevy {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw SpecError("model spec: " + what);
}

const json& require_field(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

double number_field(const json& doc, const char* key) {
  const json& v = require_field(doc, key);
  if (!v.is_number()) fail(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

Vector vector_field(const json& doc, const char* key) {
  const json& v = require_field(doc, key);
  if (!v.is_array() || v.empty()) {
    fail(std::string("field '") + key + "' must be a nonempty array");
  }
  Vector out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      fail(std::string("field '") + key + "' must contain numbers");
    }
    out[static_cast<Index>(i)] = v[i].get<double>();
  }
  return out;
}

Matrix matrix_field(const json& doc, const char* key) {
  const json& v = require_field(doc, key);
  if (!v.is_array() || v.empty()) {
    fail(std::string("field '") + key + "' must be an array of rows");
  }
  const std::size_t rows = v.size();
  if (!v[0].is_array() || v[0].empty()) {
    fail(std::string("field '") + key + "' rows must be nonempty arrays");
  }
  const std::size_t cols = v[0].size();
  Matrix out(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != cols) {
      fail(std::string("field '") + key + "' must be rectangular");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (!v[i][j].is_number()) {
        fail(std::string("field '") + key + "' must contain numbers");
      }
      out(static_cast<Index>(i), static_cast<Index>(j)) = v[i][j].get<double>();
    }
  }
  return out;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

}  // namespace

ModelSpec parse_model_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("document must be a JSON object");

  const json& version = require_field(doc, "version");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion) {
    fail(std::string("unsupported schema version (expected \"") +
         kSchemaVersion + "\")");
  }
  const json& kind = require_field(doc, "kind");
  if (!kind.is_string()) fail("field 'kind' must be a string");

  ModelSpec spec;
  spec.kind = kind.get<std::string>();
  if (spec.kind == "wvag") {
    spec.wvag = validate_wvag(number_field(doc, "a"), number_field(doc, "b"),
                              vector_field(doc, "alpha"),
                              vector_field(doc, "mu"),
                              matrix_field(doc, "sigma"));
    spec.brownian = BrownianSpec::make(spec.wvag.mu, spec.wvag.sigma);
    spec.drift = Vector::Zero(spec.wvag.dim());
    spec.subordinator = alpha_gamma_rays(spec.wvag);
    return spec;
  }
  if (spec.kind == "vggc") {
    spec.drift = vector_field(doc, "drift");
    spec.brownian = BrownianSpec::make(vector_field(doc, "mu"),
                                       matrix_field(doc, "sigma"));
    const json& atoms = require_field(doc, "thorinAtoms");
    if (!atoms.is_array()) fail("field 'thorinAtoms' must be an array");
    std::vector<ThorinAtom> parsed;
    parsed.reserve(atoms.size());
    for (const json& a : atoms) {
      if (!a.is_object()) fail("thorin atoms must be objects");
      ThorinAtom atom;
      atom.location = vector_field(a, "location");
      atom.weight = number_field(a, "weight");
      parsed.push_back(std::move(atom));
    }
    spec.thorin =
        ThorinAtomicMeasure::make(spec.brownian.dim(), std::move(parsed));
    spec.subordinator = thorin_to_rays(spec.drift, spec.thorin);
    if (spec.drift.size() != spec.brownian.dim()) {
      fail("drift and mu dimensions differ");
    }
    return spec;
  }
  if (spec.kind == "custom") {
    spec.drift = vector_field(doc, "drift");
    spec.brownian = BrownianSpec::make(vector_field(doc, "mu"),
                                       matrix_field(doc, "sigma"));
    std::vector<GammaRay> rays;
    if (doc.contains("rays")) {
      const json& jrays = doc["rays"];
      if (!jrays.is_array()) fail("field 'rays' must be an array");
      for (const json& r : jrays) {
        if (!r.is_object()) fail("rays must be objects");
        GammaRay ray;
        ray.direction = vector_field(r, "direction");
        ray.shape = number_field(r, "shape");
        ray.rate = number_field(r, "rate");
        rays.push_back(std::move(ray));
      }
    }
    std::vector<JumpAtom> atoms;
    if (doc.contains("atoms")) {
      const json& jatoms = doc["atoms"];
      if (!jatoms.is_array()) fail("field 'atoms' must be an array");
      for (const json& a : jatoms) {
        if (!a.is_object()) fail("atoms must be objects");
        JumpAtom atom;
        atom.point = vector_field(a, "point");
        atom.intensity = number_field(a, "intensity");
        atoms.push_back(std::move(atom));
      }
    }
    spec.subordinator = SubordinatorSpec::make(spec.drift, std::move(rays),
                                               std::move(atoms));
    if (spec.subordinator.dim() != spec.brownian.dim()) {
      fail("subordinator and Brownian dimensions differ");
    }
    return spec;
  }
  fail("unknown kind '" + spec.kind + "' (expected wvag, vggc, or custom)");
}

ModelSpec load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_json(buf.str());
}

std::string canonical_model_json(const ModelSpec& spec) {
  json doc;
  doc["version"] = kSchemaVersion;
  doc["kind"] = spec.kind;
  if (spec.kind == "wvag") {
    doc["a"] = spec.wvag.a;
    doc["b"] = spec.wvag.b;
    doc["alpha"] = to_json(spec.wvag.alpha);
    doc["mu"] = to_json(spec.wvag.mu);
    doc["sigma"] = to_json(spec.wvag.sigma);
  } else if (spec.kind == "vggc") {
    doc["drift"] = to_json(spec.drift);
    doc["mu"] = to_json(spec.brownian.mu);
    doc["sigma"] = to_json(spec.brownian.sigma);
    json atoms = json::array();
    for (const ThorinAtom& a : spec.thorin.atoms) {
      atoms.push_back({{"location", to_json(a.location)}, {"weight", a.weight}});
    }
    doc["thorinAtoms"] = std::move(atoms);
  } else {
    doc["drift"] = to_json(spec.subordinator.drift);
    doc["mu"] = to_json(spec.brownian.mu);
    doc["sigma"] = to_json(spec.brownian.sigma);
    json rays = json::array();
    for (const GammaRay& r : spec.subordinator.rays) {
      rays.push_back({{"direction", to_json(r.direction)},
                      {"shape", r.shape},
                      {"rate", r.rate}});
    }
    doc["rays"] = std::move(rays);
    json atoms = json::array();
    for (const JumpAtom& a : spec.subordinator.atoms) {
      atoms.push_back({{"point", to_json(a.point)}, {"intensity", a.intensity}});
    }
    doc["atoms"] = std::move(atoms);
  }
  return doc.dump();
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t value) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace weaklevy
