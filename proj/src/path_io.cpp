#include "weaklevy/path_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace weaklevy {

namespace {

using nlohmann::json;

class FileWriter {
 public:
  explicit FileWriter(const std::string& path)
      : path_(path), f_(std::fopen(path.c_str(), "wb")) {
    if (!f_) throw SpecError("cannot open output file '" + path + "'");
  }
  ~FileWriter() {
    if (f_) std::fclose(f_);
  }
  FileWriter(const FileWriter&) = delete;
  FileWriter& operator=(const FileWriter&) = delete;

  void write(const char* data, std::size_t size) {
    if (std::fwrite(data, 1, size, f_) != size) {
      throw NumericError("short write to '" + path_ + "'");
    }
  }
  void write(const std::string& s) { write(s.data(), s.size()); }

 private:
  std::string path_;
  std::FILE* f_ = nullptr;
};

void append_double(std::string& out, double v) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", v + 0.0);
  out.append(buf, static_cast<std::size_t>(len));
}

double byteswap_double(double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  bits = __builtin_bswap64(bits);
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

constexpr bool kNativeLittle = std::endian::native == std::endian::little;

}  // namespace

void write_paths_csv(const PathSample& sample, const std::string& path) {
  FileWriter out(path);
  std::string line = "path,time";
  for (Index k = 0; k < sample.dim; ++k) line += ",T" + std::to_string(k + 1);
  for (Index k = 0; k < sample.dim; ++k) line += ",Y" + std::to_string(k + 1);
  line += "\n";
  out.write(line);
  for (Index p = 0; p < sample.n_paths; ++p) {
    for (Index s = 0; s < sample.n_steps; ++s) {
      line.clear();
      line += std::to_string(p);
      line += ',';
      append_double(line, sample.time_grid[s + 1]);
      for (Index k = 0; k < sample.dim; ++k) {
        line += ',';
        append_double(line, sample.t_at(p, s, k));
      }
      for (Index k = 0; k < sample.dim; ++k) {
        line += ',';
        append_double(line, sample.y_at(p, s, k));
      }
      line += '\n';
      out.write(line);
    }
  }
}

void write_paths_binary(const PathSample& sample, const std::string& path,
                        const std::string& params_hash) {
  {
    FileWriter out(path);
    std::vector<double> row(static_cast<std::size_t>(2 * sample.dim));
    for (Index p = 0; p < sample.n_paths; ++p) {
      for (Index s = 0; s < sample.n_steps; ++s) {
        for (Index k = 0; k < sample.dim; ++k) {
          double tv = sample.t_at(p, s, k);
          double yv = sample.y_at(p, s, k);
          if constexpr (!kNativeLittle) {
            tv = byteswap_double(tv);
            yv = byteswap_double(yv);
          }
          row[static_cast<std::size_t>(k)] = tv;
          row[static_cast<std::size_t>(sample.dim + k)] = yv;
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  row.size() * sizeof(double));
      }
    }
  }

  json side;
  side["version"] = "weaklevy/1";
  side["kind"] = "paths";
  side["dtype"] = "float64";
  side["byteOrder"] = "little";
  side["shape"] = {sample.n_paths, sample.n_steps, 2 * sample.dim};
  side["dim"] = sample.dim;
  side["seed"] = sample.seed;
  side["scheme"] = to_string(sample.scheme);
  side["epsilon"] = sample.epsilon;
  json bias = json::array();
  for (Index k = 0; k < sample.bias.size(); ++k) bias.push_back(sample.bias[k]);
  side["bias"] = std::move(bias);
  json grid = json::array();
  for (Index s = 0; s < sample.time_grid.size(); ++s) {
    grid.push_back(sample.time_grid[s]);
  }
  side["grid"] = std::move(grid);
  side["paramsHash"] = params_hash;
  FileWriter meta(path + ".json");
  meta.write(side.dump(2));
  meta.write("\n", 1);
}

PathSample read_paths_binary(const std::string& path,
                             const std::string& expected_params_hash) {
  std::ifstream meta_in(path + ".json", std::ios::binary);
  if (!meta_in) {
    throw SpecError("cannot open path sidecar '" + path + ".json'");
  }
  json side;
  try {
    meta_in >> side;
  } catch (const json::exception& e) {
    throw SpecError(std::string("invalid path sidecar: ") + e.what());
  }
  if (!side.is_object() || side.value("kind", "") != "paths" ||
      side.value("version", "") != "weaklevy/1") {
    throw SpecError("path sidecar is not a weaklevy/1 paths document");
  }
  if (side.value("dtype", "") != "float64" ||
      side.value("byteOrder", "") != "little") {
    throw SpecError("path sidecar: unsupported dtype or byte order");
  }
  if (!expected_params_hash.empty() &&
      side.value("paramsHash", "") != expected_params_hash) {
    throw SpecError(
        "path file was generated from a different model spec "
        "(paramsHash mismatch)");
  }

  PathSample sample;
  const auto& shape = side.at("shape");
  if (!shape.is_array() || shape.size() != 3) {
    throw SpecError("path sidecar: shape must have three entries");
  }
  sample.n_paths = shape[0].get<Index>();
  sample.n_steps = shape[1].get<Index>();
  const Index width = shape[2].get<Index>();
  sample.dim = side.at("dim").get<Index>();
  if (sample.n_paths < 1 || sample.n_steps < 1 || width != 2 * sample.dim) {
    throw SpecError("path sidecar: inconsistent shape");
  }
  sample.seed = side.at("seed").get<std::uint64_t>();
  sample.scheme = scheme_from_string(side.at("scheme").get<std::string>());
  sample.epsilon = side.value("epsilon", 0.0);
  const auto& grid = side.at("grid");
  if (!grid.is_array() ||
      static_cast<Index>(grid.size()) != sample.n_steps + 1) {
    throw SpecError("path sidecar: grid length does not match shape");
  }
  sample.time_grid = Vector(sample.n_steps + 1);
  for (Index s = 0; s <= sample.n_steps; ++s) {
    sample.time_grid[s] = grid[static_cast<std::size_t>(s)].get<double>();
  }
  sample.bias = Vector::Zero(sample.dim);
  if (side.contains("bias")) {
    const auto& bias = side["bias"];
    if (static_cast<Index>(bias.size()) != sample.dim) {
      throw SpecError("path sidecar: bias length does not match dim");
    }
    for (Index k = 0; k < sample.dim; ++k) {
      sample.bias[k] = bias[static_cast<std::size_t>(k)].get<double>();
    }
  }

  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open path file '" + path + "'");
  const std::size_t cells = static_cast<std::size_t>(sample.n_paths) *
                            static_cast<std::size_t>(sample.n_steps) *
                            static_cast<std::size_t>(sample.dim);
  sample.t_paths.assign(cells, 0.0);
  sample.y_paths.assign(cells, 0.0);
  std::vector<double> row(static_cast<std::size_t>(2 * sample.dim));
  for (Index p = 0; p < sample.n_paths; ++p) {
    for (Index s = 0; s < sample.n_steps; ++s) {
      in.read(reinterpret_cast<char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(double)));
      if (!in) throw SpecError("path file '" + path + "' is truncated");
      const std::size_t off = static_cast<std::size_t>(
          (p * sample.n_steps + s) * sample.dim);
      for (Index k = 0; k < sample.dim; ++k) {
        double tv = row[static_cast<std::size_t>(k)];
        double yv = row[static_cast<std::size_t>(sample.dim + k)];
        if constexpr (!kNativeLittle) {
          tv = byteswap_double(tv);
          yv = byteswap_double(yv);
        }
        sample.t_paths[off + static_cast<std::size_t>(k)] = tv;
        sample.y_paths[off + static_cast<std::size_t>(k)] = yv;
      }
    }
  }
  char extra;
  if (in.read(&extra, 1)) {
    throw SpecError("path file '" + path + "' is larger than its shape");
  }
  return sample;
}

}  // namespace weaklevy
