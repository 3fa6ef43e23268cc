#pragma once

// JSON binding for model specifications (schema "weaklevy/1").
//
// Three kinds are supported:
//   wvag   -- fields a, b, alpha, mu, sigma
//   vggc   -- fields drift, mu, sigma, thorinAtoms [{location, weight}]
//   custom -- fields drift, mu, sigma, rays [{direction, shape, rate}],
//             atoms [{point, intensity}]
// Vectors are arrays of numbers, matrices row-major arrays of arrays.
// Parsing validates the schema first and then runs the parameter
// validators, so structurally bad documents never reach computation.

#include <cstdint>
#include <string>

#include "weaklevy/types.hpp"

namespace weaklevy {

inline constexpr const char* kSchemaVersion = "weaklevy/1";

struct ModelSpec {
  std::string kind;            // "wvag", "vggc", or "custom"
  WVaGParams wvag;             // populated for kind == "wvag"
  Vector drift;                // subordinator drift (zero for wvag)
  ThorinAtomicMeasure thorin;  // populated for kind == "vggc"
  BrownianSpec brownian;
  SubordinatorSpec subordinator;  // canonical ray+atom form of the clock

  Index dim() const { return brownian.dim(); }
};

ModelSpec parse_model_json(const std::string& text);
ModelSpec load_model_file(const std::string& path);

// Normalized round-trip serialization; equal specs produce equal strings.
std::string canonical_model_json(const ModelSpec& spec);

// FNV-1a 64-bit hash, used to stamp path files with their generating spec.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(std::uint64_t value);

}  // namespace weaklevy
