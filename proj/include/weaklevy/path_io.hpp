#pragma once

// Serialization of path samples.
//
// CSV (long format): header "path,time,T1..Tn,Y1..Yn", one row per
// (path, grid point) excluding t = 0, doubles printed with %.17g.
//
// Binary: raw little-endian IEEE-754 doubles shaped [paths][steps][2n]
// (T coordinates then Y coordinates per step), with a JSON sidecar at
// "<file>.json" recording shape, grid, seed, scheme, epsilon, bias and the
// generating spec hash, so a file is self-describing and verifiable.

#include <string>

#include "weaklevy/simulate.hpp"

namespace weaklevy {

void write_paths_csv(const PathSample& sample, const std::string& path);

void write_paths_binary(const PathSample& sample, const std::string& path,
                        const std::string& params_hash);

// Reads a binary path file plus its "<file>.json" sidecar.  If
// expected_params_hash is nonempty it must match the sidecar.
PathSample read_paths_binary(const std::string& path,
                             const std::string& expected_params_hash = "");

}  // namespace weaklevy
