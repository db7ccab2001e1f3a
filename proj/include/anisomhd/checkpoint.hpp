#pragma once

#include "anisomhd/types.hpp"

#include <string>

namespace anisomhd {

// Binary checkpoint: 64-byte header (magic "ANISOMHD", format version,
// n1 n2 n3, L, time, component count, zero padding) followed by the
// components as little-endian f64 in x3-major order. Fields are stored in
// physical representation; the pair writes u1 u2 u3 b1 b2 b3.
void write_checkpoint(const std::string& path, const FieldPair& p);
void write_checkpoint(const std::string& path, const ScalarField& f, double time);

FieldPair read_checkpoint_pair(const std::string& path);
ScalarField read_checkpoint_scalar(const std::string& path, double* time = nullptr);

}  // namespace anisomhd
