#pragma once

#include <iosfwd>
#include <string>

#include "chebdim/chebyshev.hpp"

namespace chebdim {

/// Writes a tensor as flat text: a header with the dimension count and one
/// "interval <lo> <hi> count <m>" line per dimension, then the node values in
/// row-major order, all numbers at full round-trip precision.
void save_tensor(const ChebyshevTensor& tensor, std::ostream& out);
void save_tensor(const ChebyshevTensor& tensor, const std::string& path);

/// Reads the format written by save_tensor. Round trips are value-exact.
ChebyshevTensor load_tensor(std::istream& in);
ChebyshevTensor load_tensor(const std::string& path);

}  // namespace chebdim
