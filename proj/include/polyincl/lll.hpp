#pragma once

#include <vector>

#include "polyincl/real.hpp"

namespace polyincl {

using IntMatrix = std::vector<std::vector<Integer>>;

struct LllOptions {
  double delta = 0.99;
  double eta = 0.51;
  unsigned float_bits = 0;  // Gram-Schmidt precision; 0 picks 3 * rows + 120
};

struct LllStats {
  long swaps = 0;
  long size_reductions = 0;
};

/// LLL-reduces the rows of `basis` in place (rows must be linearly
/// independent). The basis stays exact; Gram-Schmidt data is kept in MPFR
/// floating point with lazy size reduction (Schnorr-Euchner style), so the
/// cost is dominated by exact integer row operations.
LllStats lll_reduce(IntMatrix& basis, const LllOptions& opts = {});

}  // namespace polyincl
