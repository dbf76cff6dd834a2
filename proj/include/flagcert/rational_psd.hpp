#pragma once

#include <vector>

#include "flagcert/matrix.hpp"

namespace flagcert {

/// Outcome of the exact PSD test. When psd is true, M = P^T L D L^T P with
/// `pivots` the diagonal of D (all >= 0). Otherwise `witness` is a vector v
/// with v^T M v < 0 and `witness_value` that quadratic form.
struct PsdResult {
  bool psd = false;
  std::vector<Rational> pivots;
  std::vector<int> permutation;
  std::vector<Rational> witness;
  Rational witness_value;
};

/// LDL^T with symmetric pivoting on the largest remaining diagonal entry.
/// Throws std::invalid_argument for non-symmetric input.
PsdResult check_psd_rational(const RationalMatrix& m);

}  // namespace flagcert
