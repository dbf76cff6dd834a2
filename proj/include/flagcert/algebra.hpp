#pragma once

#include <map>
#include <span>
#include <vector>

#include "flagcert/density.hpp"
#include "flagcert/flag.hpp"
#include "flagcert/matrix.hpp"

namespace flagcert {

/// Formal linear combination of sigma-flags of one order. Keys index
/// enumerate_flags(sigma, order).
struct FlagVector {
  TypeSigma sigma;
  int order = 0;
  std::map<int, Rational> coeffs;

  friend bool operator==(const FlagVector&, const FlagVector&) = default;
};

/// Looks up f in enumerate_flags(f.sigma(), f.order()). Throws if absent.
int flag_index(const std::vector<Flag>& flags, const Flag& f);

/// F1 * F2 expanded over flags of order l with pair_density coefficients.
/// Throws std::invalid_argument unless l >= |F1| + |F2| - k.
FlagVector product_expand(const Flag& f1, const Flag& f2, int l);

/// Averaging operator: coefficient of G is the sum of v(F) q_sigma(F) over
/// flags F whose underlying graph is G.
std::map<CanonicalKey, Rational> average(const FlagVector& v);

/// Orbit sums ("plus") and in-orbit differences F_W0 - F_Wi ("minus") of the
/// one-vertex extensions under Aut(sigma). Orbits are ordered by their
/// smallest label set; l must be k+1.
struct InvariantSplit {
  std::vector<FlagVector> plus;
  std::vector<FlagVector> minus;
};
InvariantSplit invariant_split(const TypeSigma& sigma, int l);

/// Entry (a, b) for graph G: coefficient of G in [[basis_a * basis_b]]_sigma.
struct CoefficientMatrix {
  std::size_t graph_index = 0;
  RationalMatrix entries;
};

/// Direct route: one pass over sigma-inducing injections of each G in
/// enumerate_graphs(l), no intermediate product flags. Requires all basis
/// vectors to share one order m with 2m - k <= l.
std::vector<CoefficientMatrix> quadratic_coeff_matrices(const TypeSigma& sigma, const std::vector<FlagVector>& basis,
                                                        int l, int threads = 1);

/// Same contraction starting from a precomputed averaged pair table.
std::vector<CoefficientMatrix> quadratic_forms(const DensityTable& table, const std::vector<FlagVector>& basis);

/// Image of v under complementing every flag and relabeling the complemented
/// type by perm, re-indexed against enumerate_flags(target, v.order).
FlagVector transport_complement(const FlagVector& v, std::span<const int> perm, const TypeSigma& target);

}  // namespace flagcert
