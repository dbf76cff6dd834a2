#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flagcert/algebra.hpp"
#include "flagcert/density_cache.hpp"

namespace flagcert {

enum class Parity { Plus, Minus };

std::string to_string(Parity p);
Parity parse_parity(std::string_view text);

/// Which blocks enter the relaxation.
struct ObjectiveSpec {
  int t = 4;
  int l = 6;
  std::vector<TypeSigma> types;
  /// Per type: {plus active, minus active}. Empty means all active.
  std::vector<std::pair<bool, bool>> parity;
  bool complement_sharing = false;

  bool active(std::size_t type_index, Parity p) const;
};

/// Default relaxations.
ObjectiveSpec goodman_spec();                           // t=3, l=3, type 1, plus only
ObjectiveSpec m4_spec(bool complement_sharing = true);  // t=4, l=6, all order-4 types

/// One quadratic form sharing the block's matrix variable.
struct BlockTerm {
  TypeSigma sigma;
  Parity parity = Parity::Plus;
  std::vector<FlagVector> basis;
};

struct SdpBlock {
  std::string id;
  int dim = 0;
  std::vector<BlockTerm> terms;
  /// Per graph: the summed coefficient matrices of all terms.
  std::vector<RationalMatrix> coeffs;
};

/// Feasibility form: for every graph g,
///   objective[g] - lambda_coeff[g] * lambda - sum_b A_b . blocks[b].coeffs[g] >= 0,
/// with every A_b PSD; lambda is maximised.
struct SdpProblem {
  int t = 0;
  int l = 0;
  std::vector<Graph> graphs;
  std::vector<Rational> objective;
  std::vector<Rational> lambda_coeff;
  std::vector<SdpBlock> blocks;

  std::size_t constraint_count() const { return graphs.size(); }
};

/// Throws std::invalid_argument when k + 2 > l for some type, or t > l.
SdpProblem build_problem(const ObjectiveSpec& spec, const CacheOptions& cache = {});

/// Multiplies constraint g (objective, lambda coefficient, coefficient
/// matrices) by a positive rational.
void scale_constraint(SdpProblem& p, std::size_t g, const Rational& factor);

/// Index into `types` of the complement partner of types[i] (possibly i
/// itself), with the label permutation taking complement_type(types[i]) to it.
struct ComplementPartner {
  std::size_t index = 0;
  std::vector<int> perm;
};
std::optional<ComplementPartner> complement_partner(const std::vector<TypeSigma>& types, std::size_t i);

/// Per-graph slacks for given block matrices (exact).
std::vector<Rational> slacks(const SdpProblem& p, const Rational& lambda, const std::vector<RationalMatrix>& blocks);

}  // namespace flagcert
