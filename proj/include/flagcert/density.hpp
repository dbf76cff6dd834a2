#pragma once

#include <map>
#include <utility>
#include <vector>

#include "flagcert/flag.hpp"
#include "flagcert/rational.hpp"

namespace flagcert {

/// p(F1; F): probability that a uniformly random set of |F1|-k unlabeled
/// vertices of F, together with the labeled ones, induces a flag isomorphic
/// to F1. Throws std::invalid_argument on a type mismatch or |F1| > |F|.
Rational density(const Flag& small, const Flag& host);

/// p(F1, F2; F) over uniformly random ordered sunflowers (V1, V2) centred on
/// the labeled vertices with |Vi| = |Fi|. Requires |F1| + |F2| - k <= |F|.
Rational pair_density(const Flag& f1, const Flag& f2, const Flag& host);

/// q_sigma(F): probability that a uniformly random injection [k] -> V(G)
/// induces sigma and yields a flag isomorphic to F.
Rational averaging_coeff(const Flag& f);

/// p(K_t; G) + p(K_t; complement G) for every G in enumerate_graphs(l), same order.
/// Throws std::out_of_range if t > l or t < 1.
std::vector<Rational> objective_column(int t, int l);
Rational monochromatic_clique_density(const Graph& g, int t);

/// Averaged pair densities. Entry (i, j, g) is the coefficient of graphs[g]
/// in [[flags1[i] * flags2[j]]]_sigma, i.e. the average over injections theta
/// inducing sigma of p(flags1[i], flags2[j]; (G, theta)).
struct DensityTable {
  TypeSigma sigma;
  int l1 = 0;
  int l2 = 0;
  int l = 0;
  std::vector<Flag> flags1;
  std::vector<Flag> flags2;
  std::vector<Graph> graphs;
  /// Sparse rows per graph; absent entries are zero.
  std::vector<std::map<std::pair<int, int>, Rational>> entries;

  Rational at(int i, int j, std::size_t g) const;
};

/// Builds the table by exhaustive enumeration of injections and sunflowers.
/// Parallel over graphs; the result does not depend on `threads`.
DensityTable averaged_pair_table(const TypeSigma& sigma, int l1, int l2, int l, int threads = 1);

}  // namespace flagcert
