// Brute-force reference implementations used as test oracles. Deliberately
// naive: exhaustive permutations and subsets, no shared code paths with the
// library beyond the Graph container.
#pragma once

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "flagcert/flag.hpp"
#include "flagcert/report.hpp"

namespace oracle {

using flagcert::Flag;
using flagcert::Graph;
using flagcert::Rational;

inline std::vector<Graph> reference_graphs() {
  std::ifstream in(flagcert::data_dir() / "reference_graphs.txt");
  return flagcert::read_graph_file(in);
}

/// Smallest mask over all vertex permutations that keep the first `fixed`
/// vertices in place. Any injective encoding serves as an isomorphism test.
inline std::uint32_t min_mask(const Graph& g, int fixed = 0) {
  std::vector<int> p(g.order());
  std::iota(p.begin(), p.end(), 0);
  std::uint32_t best = ~0U;
  do {
    best = std::min(best, g.relabeled(p).mask());
  } while (std::next_permutation(p.begin() + fixed, p.end()));
  return best;
}

inline bool isomorphic(const Graph& a, const Graph& b) {
  return a.order() == b.order() && min_mask(a) == min_mask(b);
}

/// Vertex order: labeled vertices first in label order, then the rest.
inline Graph labeled_first(const Flag& f) {
  std::vector<int> order(f.theta().begin(), f.theta().end());
  for (int v = 0; v < f.order(); ++v)
    if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
  return f.graph().relabeled(order);
}

inline bool same_flag(const Flag& a, const Flag& b) {
  return a.sigma() == b.sigma() && a.order() == b.order() &&
         min_mask(labeled_first(a), a.type_order()) == min_mask(labeled_first(b), b.type_order());
}

inline std::int64_t clique_count(const Graph& g, int t) {
  std::int64_t n = 0;
  for (std::uint32_t s = 0; s < (1U << g.order()); ++s) {
    if (std::popcount(s) != t) continue;
    bool ok = true;
    for (int i = 0; i < g.order() && ok; ++i)
      for (int j = i + 1; j < g.order() && ok; ++j)
        if ((s >> i & 1) && (s >> j & 1) && !g.adjacent(i, j)) ok = false;
    n += ok;
  }
  return n;
}

inline std::int64_t independent_count(const Graph& g, int t) {
  std::int64_t n = 0;
  for (std::uint32_t s = 0; s < (1U << g.order()); ++s) {
    if (std::popcount(s) != t) continue;
    bool ok = true;
    for (int i = 0; i < g.order() && ok; ++i)
      for (int j = i + 1; j < g.order() && ok; ++j)
        if ((s >> i & 1) && (s >> j & 1) && g.adjacent(i, j)) ok = false;
    n += ok;
  }
  return n;
}

inline std::vector<int> unlabeled(const Flag& f) {
  std::vector<int> out;
  for (int v = 0; v < f.order(); ++v)
    if (std::find(f.theta().begin(), f.theta().end(), v) == f.theta().end()) out.push_back(v);
  return out;
}

inline Flag restrict(const Flag& host, const std::vector<int>& extra) {
  std::vector<int> verts(host.theta().begin(), host.theta().end());
  verts.insert(verts.end(), extra.begin(), extra.end());
  std::vector<int> theta(host.type_order());
  std::iota(theta.begin(), theta.end(), 0);
  return Flag(host.sigma(), host.graph().relabeled(verts), theta);
}

/// All size-r subsets of `pool`, as index vectors into pool.
inline std::vector<std::vector<int>> subsets(const std::vector<int>& pool, int r) {
  std::vector<std::vector<int>> out;
  const int n = static_cast<int>(pool.size());
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    if (std::popcount(s) != r) continue;
    std::vector<int> pick;
    for (int i = 0; i < n; ++i)
      if (s >> i & 1) pick.push_back(pool[i]);
    out.push_back(pick);
  }
  return out;
}

inline Rational density(const Flag& small, const Flag& host) {
  const int r = small.order() - small.type_order();
  std::int64_t hit = 0, total = 0;
  for (const auto& s : subsets(unlabeled(host), r)) {
    ++total;
    hit += same_flag(restrict(host, s), small);
  }
  return flagcert::ratio(hit, total);
}

/// Ordered pairs (V1, V2) of disjoint unlabeled sets.
inline Rational pair_density(const Flag& f1, const Flag& f2, const Flag& host) {
  const int r1 = f1.order() - f1.type_order();
  const int r2 = f2.order() - f2.type_order();
  const auto pool = unlabeled(host);
  std::int64_t hit = 0, total = 0;
  for (const auto& s1 : subsets(pool, r1)) {
    std::vector<int> rest;
    for (int v : pool)
      if (std::find(s1.begin(), s1.end(), v) == s1.end()) rest.push_back(v);
    for (const auto& s2 : subsets(rest, r2)) {
      ++total;
      hit += same_flag(restrict(host, s1), f1) && same_flag(restrict(host, s2), f2);
    }
  }
  return flagcert::ratio(hit, total);
}

/// Injections [k] -> V(g) in lexicographic order.
template <class Fn>
void for_each_injection(int k, int n, Fn&& fn) {
  std::vector<int> theta(k);
  std::vector<bool> used(n, false);
  auto rec = [&](auto& self, int i) -> void {
    if (i == k) {
      fn(theta);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      theta[i] = v;
      self(self, i + 1);
      used[v] = false;
    }
  };
  rec(rec, 0);
}

inline bool induces(const Graph& g, const std::vector<int>& theta, const Graph& sigma) {
  for (int i = 0; i < sigma.order(); ++i)
    for (int j = i + 1; j < sigma.order(); ++j)
      if (g.adjacent(theta[i], theta[j]) != sigma.adjacent(i, j)) return false;
  return true;
}

inline Graph random_graph(std::mt19937& rng, int n, double p = 0.5) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) g.set_edge(i, j);
  return g;
}

inline std::vector<int> random_permutation(std::mt19937& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace oracle
