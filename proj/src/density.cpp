#include "flagcert/density.hpp"

#include <bit>
#include <functional>
#include <stdexcept>

#include "flagcert/parallel.hpp"

namespace flagcert {

namespace {

// Minimal adjacency string of the flag induced on the labeled vertices
// 0..k-1 plus `subset` (a bit set of unlabeled vertices) of a normalized host.
std::uint32_t subset_key(const Graph& host, int k, std::uint32_t subset) {
  std::vector<int> vertices;
  vertices.reserve(k + std::popcount(subset));
  for (int i = 0; i < k; ++i) vertices.push_back(i);
  for (int v = k; v < host.order(); ++v)
    if (subset & (1U << v)) vertices.push_back(v);
  return min_adjacency_string(host.relabeled(vertices), k);
}

std::vector<std::uint32_t> subsets_of_size(int k, int n, int size) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < (1U << n); s += (1U << k)) {
    if (std::popcount(s) == size) out.push_back(s);
  }
  return out;
}

// Calls f(theta) for every ordered k-tuple of distinct vertices of g that
// induces sigma.
void for_each_sigma_injection(const Graph& g, const TypeSigma& sigma, const std::function<void(const std::vector<int>&)>& f) {
  const int k = sigma.order();
  std::vector<int> theta(k);
  std::function<void(int, std::uint32_t)> rec = [&](int pos, std::uint32_t used) {
    if (pos == k) {
      f(theta);
      return;
    }
    for (int v = 0; v < g.order(); ++v) {
      if (used & (1U << v)) continue;
      bool ok = true;
      for (int i = 0; i < pos && ok; ++i) ok = g.adjacent(theta[i], v) == sigma.graph.adjacent(i, pos);
      if (!ok) continue;
      theta[pos] = v;
      rec(pos + 1, used | (1U << v));
    }
  };
  rec(0, 0);
}

Graph normalized_host(const Graph& g, const std::vector<int>& theta) {
  std::vector<int> order(theta);
  std::uint32_t labeled = 0;
  for (int v : theta) labeled |= 1U << v;
  for (int v = 0; v < g.order(); ++v)
    if (!(labeled & (1U << v))) order.push_back(v);
  return g.relabeled(order);
}

void check_same_type(const Flag& a, const Flag& b) {
  if (!(a.sigma() == b.sigma())) throw std::invalid_argument("flags are over different types");
}

}  // namespace

Rational density(const Flag& small, const Flag& host) {
  check_same_type(small, host);
  if (small.order() > host.order()) throw std::invalid_argument("density: small flag larger than host");
  const int k = host.type_order();
  const Flag h = host.normalized();
  const std::uint32_t target = flag_canonical_key(small).bits;
  const auto subsets = subsets_of_size(k, host.order(), small.order() - k);
  std::int64_t hits = 0;
  for (std::uint32_t s : subsets)
    if (subset_key(h.graph(), k, s) == target) ++hits;
  return ratio(hits, static_cast<long>(subsets.size()));
}

Rational pair_density(const Flag& f1, const Flag& f2, const Flag& host) {
  check_same_type(f1, host);
  check_same_type(f2, host);
  const int k = host.type_order();
  const int a = f1.order() - k;
  const int b = f2.order() - k;
  const int m = host.order() - k;
  if (a + b > m) throw std::invalid_argument("pair_density: flags too large for a sunflower in the host");
  const Flag h = host.normalized();
  const std::uint32_t key1 = flag_canonical_key(f1).bits;
  const std::uint32_t key2 = flag_canonical_key(f2).bits;

  const auto sets_a = subsets_of_size(k, host.order(), a);
  const auto sets_b = subsets_of_size(k, host.order(), b);
  std::map<std::uint32_t, std::uint32_t> key_of;
  for (auto s : sets_a) key_of[s] = subset_key(h.graph(), k, s);
  for (auto s : sets_b) key_of.try_emplace(s, subset_key(h.graph(), k, s));

  BigInt hits = 0;
  if (a != b) {
    for (auto s1 : sets_a) {
      if (key_of[s1] != key1) continue;
      for (auto s2 : sets_b)
        if ((s1 & s2) == 0 && key_of[s2] == key2) ++hits;
    }
  } else if (a == 0) {
    hits = (key_of[0] == key1 && key_of[0] == key2) ? 1 : 0;
  } else {
    // unordered {S1, S2}; each contributes both orientations
    for (std::size_t x = 0; x < sets_a.size(); ++x) {
      for (std::size_t y = x + 1; y < sets_a.size(); ++y) {
        const auto s1 = sets_a[x];
        const auto s2 = sets_a[y];
        if (s1 & s2) continue;
        if (key_of[s1] == key1 && key_of[s2] == key2) ++hits;
        if (key_of[s1] == key2 && key_of[s2] == key1) ++hits;
      }
    }
  }
  Rational p(hits, binomial(m, a) * binomial(m - a, b));
  p.canonicalize();
  return p;
}

Rational averaging_coeff(const Flag& f) {
  const Graph& g = f.graph();
  const int k = f.type_order();
  const std::uint32_t target = flag_canonical_key(f).bits;
  std::int64_t hits = 0;
  for_each_sigma_injection(g, f.sigma(), [&](const std::vector<int>& theta) {
    if (min_adjacency_string(normalized_host(g, theta), k) == target) ++hits;
  });
  Rational q(BigInt(hits), falling_factorial(g.order(), k));
  q.canonicalize();
  return q;
}

Rational monochromatic_clique_density(const Graph& g, int t) {
  Rational r(BigInt(count_cliques(g, t) + count_cliques(complement(g), t)), binomial(g.order(), t));
  r.canonicalize();
  return r;
}

std::vector<Rational> objective_column(int t, int l) {
  if (t < 1 || t > l) throw std::out_of_range("objective_column: need 1 <= t <= l");
  std::vector<Rational> column;
  for (const Graph& g : enumerate_graphs(l)) column.push_back(monochromatic_clique_density(g, t));
  return column;
}

Rational DensityTable::at(int i, int j, std::size_t g) const {
  const auto& row = entries.at(g);
  auto it = row.find({i, j});
  return it == row.end() ? Rational(0) : it->second;
}

DensityTable averaged_pair_table(const TypeSigma& sigma, int l1, int l2, int l, int threads) {
  const int k = sigma.order();
  if (l1 < k || l2 < k) throw std::invalid_argument("averaged_pair_table: flag order below type order");
  if (l1 + l2 - k > l) throw std::invalid_argument("averaged_pair_table: need l1 + l2 - k <= l");
  DensityTable table;
  table.sigma = sigma;
  table.l1 = l1;
  table.l2 = l2;
  table.l = l;
  table.flags1 = enumerate_flags(sigma, l1);
  table.flags2 = enumerate_flags(sigma, l2);
  table.graphs = enumerate_graphs(l);
  table.entries.resize(table.graphs.size());

  std::map<std::uint32_t, int> index1, index2;
  for (std::size_t i = 0; i < table.flags1.size(); ++i) index1[flag_canonical_key(table.flags1[i]).bits] = static_cast<int>(i);
  for (std::size_t i = 0; i < table.flags2.size(); ++i) index2[flag_canonical_key(table.flags2[i]).bits] = static_cast<int>(i);

  const int a = l1 - k;
  const int b = l2 - k;
  const int m = l - k;
  const BigInt denominator = falling_factorial(l, k) * binomial(m, a) * binomial(m - a, b);

  parallel_for(table.graphs.size(), threads, [&](std::size_t gi) {
    const Graph& g = table.graphs[gi];
    std::map<std::pair<int, int>, std::int64_t> counts;
    for_each_sigma_injection(g, sigma, [&](const std::vector<int>& theta) {
      const Graph host = normalized_host(g, theta);
      const auto sets_a = subsets_of_size(k, l, a);
      const auto sets_b = subsets_of_size(k, l, b);
      std::map<std::uint32_t, int> cls1, cls2;
      for (auto s : sets_a) cls1[s] = index1.at(subset_key(host, k, s));
      for (auto s : sets_b) cls2[s] = index2.at(subset_key(host, k, s));
      for (auto s1 : sets_a)
        for (auto s2 : sets_b)
          if ((s1 & s2) == 0) ++counts[{cls1[s1], cls2[s2]}];
    });
    auto& row = table.entries[gi];
    for (auto& [ij, c] : counts) {
      Rational v(BigInt(c), denominator);
      v.canonicalize();
      row.emplace(ij, v);
    }
  });
  return table;
}

}  // namespace flagcert
