#include <doctest.h>

#include <set>

#include "flagcert/flag.hpp"
#include "oracles.hpp"

using namespace flagcert;

namespace {

TypeSigma type_of(int k, std::initializer_list<std::pair<int, int>> e) {
  std::vector<std::pair<int, int>> v;
  for (auto [a, b] : e) v.emplace_back(a - 1, b - 1);
  return TypeSigma(Graph::from_edges(k, v));
}

/// Flag classes of order l by exhaustive search: every graph on l vertices
/// whose first k vertices induce sigma, deduplicated by the label-fixing oracle.
std::size_t brute_flag_count(const TypeSigma& sigma, int l) {
  const int k = sigma.order();
  std::set<std::uint32_t> classes;
  for (std::uint32_t m = 0; m < (1U << pair_count(l)); ++m) {
    const Graph g(l, m);
    bool ok = true;
    for (int i = 0; i < k && ok; ++i)
      for (int j = i + 1; j < k && ok; ++j) ok = g.adjacent(i, j) == sigma.graph.adjacent(i, j);
    if (ok) classes.insert(oracle::min_mask(g, k));
  }
  return classes.size();
}

}  // namespace

TEST_CASE("type counts") {
  const std::vector<std::size_t> expected{1, 1, 2, 4, 11};
  for (int k = 0; k <= 4; ++k) CHECK(enumerate_types(k).size() == expected[k]);
  CHECK(enumerate_types(0)[0].order() == 0);
  CHECK_THROWS_AS(enumerate_types(5), std::out_of_range);
  CHECK_THROWS_AS(enumerate_types(-1), std::out_of_range);
}

TEST_CASE("one-vertex extensions number 2^k") {
  for (int k = 0; k <= 4; ++k)
    for (const auto& sigma : enumerate_types(k)) {
      const auto flags = enumerate_flags(sigma, k + 1);
      REQUIRE(flags.size() == (1U << k));
      for (std::uint32_t v = 0; v < (1U << k); ++v) {
        CHECK(extension_label_set(flags[v]) == v);
        CHECK(flag_isomorphic(flags[v], one_vertex_extension(sigma, v)));
      }
      for (std::size_t a = 0; a < flags.size(); ++a)
        for (std::size_t b = a + 1; b < flags.size(); ++b) CHECK_FALSE(oracle::same_flag(flags[a], flags[b]));
    }
}

TEST_CASE("flags of order k are the unit flag") {
  for (int k = 0; k <= 4; ++k)
    for (const auto& sigma : enumerate_types(k)) {
      const auto flags = enumerate_flags(sigma, k);
      REQUIRE(flags.size() == 1);
      CHECK(flags[0].graph() == sigma.graph);
    }
  CHECK_THROWS_AS(enumerate_flags(enumerate_types(3)[0], 2), std::invalid_argument);
}

TEST_CASE("type-0 flags of order 6 are the 156 graphs") {
  const auto flags = enumerate_flags(enumerate_types(0)[0], 6);
  CHECK(flags.size() == 156);
}

TEST_CASE("flag counts agree with brute force") {
  for (int k = 0; k <= 2; ++k)
    for (const auto& sigma : enumerate_types(k))
      for (int l = k; l <= 5; ++l) CHECK(enumerate_flags(sigma, l).size() == brute_flag_count(sigma, l));
  for (const auto& sigma : enumerate_types(3)) CHECK(enumerate_flags(sigma, 5).size() == brute_flag_count(sigma, 5));
  for (const auto& sigma : enumerate_types(4)) CHECK(enumerate_flags(sigma, 6).size() == brute_flag_count(sigma, 6));
}

TEST_CASE("labeled vertices induce the type in every enumerated flag") {
  for (int k = 0; k <= 4; ++k)
    for (const auto& sigma : enumerate_types(k))
      for (int l = k; l <= 6; ++l)
        for (const auto& f : enumerate_flags(sigma, l)) {
          std::vector<int> theta(f.theta().begin(), f.theta().end());
          CHECK(oracle::induces(f.graph(), theta, sigma.graph));
        }
}

TEST_CASE("flag keys decide flag isomorphism") {
  std::mt19937 rng(5);
  for (int k = 0; k <= 4; ++k)
    for (const auto& sigma : enumerate_types(k)) {
      const auto flags = enumerate_flags(sigma, std::min(6, k + 2));
      for (const auto& f : flags) {
        // relabel the unlabeled vertices and move theta along
        const int n = f.order();
        const auto p = oracle::random_permutation(rng, n);  // new vertex i is old vertex p[i]
        std::vector<int> inv(n);
        for (int i = 0; i < n; ++i) inv[p[i]] = i;
        std::vector<int> theta;
        for (int v : f.theta()) theta.push_back(inv[v]);
        const Flag moved(sigma, f.graph().relabeled(p), theta);
        CHECK(flag_canonical_key(moved) == flag_canonical_key(f));
        CHECK(flag_isomorphic(moved, f));
      }
      for (std::size_t a = 0; a < flags.size(); ++a)
        for (std::size_t b = a + 1; b < flags.size(); ++b) CHECK(flag_canonical_key(flags[a]) != flag_canonical_key(flags[b]));
    }
  const TypeSigma empty4 = type_of(4, {});
  CHECK(flag_canonical_key(one_vertex_extension(empty4, 0b0001)) != flag_canonical_key(one_vertex_extension(empty4, 0b0010)));
  CHECK(flag_canonical_key(one_vertex_extension(empty4, 0b0101)) == flag_canonical_key(one_vertex_extension(empty4, 0b0101)));
}

TEST_CASE("one-vertex extension adjacency") {
  const TypeSigma k4 = type_of(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  const Flag none = one_vertex_extension(k4, 0);
  const Flag all = one_vertex_extension(k4, 0b1111);
  int deg_none = 0, deg_all = 0;
  for (int i = 0; i < 4; ++i) {
    deg_none += none.graph().adjacent(none.theta()[i], oracle::unlabeled(none)[0]);
    deg_all += all.graph().adjacent(all.theta()[i], oracle::unlabeled(all)[0]);
  }
  CHECK(deg_none == 0);
  CHECK(deg_all == 4);
  CHECK_THROWS_AS(one_vertex_extension(k4, 0b10000), std::invalid_argument);
}

TEST_CASE("automorphism groups") {
  const TypeSigma k4 = type_of(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  CHECK(aut_group(k4).size() == 24);
  CHECK(aut_group(enumerate_types(1)[0]).size() == 1);
  const TypeSigma path = type_of(4, {{1, 2}, {2, 3}, {3, 4}});
  const auto g = aut_group(path);
  REQUIRE(g.size() == 2);
  CHECK(g[0] == std::vector<int>{0, 1, 2, 3});
  CHECK(g[1] == std::vector<int>{3, 2, 1, 0});
  for (int k = 0; k <= 4; ++k)
    for (const auto& sigma : enumerate_types(k)) {
      std::size_t brute = 0;
      std::vector<int> p(k);
      std::iota(p.begin(), p.end(), 0);
      do {
        brute += sigma.graph.relabeled(p) == sigma.graph;
      } while (std::next_permutation(p.begin(), p.end()));
      CHECK(aut_group(sigma).size() == brute);
    }
}

TEST_CASE("complements of types and flags") {
  const TypeSigma k4 = type_of(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  CHECK(complement_type(k4).graph == Graph(4));
  for (int k = 0; k <= 4; ++k)
    for (const auto& sigma : enumerate_types(k)) {
      for (std::uint32_t v = 0; v < (1U << k); ++v) {
        const Flag c = complement_flag(one_vertex_extension(sigma, v));
        CHECK(c.sigma() == complement_type(sigma));
        CHECK(flag_isomorphic(c, one_vertex_extension(complement_type(sigma), ((1U << k) - 1) & ~v)));
      }
      for (const auto& f : enumerate_flags(sigma, std::min(6, k + 2)))
        CHECK(flag_isomorphic(complement_flag(complement_flag(f)), f));
    }
}

TEST_CASE("order-4 types pair up under complement with one self-complementary class") {
  const auto types = enumerate_types(4);
  int self = 0;
  std::vector<int> partner(types.size(), -1);
  for (std::size_t i = 0; i < types.size(); ++i) {
    const Graph c = complement(types[i].graph);
    for (std::size_t j = 0; j < types.size(); ++j)
      if (oracle::isomorphic(c, types[j].graph)) partner[i] = static_cast<int>(j);
    REQUIRE(partner[i] >= 0);
    if (partner[i] == static_cast<int>(i)) {
      ++self;
      CHECK(oracle::isomorphic(types[i].graph, type_of(4, {{1, 2}, {2, 3}, {3, 4}}).graph));
    }
  }
  CHECK(self == 1);
  for (std::size_t i = 0; i < types.size(); ++i) CHECK(partner[partner[i]] == static_cast<int>(i));
}

TEST_CASE("relabeling a type moves the flag labels") {
  const TypeSigma path = type_of(3, {{1, 2}, {2, 3}});
  const std::vector<int> perm{2, 1, 0};
  CHECK(relabel_type(path, perm).graph == path.graph);
  const Flag f = one_vertex_extension(path, 0b001);
  const Flag g = relabel_flag(f, perm);
  CHECK(flag_isomorphic(g, one_vertex_extension(path, 0b100)));
}

TEST_CASE("flag text format") {
  const TypeSigma edge = type_of(2, {{1, 2}});
  const Flag f(edge, Graph::from_edges(3, std::vector<std::pair<int, int>>{{0, 2}, {1, 2}}), {2, 0});
  const std::string text = format_flag(f);
  CHECK(text == "2: {1, 2} | θ=(3,1) | 3: {1, 3}{2, 3}");
  const Flag back = parse_flag(text);
  CHECK(back.graph() == f.graph());
  CHECK(std::vector<int>(back.theta().begin(), back.theta().end()) == std::vector<int>{2, 0});
  CHECK(flag_isomorphic(parse_flag("2: {1, 2} | theta=(3,1) | 3: {1, 3}{2, 3}"), f));
  CHECK(format_flag(enumerate_flags(enumerate_types(0)[0], 2)[0]) == "0: | θ=() | 2:");
  for (int k = 0; k <= 4; ++k)
    for (const auto& sigma : enumerate_types(k))
      for (const auto& fl : enumerate_flags(sigma, k + 1)) CHECK(flag_isomorphic(parse_flag(format_flag(fl)), fl));

  CHECK_THROWS_AS(parse_flag("2: {1, 2} | (1,2) | 3:"), std::invalid_argument);
  CHECK_THROWS_AS(parse_flag("2: {1, 2} | θ=(1,2)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_flag("2: {1, 2} | θ=(1,2) | 3:"), std::invalid_argument);  // theta image not an edge
}

TEST_CASE("flag construction validates theta") {
  const TypeSigma edge = type_of(2, {{1, 2}});
  const Graph k3 = Graph::complete(3);
  CHECK_NOTHROW(Flag(edge, k3, {0, 1}));
  CHECK_THROWS_AS(Flag(edge, k3, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Flag(edge, k3, {0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Flag(edge, Graph(3), {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Flag(edge, k3, {0}), std::invalid_argument);
}
