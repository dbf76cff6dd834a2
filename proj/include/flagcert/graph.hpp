#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flagcert {

inline constexpr int kMaxOrder = 8;

/// Position of the vertex pair {i, j}, i < j, in colex order:
/// {0,1} {0,2} {1,2} {0,3} {1,3} {2,3} ...
constexpr int pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  return j * (j - 1) / 2 + i;
}

constexpr int pair_count(int order) { return order * (order - 1) / 2; }

/// Simple undirected graph on at most eight vertices. Bit `pair_index(i, j)`
/// of the mask is set iff {i, j} is an edge. Vertices are 0-based.
///
/// Order 0 is accepted so that the empty type can be represented; graph
/// enumeration and the text formats work with orders 1..8.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int order, std::uint32_t mask = 0);

  static Graph complete(int order);
  /// Edges given as 0-based vertex pairs.
  static Graph from_edges(int order, std::span<const std::pair<int, int>> edges);

  int order() const { return order_; }
  std::uint32_t mask() const { return mask_; }
  bool adjacent(int u, int v) const {
    return u != v && ((mask_ >> pair_index(u, v)) & 1U) != 0;
  }
  void set_edge(int u, int v, bool present = true);
  int edge_count() const;
  /// Neighbourhood of v as a vertex bit set.
  std::uint32_t neighbours(int v) const;

  /// Graph whose vertex i is vertex order[i] of this graph. `order` lists
  /// distinct vertices; the result has order.size() vertices.
  Graph relabeled(std::span<const int> order) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int order_ = 0;
  std::uint32_t mask_ = 0;
};

/// Lexicographically smallest adjacency string over all vertex orderings.
/// The string is read in colex pair order and packed most significant bit
/// first, so integer comparison is lexicographic comparison.
struct CanonicalKey {
  int order = 0;
  std::uint32_t bits = 0;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

/// Key of the adjacency string of g as it stands (no minimisation).
std::uint32_t adjacency_string(const Graph& g);

/// Minimum of adjacency_string over orderings that keep vertices
/// 0..fixed-1 in place and permute the rest. Returns the minimising ordering
/// in `best_order` when non-null. Branch and bound over vertex placements;
/// the result equals exhaustive minimisation.
std::uint32_t min_adjacency_string(const Graph& g, int fixed, std::vector<int>* best_order = nullptr);

CanonicalKey canonical_key(const Graph& g);
/// The representative realising canonical_key(g).
Graph canonical_form(const Graph& g);

/// One canonical representative per isomorphism class, ascending by key.
/// Throws std::out_of_range unless 1 <= n <= 8.
std::vector<Graph> enumerate_graphs(int n);

/// Index of g's isomorphism class within `sorted_classes` (output of
/// enumerate_graphs), or nullopt.
std::optional<std::size_t> class_index(std::span<const Graph> sorted_classes, const Graph& g);

Graph complement(const Graph& g);

/// Number of t-subsets inducing K_t. Throws std::out_of_range unless 1 <= t <= order.
std::int64_t count_cliques(const Graph& g, int t);

/// Subgraph induced on `vertices` (0-based, distinct), relabeled 0..|S|-1 in
/// the given order. Throws std::invalid_argument on empty or invalid sets.
Graph induced_subgraph(const Graph& g, std::span<const int> vertices);

/// Vertex permutation p with to.relabeled(p) == from, if the graphs are isomorphic.
std::optional<std::vector<int>> find_isomorphism(const Graph& from, const Graph& to);

// Edge-list text: "{1, 2}{1, 3}{2, 3}" with 1-based vertices, pairs in colex order.
Graph parse_edge_list(std::string_view text, int order);
std::string format_edge_list(const Graph& g);

/// "<order>: <edge list>" line format.
Graph parse_graph_line(std::string_view line);
std::string format_graph_line(const Graph& g);

/// Reads one graph per non-blank line; lines starting with '#' are skipped.
std::vector<Graph> read_graph_file(std::istream& in);

}  // namespace flagcert
