#include "flagcert/graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <istream>
#include <map>
#include <set>
#include <stdexcept>

namespace flagcert {

Graph::Graph(int order, std::uint32_t mask) : order_(order), mask_(mask) {
  if (order < 0 || order > kMaxOrder)
    throw std::out_of_range("graph order " + std::to_string(order) + " outside 0..8");
  const int pairs = pair_count(order);
  if (pairs < 32 && (mask >> pairs) != 0) throw std::invalid_argument("adjacency mask exceeds graph order");
}

Graph Graph::complete(int order) {
  Graph g(order);
  const int pairs = pair_count(order);
  g.mask_ = pairs == 0 ? 0U : static_cast<std::uint32_t>((std::uint64_t{1} << pairs) - 1);
  return g;
}

Graph Graph::from_edges(int order, std::span<const std::pair<int, int>> edges) {
  Graph g(order);
  for (auto [u, v] : edges) g.set_edge(u, v);
  return g;
}

void Graph::set_edge(int u, int v, bool present) {
  if (u == v) throw std::invalid_argument("self-loop");
  if (u < 0 || v < 0 || u >= order_ || v >= order_) throw std::out_of_range("vertex out of range");
  const std::uint32_t bit = 1U << pair_index(u, v);
  mask_ = present ? (mask_ | bit) : (mask_ & ~bit);
}

int Graph::edge_count() const { return std::popcount(mask_); }

std::uint32_t Graph::neighbours(int v) const {
  std::uint32_t n = 0;
  for (int u = 0; u < order_; ++u)
    if (adjacent(u, v)) n |= 1U << u;
  return n;
}

Graph Graph::relabeled(std::span<const int> order) const {
  Graph g(static_cast<int>(order.size()));
  for (int j = 1; j < g.order_; ++j)
    for (int i = 0; i < j; ++i)
      if (adjacent(order[i], order[j])) g.mask_ |= 1U << pair_index(i, j);
  return g;
}

std::uint32_t adjacency_string(const Graph& g) {
  std::uint32_t bits = 0;
  for (int j = 1; j < g.order(); ++j)
    for (int i = 0; i < j; ++i) bits = (bits << 1) | (g.adjacent(i, j) ? 1U : 0U);
  return bits;
}

namespace {

struct KeySearch {
  const Graph& g;
  int n;
  int total_bits;
  std::uint32_t best = 0;
  bool have_best = false;
  std::vector<int> placement;
  std::vector<int> best_placement;

  // Places a vertex at position `pos`; `prefix` holds the string bits of
  // positions < pos.
  void run(int pos, std::uint32_t prefix, std::uint32_t used) {
    if (pos == n) {
      if (!have_best || prefix < best) {
        best = prefix;
        best_placement = placement;
        have_best = true;
      }
      return;
    }
    const int shift = total_bits - pair_count(pos + 1);
    for (int v = 0; v < n; ++v) {
      if (used & (1U << v)) continue;
      std::uint32_t bits = prefix;
      for (int i = 0; i < pos; ++i) bits = (bits << 1) | (g.adjacent(placement[i], v) ? 1U : 0U);
      if (have_best && bits > (best >> shift)) continue;
      placement[pos] = v;
      run(pos + 1, bits, used | (1U << v));
    }
  }
};

}  // namespace

std::uint32_t min_adjacency_string(const Graph& g, int fixed, std::vector<int>* best_order) {
  const int n = g.order();
  if (fixed < 0 || fixed > n) throw std::out_of_range("fixed prefix exceeds graph order");
  KeySearch search{g, n, pair_count(n), 0, false, std::vector<int>(n), {}};
  std::uint32_t prefix = 0;
  std::uint32_t used = 0;
  for (int j = 0; j < fixed; ++j) {
    for (int i = 0; i < j; ++i) prefix = (prefix << 1) | (g.adjacent(i, j) ? 1U : 0U);
    search.placement[j] = j;
    used |= 1U << j;
  }
  search.run(fixed, prefix, used);
  if (best_order) *best_order = search.best_placement;
  return search.best;
}

CanonicalKey canonical_key(const Graph& g) { return {g.order(), min_adjacency_string(g, 0)}; }

Graph canonical_form(const Graph& g) {
  std::vector<int> order;
  min_adjacency_string(g, 0, &order);
  return g.relabeled(order);
}

std::vector<Graph> enumerate_graphs(int n) {
  if (n < 1 || n > kMaxOrder) throw std::out_of_range("enumerate_graphs: n must be in 1..8");
  if (n == 1) return {Graph(1)};
  // Every graph on n vertices extends its induced subgraph on the first
  // n-1 vertices, so extending one representative per class is exhaustive.
  std::map<std::uint32_t, Graph> classes;
  for (const Graph& parent : enumerate_graphs(n - 1)) {
    for (std::uint32_t nbrs = 0; nbrs < (1U << (n - 1)); ++nbrs) {
      Graph child(n, parent.mask());
      for (int u = 0; u < n - 1; ++u)
        if (nbrs & (1U << u)) child.set_edge(u, n - 1);
      std::vector<int> order;
      const std::uint32_t key = min_adjacency_string(child, 0, &order);
      if (!classes.contains(key)) classes.emplace(key, child.relabeled(order));
    }
  }
  std::vector<Graph> out;
  out.reserve(classes.size());
  for (auto& [key, g] : classes) out.push_back(g);
  return out;
}

std::optional<std::size_t> class_index(std::span<const Graph> sorted_classes, const Graph& g) {
  const CanonicalKey key = canonical_key(g);
  auto it = std::lower_bound(sorted_classes.begin(), sorted_classes.end(), key,
                             [](const Graph& a, const CanonicalKey& k) { return canonical_key(a) < k; });
  if (it == sorted_classes.end() || canonical_key(*it) != key) return std::nullopt;
  return static_cast<std::size_t>(it - sorted_classes.begin());
}

Graph complement(const Graph& g) { return Graph(g.order(), Graph::complete(g.order()).mask() & ~g.mask()); }

std::int64_t count_cliques(const Graph& g, int t) {
  const int n = g.order();
  if (t < 1 || t > n) throw std::out_of_range("count_cliques: t must be in 1..order");
  std::int64_t count = 0;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    if (std::popcount(s) != t) continue;
    bool clique = true;
    for (int v = 0; v < n && clique; ++v)
      if (s & (1U << v)) clique = ((g.neighbours(v) | (1U << v)) & s) == s;
    if (clique) ++count;
  }
  return count;
}

Graph induced_subgraph(const Graph& g, std::span<const int> vertices) {
  if (vertices.empty()) throw std::invalid_argument("induced_subgraph: empty vertex set");
  std::uint32_t seen = 0;
  for (int v : vertices) {
    if (v < 0 || v >= g.order()) throw std::invalid_argument("induced_subgraph: vertex out of range");
    if (seen & (1U << v)) throw std::invalid_argument("induced_subgraph: repeated vertex");
    seen |= 1U << v;
  }
  return g.relabeled(vertices);
}

std::optional<std::vector<int>> find_isomorphism(const Graph& from, const Graph& to) {
  if (from.order() != to.order()) return std::nullopt;
  std::vector<int> from_order, to_order;
  const auto kf = min_adjacency_string(from, 0, &from_order);
  const auto kt = min_adjacency_string(to, 0, &to_order);
  if (kf != kt) return std::nullopt;
  // from.relabeled(from_order) == to.relabeled(to_order)
  std::vector<int> p(from.order());
  for (int i = 0; i < from.order(); ++i) p[from_order[i]] = to_order[i];
  return p;
}

namespace {

void skip_space(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

int read_int(std::string_view s, std::size_t& pos) {
  skip_space(s, pos);
  std::size_t start = pos;
  int value = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    value = value * 10 + (s[pos] - '0');
    if (value > 1000) throw std::invalid_argument("edge list: vertex number too large");
    ++pos;
  }
  if (pos == start) throw std::invalid_argument("edge list: expected a vertex number at offset " + std::to_string(start));
  return value;
}

void expect(std::string_view s, std::size_t& pos, char c) {
  skip_space(s, pos);
  if (pos >= s.size() || s[pos] != c)
    throw std::invalid_argument(std::string("edge list: expected '") + c + "' at offset " + std::to_string(pos));
  ++pos;
}

}  // namespace

Graph parse_edge_list(std::string_view text, int order) {
  if (order < 1 || order > kMaxOrder) throw std::out_of_range("edge list: order must be in 1..8");
  Graph g(order);
  std::size_t pos = 0;
  for (skip_space(text, pos); pos < text.size(); skip_space(text, pos)) {
    expect(text, pos, '{');
    const int a = read_int(text, pos);
    expect(text, pos, ',');
    const int b = read_int(text, pos);
    expect(text, pos, '}');
    if (a == b) throw std::invalid_argument("edge list: loop {" + std::to_string(a) + ", " + std::to_string(a) + "}");
    if (a < 1 || b < 1 || a > order || b > order)
      throw std::invalid_argument("edge list: vertex outside 1.." + std::to_string(order));
    if (g.adjacent(a - 1, b - 1))
      throw std::invalid_argument("edge list: duplicate edge {" + std::to_string(a) + ", " + std::to_string(b) + "}");
    g.set_edge(a - 1, b - 1);
  }
  return g;
}

std::string format_edge_list(const Graph& g) {
  std::string out;
  for (int j = 1; j < g.order(); ++j)
    for (int i = 0; i < j; ++i)
      if (g.adjacent(i, j)) out += "{" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + "}";
  return out;
}

Graph parse_graph_line(std::string_view line) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("graph line: missing '<order>:' header");
  std::size_t pos = 0;
  const int order = read_int(line.substr(0, colon), pos);
  skip_space(line.substr(0, colon), pos);
  if (pos != colon) throw std::invalid_argument("graph line: malformed order header");
  return parse_edge_list(line.substr(colon + 1), order);
}

std::string format_graph_line(const Graph& g) {
  std::string edges = format_edge_list(g);
  return std::to_string(g.order()) + ":" + (edges.empty() ? "" : " " + edges);
}

std::vector<Graph> read_graph_file(std::istream& in) {
  std::vector<Graph> graphs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      graphs.push_back(parse_graph_line(line));
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return graphs;
}

}  // namespace flagcert
