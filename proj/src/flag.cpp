#include "flagcert/flag.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace flagcert {

Flag::Flag(TypeSigma sigma, Graph graph, std::vector<int> theta)
    : sigma_(sigma), graph_(graph), theta_(std::move(theta)) {
  const int k = sigma_.order();
  if (static_cast<int>(theta_.size()) != k) throw std::invalid_argument("flag: theta must have one entry per label");
  if (graph_.order() < k) throw std::invalid_argument("flag: graph smaller than its type");
  std::uint32_t seen = 0;
  for (int v : theta_) {
    if (v < 0 || v >= graph_.order()) throw std::invalid_argument("flag: theta maps outside the graph");
    if (seen & (1U << v)) throw std::invalid_argument("flag: theta is not injective");
    seen |= 1U << v;
  }
  for (int j = 1; j < k; ++j)
    for (int i = 0; i < j; ++i)
      if (graph_.adjacent(theta_[i], theta_[j]) != sigma_.graph.adjacent(i, j))
        throw std::invalid_argument("flag: labeled vertices do not induce the type");
}

namespace {
std::vector<int> iota_vector(int k) {
  std::vector<int> v(k);
  std::iota(v.begin(), v.end(), 0);
  return v;
}
}  // namespace

Flag::Flag(TypeSigma sigma, Graph graph) : Flag(sigma, graph, iota_vector(sigma.order())) {}

bool Flag::is_normalized() const {
  for (int i = 0; i < type_order(); ++i)
    if (theta_[i] != i) return false;
  return true;
}

Flag Flag::normalized() const {
  if (is_normalized()) return *this;
  std::vector<int> order(theta_.begin(), theta_.end());
  std::uint32_t labeled = 0;
  for (int v : theta_) labeled |= 1U << v;
  for (int v = 0; v < graph_.order(); ++v)
    if (!(labeled & (1U << v))) order.push_back(v);
  return Flag(sigma_, graph_.relabeled(order));
}

FlagKey flag_canonical_key(const Flag& f) {
  const Flag n = f.normalized();
  return {f.type_order(), f.order(), min_adjacency_string(n.graph(), f.type_order())};
}

Flag flag_canonical_form(const Flag& f) {
  const Flag n = f.normalized();
  std::vector<int> order;
  min_adjacency_string(n.graph(), f.type_order(), &order);
  return Flag(f.sigma(), n.graph().relabeled(order));
}

bool flag_isomorphic(const Flag& a, const Flag& b) {
  return a.sigma() == b.sigma() && flag_canonical_key(a) == flag_canonical_key(b);
}

std::vector<TypeSigma> enumerate_types(int k) {
  if (k < 0 || k > 4) throw std::out_of_range("enumerate_types: k must be in 0..4");
  if (k == 0) return {TypeSigma(Graph(0))};
  std::vector<TypeSigma> types;
  for (const Graph& g : enumerate_graphs(k)) types.emplace_back(g);
  return types;
}

Flag one_vertex_extension(const TypeSigma& sigma, std::uint32_t label_set) {
  const int k = sigma.order();
  if (k >= kMaxOrder) throw std::invalid_argument("one_vertex_extension: type too large");
  if (label_set >> k) throw std::invalid_argument("one_vertex_extension: label set not contained in [k]");
  Graph g(k + 1, sigma.graph.mask());
  for (int i = 0; i < k; ++i)
    if (label_set & (1U << i)) g.set_edge(i, k);
  return Flag(sigma, g);
}

std::uint32_t extension_label_set(const Flag& f) {
  if (f.order() != f.type_order() + 1) throw std::invalid_argument("extension_label_set: flag is not a one-vertex extension");
  const Flag n = f.normalized();
  const int k = f.type_order();
  std::uint32_t set = 0;
  for (int i = 0; i < k; ++i)
    if (n.graph().adjacent(i, k)) set |= 1U << i;
  return set;
}

std::vector<Flag> enumerate_flags(const TypeSigma& sigma, int l) {
  const int k = sigma.order();
  if (l < k) throw std::invalid_argument("enumerate_flags: order below type order");
  if (l > kMaxOrder) throw std::out_of_range("enumerate_flags: order above 8");
  if (l == k) return {Flag(sigma, sigma.graph)};
  if (l == k + 1) {
    std::vector<Flag> out;
    for (std::uint32_t v = 0; v < (1U << k); ++v) out.push_back(one_vertex_extension(sigma, v));
    return out;
  }
  std::map<std::uint32_t, Flag> classes;
  for (const Flag& parent : enumerate_flags(sigma, l - 1)) {
    for (std::uint32_t nbrs = 0; nbrs < (1U << (l - 1)); ++nbrs) {
      Graph child(l, parent.graph().mask());
      for (int u = 0; u < l - 1; ++u)
        if (nbrs & (1U << u)) child.set_edge(u, l - 1);
      std::vector<int> order;
      const std::uint32_t key = min_adjacency_string(child, k, &order);
      if (!classes.contains(key)) classes.emplace(key, Flag(sigma, child.relabeled(order)));
    }
  }
  std::vector<Flag> out;
  out.reserve(classes.size());
  for (auto& [key, f] : classes) out.push_back(f);
  return out;
}

std::vector<std::vector<int>> aut_group(const TypeSigma& sigma) {
  const int k = sigma.order();
  std::vector<int> p = iota_vector(k);
  std::vector<std::vector<int>> group;
  do {
    bool preserves = true;
    for (int j = 1; j < k && preserves; ++j)
      for (int i = 0; i < j && preserves; ++i)
        preserves = sigma.graph.adjacent(i, j) == sigma.graph.adjacent(p[i], p[j]);
    if (preserves) group.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return group;
}

TypeSigma complement_type(const TypeSigma& sigma) { return TypeSigma(complement(sigma.graph)); }

Flag complement_flag(const Flag& f) {
  return Flag(complement_type(f.sigma()), complement(f.graph()), std::vector<int>(f.theta().begin(), f.theta().end()));
}

TypeSigma relabel_type(const TypeSigma& sigma, std::span<const int> perm) {
  const int k = sigma.order();
  if (static_cast<int>(perm.size()) != k) throw std::invalid_argument("relabel_type: permutation size mismatch");
  Graph g(k);
  for (int j = 1; j < k; ++j)
    for (int i = 0; i < j; ++i)
      if (sigma.graph.adjacent(i, j)) g.set_edge(perm[i], perm[j]);
  return TypeSigma(g);
}

Flag relabel_flag(const Flag& f, std::span<const int> perm) {
  std::vector<int> theta(f.type_order());
  for (int i = 0; i < f.type_order(); ++i) theta[perm[i]] = f.theta()[i];
  return Flag(relabel_type(f.sigma(), perm), f.graph(), std::move(theta));
}

std::string format_flag(const Flag& f) {
  std::string out = format_graph_line(f.sigma().graph);
  if (f.type_order() == 0) out = "0:";
  out += " | θ=(";
  for (int i = 0; i < f.type_order(); ++i) {
    if (i) out += ",";
    out += std::to_string(f.theta()[i] + 1);
  }
  out += ") | " + format_graph_line(f.graph());
  return out;
}

namespace {
std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}
}  // namespace

Flag parse_flag(std::string_view text) {
  const auto bar1 = text.find('|');
  const auto bar2 = bar1 == std::string_view::npos ? bar1 : text.find('|', bar1 + 1);
  if (bar2 == std::string_view::npos) throw std::invalid_argument("flag text: expected three '|'-separated fields");
  const auto type_part = trim(text.substr(0, bar1));
  auto theta_part = trim(text.substr(bar1 + 1, bar2 - bar1 - 1));
  const auto graph_part = trim(text.substr(bar2 + 1));

  TypeSigma sigma;
  if (type_part == "0:" || type_part == "0") {
    sigma = TypeSigma(Graph(0));
  } else {
    sigma = TypeSigma(parse_graph_line(type_part));
  }
  if (theta_part.starts_with("θ=")) {
    theta_part.remove_prefix(std::string_view("θ=").size());
  } else if (theta_part.starts_with("theta=")) {
    theta_part.remove_prefix(6);
  } else {
    throw std::invalid_argument("flag text: expected 'θ=(...)'");
  }
  theta_part = trim(theta_part);
  if (theta_part.size() < 2 || theta_part.front() != '(' || theta_part.back() != ')')
    throw std::invalid_argument("flag text: theta must be parenthesised");
  theta_part = theta_part.substr(1, theta_part.size() - 2);
  std::vector<int> theta;
  while (!trim(theta_part).empty()) {
    const auto comma = theta_part.find(',');
    const auto item = trim(theta_part.substr(0, comma));
    int v = 0;
    if (item.empty()) throw std::invalid_argument("flag text: empty theta entry");
    for (char c : item) {
      if (c < '0' || c > '9') throw std::invalid_argument("flag text: malformed theta entry");
      v = v * 10 + (c - '0');
    }
    theta.push_back(v - 1);
    if (comma == std::string_view::npos) break;
    theta_part.remove_prefix(comma + 1);
  }
  return Flag(sigma, parse_graph_line(graph_part), std::move(theta));
}

}  // namespace flagcert
