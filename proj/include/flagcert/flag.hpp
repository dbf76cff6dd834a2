#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flagcert/graph.hpp"

namespace flagcert {

/// A labeled graph of order k; label i+1 sits on vertex i.
struct TypeSigma {
  Graph graph;

  TypeSigma() = default;
  explicit TypeSigma(Graph g) : graph(g) {}
  int order() const { return graph.order(); }
  friend bool operator==(const TypeSigma&, const TypeSigma&) = default;
};

/// A sigma-flag (G, theta): theta[i] is the vertex of G carrying label i+1,
/// and the labeled vertices induce sigma exactly.
class Flag {
 public:
  Flag() = default;
  /// Throws std::invalid_argument if theta is not an injection into V(G) or
  /// the labeled vertices do not induce sigma.
  Flag(TypeSigma sigma, Graph graph, std::vector<int> theta);
  /// Flag whose labeled vertices are 0..k-1 in label order.
  Flag(TypeSigma sigma, Graph graph);

  const TypeSigma& sigma() const { return sigma_; }
  const Graph& graph() const { return graph_; }
  std::span<const int> theta() const { return theta_; }
  int order() const { return graph_.order(); }
  int type_order() const { return sigma_.order(); }

  /// Same flag with the labeled vertices moved to positions 0..k-1; the
  /// unlabeled vertices keep their relative order.
  Flag normalized() const;
  bool is_normalized() const;

 private:
  TypeSigma sigma_;
  Graph graph_;
  std::vector<int> theta_;
};

/// Canonical key of a flag: minimal adjacency string of the normalized flag
/// over permutations fixing every labeled vertex. The sigma part of the string
/// is fixed, so keys of flags over different types of the same order differ.
struct FlagKey {
  int type_order = 0;
  int order = 0;
  std::uint32_t bits = 0;
  friend auto operator<=>(const FlagKey&, const FlagKey&) = default;
};

FlagKey flag_canonical_key(const Flag& f);
/// Normalized representative realising the key.
Flag flag_canonical_form(const Flag& f);
bool flag_isomorphic(const Flag& a, const Flag& b);

/// One type per unlabeled graph of order k (identity labeling), ordered as
/// enumerate_graphs(k). Throws std::out_of_range unless 0 <= k <= 4.
std::vector<TypeSigma> enumerate_types(int k);

/// One canonical representative per flag-isomorphism class of order l. For
/// l == k+1 the flags are F_V ordered by V as a binary number (label i+1 is
/// bit i); otherwise ascending by FlagKey. Throws std::invalid_argument if l < k.
std::vector<Flag> enumerate_flags(const TypeSigma& sigma, int l);

/// F_V: one unlabeled vertex adjacent exactly to the labels in V
/// (label i+1 is bit i). Throws std::invalid_argument if V has bits >= k.
Flag one_vertex_extension(const TypeSigma& sigma, std::uint32_t label_set);

/// For a flag of order k+1, the label set its unlabeled vertex is adjacent to.
std::uint32_t extension_label_set(const Flag& f);

/// Label permutations preserving adjacency; p[i] is the image of label i+1
/// (0-based). Identity first.
std::vector<std::vector<int>> aut_group(const TypeSigma& sigma);

TypeSigma complement_type(const TypeSigma& sigma);
Flag complement_flag(const Flag& f);

/// Relabels sigma's labels: label i+1 becomes label perm[i]+1. The result is
/// a flag over the relabeled type.
Flag relabel_flag(const Flag& f, std::span<const int> perm);
TypeSigma relabel_type(const TypeSigma& sigma, std::span<const int> perm);

/// Text format "<k>: <sigma edges> | θ=(v1,...,vk) | <l>: <graph edges>",
/// vertices 1-based. "theta=" is accepted in place of "θ=".
std::string format_flag(const Flag& f);
Flag parse_flag(std::string_view text);

}  // namespace flagcert
