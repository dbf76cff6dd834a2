#include "flagcert/algebra.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace flagcert {

int flag_index(const std::vector<Flag>& flags, const Flag& f) {
  const FlagKey key = flag_canonical_key(f);
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (flags[i].sigma() == f.sigma() && flag_canonical_key(flags[i]) == key) return static_cast<int>(i);
  throw std::invalid_argument("flag not found among the enumerated flags: " + format_flag(f));
}

FlagVector product_expand(const Flag& f1, const Flag& f2, int l) {
  if (!(f1.sigma() == f2.sigma())) throw std::invalid_argument("product_expand: flags over different types");
  const int k = f1.type_order();
  if (l < f1.order() + f2.order() - k) throw std::invalid_argument("product_expand: order too small for the product");
  FlagVector out{f1.sigma(), l, {}};
  const auto flags = enumerate_flags(f1.sigma(), l);
  for (std::size_t i = 0; i < flags.size(); ++i) {
    Rational p = pair_density(f1, f2, flags[i]);
    if (p != 0) out.coeffs.emplace(static_cast<int>(i), p);
  }
  return out;
}

std::map<CanonicalKey, Rational> average(const FlagVector& v) {
  std::map<CanonicalKey, Rational> out;
  const auto flags = enumerate_flags(v.sigma, v.order);
  for (const auto& [i, c] : v.coeffs) {
    if (c == 0) continue;
    const Flag& f = flags.at(i);
    out[canonical_key(f.graph())] += c * averaging_coeff(f);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

InvariantSplit invariant_split(const TypeSigma& sigma, int l) {
  const int k = sigma.order();
  if (l != k + 1) throw std::invalid_argument("invariant_split: only one-vertex extensions (l = k+1) are supported");
  const auto group = aut_group(sigma);
  auto image = [&](const std::vector<int>& p, std::uint32_t set) {
    std::uint32_t out = 0;
    for (int i = 0; i < k; ++i)
      if (set & (1U << i)) out |= 1U << p[i];
    return out;
  };
  InvariantSplit split;
  std::vector<bool> seen(1U << k, false);
  for (std::uint32_t v = 0; v < (1U << k); ++v) {
    if (seen[v]) continue;
    std::set<std::uint32_t> orbit;
    for (const auto& p : group) orbit.insert(image(p, v));
    FlagVector sum{sigma, l, {}};
    for (auto w : orbit) {
      seen[w] = true;
      sum.coeffs[static_cast<int>(w)] = 1;
    }
    split.plus.push_back(sum);
    const auto first = *orbit.begin();
    for (auto w : orbit) {
      if (w == first) continue;
      FlagVector diff{sigma, l, {}};
      diff.coeffs[static_cast<int>(first)] = 1;
      diff.coeffs[static_cast<int>(w)] = -1;
      split.minus.push_back(diff);
    }
  }
  return split;
}

namespace {

int common_basis_order(const TypeSigma& sigma, const std::vector<FlagVector>& basis) {
  if (basis.empty()) return sigma.order() + 1;
  const int m = basis.front().order;
  for (const auto& b : basis) {
    if (b.order != m) throw std::invalid_argument("basis vectors must share one flag order");
    if (!(b.sigma == sigma)) throw std::invalid_argument("basis vector over a different type");
  }
  return m;
}

}  // namespace

std::vector<CoefficientMatrix> quadratic_forms(const DensityTable& table, const std::vector<FlagVector>& basis) {
  const int dim = static_cast<int>(basis.size());
  // column view: for each flag index, which basis vectors use it
  std::map<int, std::vector<std::pair<int, Rational>>> uses;
  for (int a = 0; a < dim; ++a)
    for (const auto& [i, c] : basis[a].coeffs)
      if (c != 0) uses[i].emplace_back(a, c);

  std::vector<CoefficientMatrix> out(table.graphs.size());
  for (std::size_t g = 0; g < table.graphs.size(); ++g) {
    out[g].graph_index = g;
    out[g].entries = RationalMatrix(dim);
    for (const auto& [ij, p] : table.entries[g]) {
      auto ui = uses.find(ij.first);
      auto uj = uses.find(ij.second);
      if (ui == uses.end() || uj == uses.end()) continue;
      for (const auto& [a, ca] : ui->second)
        for (const auto& [b, cb] : uj->second) out[g].entries(a, b) += ca * cb * p;
    }
  }
  return out;
}

std::vector<CoefficientMatrix> quadratic_coeff_matrices(const TypeSigma& sigma, const std::vector<FlagVector>& basis,
                                                        int l, int threads) {
  const int m = common_basis_order(sigma, basis);
  if (2 * m - sigma.order() > l) throw std::invalid_argument("quadratic_coeff_matrices: order overflow (2m - k > l)");
  return quadratic_forms(averaged_pair_table(sigma, m, m, l, threads), basis);
}

FlagVector transport_complement(const FlagVector& v, std::span<const int> perm, const TypeSigma& target) {
  const auto source_flags = enumerate_flags(v.sigma, v.order);
  const auto target_flags = enumerate_flags(target, v.order);
  FlagVector out{target, v.order, {}};
  for (const auto& [i, c] : v.coeffs) {
    const Flag moved = relabel_flag(complement_flag(source_flags.at(i)), perm);
    if (!(moved.sigma() == target)) throw std::invalid_argument("transport_complement: permutation does not reach the target type");
    out.coeffs[flag_index(target_flags, moved)] += c;
  }
  return out;
}

}  // namespace flagcert
