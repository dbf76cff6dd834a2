#include "flagcert/sdp.hpp"

#include <stdexcept>

namespace flagcert {

std::string to_string(Parity p) { return p == Parity::Plus ? "+" : "-"; }

Parity parse_parity(std::string_view text) {
  if (text == "+" || text == "plus") return Parity::Plus;
  if (text == "-" || text == "minus") return Parity::Minus;
  throw std::invalid_argument("unknown parity '" + std::string(text) + "'");
}

bool ObjectiveSpec::active(std::size_t type_index, Parity p) const {
  if (parity.empty()) return true;
  const auto& [plus, minus] = parity.at(type_index);
  return p == Parity::Plus ? plus : minus;
}

ObjectiveSpec goodman_spec() {
  ObjectiveSpec s;
  s.t = 3;
  s.l = 3;
  s.types = enumerate_types(1);
  s.parity = {{true, false}};
  return s;
}

ObjectiveSpec m4_spec(bool complement_sharing) {
  ObjectiveSpec s;
  s.t = 4;
  s.l = 6;
  s.types = enumerate_types(4);
  s.complement_sharing = complement_sharing;
  return s;
}

std::optional<ComplementPartner> complement_partner(const std::vector<TypeSigma>& types, std::size_t i) {
  const Graph target = complement(types.at(i).graph);
  for (std::size_t j = 0; j < types.size(); ++j) {
    if (types[j].order() != target.order()) continue;
    if (auto p = find_isomorphism(target, types[j].graph)) return ComplementPartner{j, *p};
  }
  return std::nullopt;
}

namespace {

std::vector<FlagVector> parity_basis(const TypeSigma& sigma, Parity parity) {
  auto split = invariant_split(sigma, sigma.order() + 1);
  return parity == Parity::Plus ? split.plus : split.minus;
}

std::string block_id(const TypeSigma& sigma, Parity parity) {
  return std::to_string(sigma.order()) + ":" + format_edge_list(sigma.graph) + to_string(parity);
}

void add_term(SdpBlock& block, BlockTerm term, int l, const CacheOptions& cache) {
  const int m = term.sigma.order() + 1;
  const auto table = cached_pair_table(term.sigma, m, m, l, cache);
  auto mats = quadratic_forms(table, term.basis);
  if (block.coeffs.empty()) {
    block.coeffs.assign(mats.size(), RationalMatrix(block.dim));
  }
  for (std::size_t g = 0; g < mats.size(); ++g)
    for (int a = 0; a < block.dim; ++a)
      for (int b = 0; b < block.dim; ++b) block.coeffs[g](a, b) += mats[g].entries(a, b);
  block.terms.push_back(std::move(term));
}

}  // namespace

SdpProblem build_problem(const ObjectiveSpec& spec, const CacheOptions& cache) {
  if (spec.t < 1 || spec.t > spec.l) throw std::invalid_argument("build_problem: need 1 <= t <= l");
  if (!spec.parity.empty() && spec.parity.size() != spec.types.size())
    throw std::invalid_argument("build_problem: parity list does not match the type list");
  for (const auto& s : spec.types)
    if (s.order() + 2 > spec.l) throw std::invalid_argument("build_problem: type order too large for l");

  SdpProblem p;
  p.t = spec.t;
  p.l = spec.l;
  p.graphs = enumerate_graphs(spec.l);
  p.objective = objective_column(spec.t, spec.l);
  p.lambda_coeff.assign(p.graphs.size(), Rational(1));

  std::vector<bool> consumed(spec.types.size(), false);
  for (std::size_t i = 0; i < spec.types.size(); ++i) {
    if (consumed[i]) continue;
    consumed[i] = true;
    std::optional<ComplementPartner> partner;
    if (spec.complement_sharing) {
      partner = complement_partner(spec.types, i);
      if (partner && (partner->index == i || consumed[partner->index])) partner.reset();
      if (partner) consumed[partner->index] = true;
    }
    for (Parity parity : {Parity::Plus, Parity::Minus}) {
      const bool mine = spec.active(i, parity);
      const bool theirs = partner && spec.active(partner->index, parity);
      if (!mine && !theirs) continue;
      const TypeSigma& sigma = spec.types[i];
      auto basis = parity_basis(sigma, parity);
      if (basis.empty()) continue;
      SdpBlock block;
      block.id = block_id(sigma, parity);
      block.dim = static_cast<int>(basis.size());
      if (partner && mine && theirs) {
        const TypeSigma& tau = spec.types[partner->index];
        std::vector<FlagVector> moved;
        for (const auto& v : basis) moved.push_back(transport_complement(v, partner->perm, tau));
        block.id += "~" + block_id(tau, parity);
        add_term(block, {sigma, parity, std::move(basis)}, spec.l, cache);
        add_term(block, {tau, parity, std::move(moved)}, spec.l, cache);
      } else if (mine) {
        add_term(block, {sigma, parity, std::move(basis)}, spec.l, cache);
      } else {
        const TypeSigma& tau = spec.types[partner->index];
        auto own = parity_basis(tau, parity);
        block.id = block_id(tau, parity);
        block.dim = static_cast<int>(own.size());
        add_term(block, {tau, parity, std::move(own)}, spec.l, cache);
      }
      p.blocks.push_back(std::move(block));
    }
  }
  return p;
}

void scale_constraint(SdpProblem& p, std::size_t g, const Rational& factor) {
  if (factor <= 0) throw std::invalid_argument("scale_constraint: factor must be positive");
  p.objective.at(g) *= factor;
  p.lambda_coeff.at(g) *= factor;
  for (auto& block : p.blocks)
    for (int a = 0; a < block.dim; ++a)
      for (int b = 0; b < block.dim; ++b) block.coeffs[g](a, b) *= factor;
}

std::vector<Rational> slacks(const SdpProblem& p, const Rational& lambda, const std::vector<RationalMatrix>& blocks) {
  if (blocks.size() != p.blocks.size()) throw std::invalid_argument("slacks: block count mismatch");
  std::vector<Rational> out(p.graphs.size());
  for (std::size_t g = 0; g < p.graphs.size(); ++g) {
    Rational s = p.objective[g] - p.lambda_coeff[g] * lambda;
    for (std::size_t b = 0; b < blocks.size(); ++b) s -= frobenius_dot(blocks[b], p.blocks[b].coeffs[g]);
    out[g] = s;
  }
  return out;
}

}  // namespace flagcert
