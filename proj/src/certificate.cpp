#include "flagcert/certificate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include "json.hpp"
#include <ostream>
#include <stdexcept>

#include "flagcert/parallel.hpp"

namespace flagcert {

namespace {

using Eigen::MatrixXd;

std::string type_text(const TypeSigma& sigma) {
  return sigma.order() == 0 ? std::string("0:") : format_graph_line(sigma.graph);
}

TypeSigma parse_type_text(const std::string& text) {
  auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text.compare(first, 2, "0:") == 0 &&
      text.find_first_not_of(" \t", first + 2) == std::string::npos)
    return TypeSigma(Graph(0));
  return TypeSigma(parse_graph_line(text));
}

RationalMatrix repaired(const std::vector<double>& values, int dim, const BigInt& denominator) {
  RationalMatrix r = round_matrix(values, dim, denominator);
  if (check_psd_rational(r).psd) return r;
  MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = 0.5 * (values[i * dim + j] + values[j * dim + i]);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
  double margin = static_cast<double>(dim) / to_double(Rational(denominator));
  for (int attempt = 0; attempt < 12; ++attempt, margin *= 10) {
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(margin);
    MatrixXd clamped = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    std::vector<double> flat(static_cast<std::size_t>(dim) * dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) flat[i * dim + j] = clamped(i, j);
    r = round_matrix(flat, dim, denominator);
    if (check_psd_rational(r).psd) return r;
  }
  return r;  // left for verification to reject
}

}  // namespace

RationalMatrix round_matrix(const std::vector<double>& values, int dim, const BigInt& denominator) {
  if (values.size() != static_cast<std::size_t>(dim) * dim) throw std::invalid_argument("round_matrix: size mismatch");
  RationalMatrix r(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      const double v = 0.5 * (values[i * dim + j] + values[j * dim + i]);
      r(i, j) = r(j, i) = round_to_denominator(v, denominator);
    }
  return r;
}

Certificate round_solution(const SdpProblem& p, const Solution& s, const BigInt& denominator, const Rational& margin,
                           const std::vector<Rational>& candidates) {
  if (denominator < 1) throw std::invalid_argument("round_solution: denominator must be >= 1");
  if (s.blocks.size() != p.blocks.size()) throw std::invalid_argument("round_solution: block count mismatch");
  Certificate c;
  c.t = p.t;
  c.l = p.l;
  if (margin < 0) throw std::invalid_argument("round_solution: margin must be >= 0");
  const Rational lambda = from_double(s.lambda);
  const Rational target = lambda - margin;
  bool found = false;
  for (const auto& cand : candidates)
    if (cand <= lambda + margin && (!found || cand > c.bound)) {
      c.bound = cand;
      found = true;
    }
  if (!found) {
    BigInt num = target.get_num() * denominator;
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), target.get_den().get_mpz_t());
    c.bound = Rational(q, denominator);
    c.bound.canonicalize();
  }
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    const auto& block = p.blocks[b];
    const RationalMatrix m = repaired(s.blocks[b], block.dim, denominator);
    for (const auto& term : block.terms) c.blocks.push_back({term.sigma, term.parity, term.basis, m});
  }
  return c;
}

std::size_t SlackReport::tightest_row() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].diff() < rows[best].diff()) best = i;
  return best;
}

SlackReport verify_certificate(const Certificate& c, int threads) {
  if (c.t < 1 || c.t > c.l || c.l > 6) throw std::invalid_argument("certificate: need 1 <= t <= l <= 6");
  SlackReport r;
  r.bound = c.bound;
  r.l = c.l;
  const auto graphs = enumerate_graphs(c.l);
  const auto obj = objective_column(c.t, c.l);
  r.rows.resize(graphs.size());
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    r.rows[g].graph_index = g;
    r.rows[g].graph = graphs[g];
    r.rows[g].objective = obj[g];
    r.rows[g].L = obj[g] - c.bound;
  }
  r.all_psd = true;
  for (const auto& block : c.blocks) {
    if (block.matrix.size() != static_cast<int>(block.basis.size()))
      throw std::invalid_argument("certificate block " + type_text(block.sigma) + to_string(block.parity) +
                                  ": matrix dimension does not match the basis");
    if (!block.matrix.is_symmetric()) throw std::invalid_argument("certificate block matrix is not symmetric");
    r.psd.push_back(check_psd_rational(block.matrix));
    r.all_psd = r.all_psd && r.psd.back().psd;
    if (block.basis.empty()) continue;
    const auto mats = quadratic_coeff_matrices(block.sigma, block.basis, c.l, threads);
    std::vector<Rational> contrib(graphs.size());
    parallel_for(graphs.size(), threads,
                 [&](std::size_t g) { contrib[g] = frobenius_dot(block.matrix, mats[g].entries); });
    for (std::size_t g = 0; g < graphs.size(); ++g) r.rows[g].R += contrib[g];
  }
  r.all_slacks_nonnegative =
      std::all_of(r.rows.begin(), r.rows.end(), [](const SlackRow& row) { return row.diff() >= 0; });
  return r;
}

std::string certificate_to_json(const Certificate& c) {
  nlohmann::ordered_json j;
  j["format"] = "flagcert-certificate";
  j["version"] = 1;
  j["problem"] = {{"t", c.t}, {"l", c.l}};
  j["bound"] = to_string(c.bound);
  j["blocks"] = nlohmann::ordered_json::array();
  for (const auto& b : c.blocks) {
    nlohmann::ordered_json jb;
    jb["type"] = type_text(b.sigma);
    jb["parity"] = to_string(b.parity);
    jb["basis"] = nlohmann::ordered_json::array();
    for (const auto& v : b.basis) {
      const auto flags = enumerate_flags(v.sigma, v.order);
      auto terms = nlohmann::ordered_json::array();
      for (const auto& [i, coeff] : v.coeffs) terms.push_back({to_string(coeff), format_flag(flags.at(i))});
      jb["basis"].push_back(terms);
    }
    jb["matrix"] = nlohmann::ordered_json::array();
    for (int i = 0; i < b.matrix.size(); ++i) {
      auto row = nlohmann::ordered_json::array();
      for (int k = 0; k < b.matrix.size(); ++k) row.push_back(to_string(b.matrix(i, k)));
      jb["matrix"].push_back(row);
    }
    j["blocks"].push_back(jb);
  }
  return j.dump(1);
}

Certificate certificate_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.value("format", "") != "flagcert-certificate") throw std::invalid_argument("not a flagcert certificate");
  Certificate c;
  c.t = j.at("problem").at("t").get<int>();
  c.l = j.at("problem").at("l").get<int>();
  c.bound = parse_rational(j.at("bound").get<std::string>());
  for (const auto& jb : j.at("blocks")) {
    CertificateBlock b;
    b.sigma = parse_type_text(jb.at("type").get<std::string>());
    b.parity = parse_parity(jb.at("parity").get<std::string>());
    std::map<int, std::vector<Flag>> flag_lists;
    for (const auto& jv : jb.at("basis")) {
      FlagVector v{b.sigma, -1, {}};
      for (const auto& term : jv) {
        const Flag f = parse_flag(term.at(1).get<std::string>());
        if (!(f.sigma() == b.sigma)) throw std::invalid_argument("basis flag over a different type: " + format_flag(f));
        if (v.order < 0) v.order = f.order();
        if (f.order() != v.order) throw std::invalid_argument("basis vector mixes flag orders");
        auto& flags = flag_lists[v.order];
        if (flags.empty()) flags = enumerate_flags(b.sigma, v.order);
        v.coeffs[flag_index(flags, f)] += parse_rational(term.at(0).get<std::string>());
      }
      if (v.order < 0) v.order = b.basis.empty() ? b.sigma.order() + 1 : b.basis.front().order;
      if (!b.basis.empty() && v.order != b.basis.front().order)
        throw std::invalid_argument("basis vectors of one block differ in order");
      b.basis.push_back(std::move(v));
    }
    const auto& jm = jb.at("matrix");
    const int n = static_cast<int>(jm.size());
    b.matrix = RationalMatrix(n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(jm[i].size()) != n) throw std::invalid_argument("certificate matrix is not square");
      for (int k = 0; k < n; ++k) b.matrix(i, k) = parse_rational(jm[i][k].get<std::string>());
    }
    c.blocks.push_back(std::move(b));
  }
  return c;
}

void write_slack_tsv(std::ostream& out, const SlackReport& r) {
  const Rational scale = factorial(r.l);
  out << "# G\t" << r.l << "!L\t" << r.l << "!R\t(" << r.l << "!L-" << r.l << "!R)10^3\n";
  for (const auto& row : r.rows) {
    out << row.graph_index << '\t' << to_decimal(scale * row.L, 4) << '\t' << to_decimal(scale * row.R, 4) << '\t'
        << to_decimal(scale * row.diff() * 1000, 4) << '\n';
  }
}

}  // namespace flagcert
