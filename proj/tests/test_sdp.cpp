#include <doctest.h>

#include <random>
#include <sstream>

#include "flagcert/sdp.hpp"
#include "flagcert/sdpa_io.hpp"
#include "flagcert/solver.hpp"

using namespace flagcert;

namespace {

const SdpProblem& goodman() {
  static const SdpProblem p = build_problem(goodman_spec());
  return p;
}

const SdpProblem& m4(bool sharing) {
  static const SdpProblem shared = build_problem(m4_spec(true));
  static const SdpProblem separate = build_problem(m4_spec(false));
  return sharing ? shared : separate;
}

const Solution& m4_solution() {
  static const Solution s = solve(m4(true));
  return s;
}

RationalMatrix random_psd(std::mt19937& rng, int n, const Rational& scale) {
  std::uniform_int_distribution<int> d(-4, 4);
  const int rank = 1 + static_cast<int>(rng() % 3);
  std::vector<std::vector<int>> b(n, std::vector<int>(rank));
  for (auto& row : b)
    for (auto& x : row) x = d(rng);
  RationalMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long s = 0;
      for (int r = 0; r < rank; ++r) s += b[i][r] * b[j][r];
      m(i, j) = scale * s;
    }
  return m;
}

/// Largest lambda for which the given matrices leave every slack >= 0.
Rational best_lambda(const SdpProblem& p, const std::vector<RationalMatrix>& a) {
  const auto s0 = slacks(p, 0, a);
  std::optional<Rational> best;
  for (std::size_t g = 0; g < p.graphs.size(); ++g) {
    if (p.lambda_coeff[g] <= 0) continue;
    const Rational v = s0[g] / p.lambda_coeff[g];
    if (!best || v < *best) best = v;
  }
  return *best;
}

}  // namespace

TEST_CASE("problem shapes") {
  const auto& g = goodman();
  CHECK(g.constraint_count() == 4);
  REQUIRE(g.blocks.size() == 1);
  CHECK(g.blocks[0].dim == 2);
  CHECK(m4(true).constraint_count() == 156);
  CHECK(m4(false).blocks.size() == 22);
  CHECK(m4(true).blocks.size() == 12);
  int total = 0;
  for (const auto& b : m4(false).blocks) total += b.dim;
  CHECK(total == 11 * 16);
  for (const auto& b : m4(true).blocks)
    for (const auto& m : b.coeffs) CHECK(m.is_symmetric());
}

TEST_CASE("objective of the clique problem") {
  const auto& p = m4(true);
  int zeros = 0;
  for (std::size_t g = 0; g < p.graphs.size(); ++g) {
    CHECK(p.lambda_coeff[g] == 1);
    CHECK(p.objective[g] >= 0);
    if (p.objective[g] == 0) ++zeros;
  }
  CHECK(zeros > 0);
  CHECK(p.objective[0] == 1);  // empty graph
}

TEST_CASE("invalid specifications") {
  auto spec = m4_spec(false);
  spec.l = 5;
  CHECK_THROWS_AS(build_problem(spec), std::invalid_argument);
  spec = goodman_spec();
  spec.t = 4;
  CHECK_THROWS_AS(build_problem(spec), std::invalid_argument);
  spec = goodman_spec();
  spec.types = enumerate_types(2);
  CHECK_THROWS_AS(build_problem(spec), std::invalid_argument);
}

TEST_CASE("complement partners pair up the order-4 types") {
  const auto types = enumerate_types(4);
  int self = 0;
  for (std::size_t i = 0; i < types.size(); ++i) {
    const auto p = complement_partner(types, i);
    REQUIRE(p);
    CHECK(complement_partner(types, p->index)->index == i);
    if (p->index == i) ++self;
    CHECK(relabel_type(complement_type(types[i]), p->perm) == types[p->index]);
  }
  CHECK(self == 1);
}

TEST_CASE("no types: lambda is the smallest objective") {
  auto spec = m4_spec(false);
  spec.types.clear();
  const auto p = build_problem(spec);
  CHECK(p.blocks.empty());
  CHECK(solve(p).lambda == doctest::Approx(0).epsilon(1e-9));
}

TEST_CASE("triangle bound") {
  const Solution s = solve(goodman());
  CHECK(std::abs(s.lambda - 0.25) < 1e-6);
  CHECK(s.relative_gap < 1e-8);
}

TEST_CASE("clique bound") {
  const Solution& s = m4_solution();
  MESSAGE("lambda = " << s.lambda << " (1/" << 1 / s.lambda << "), " << s.iterations << " iterations");
  CHECK(s.lambda >= 0.0287);
  CHECK(s.lambda < 1.0 / 33);
  CHECK(std::abs(s.lambda - 1 / 34.7858) < 1e-6 * 1 / 0.0287);
  const Solution separate = solve(m4(false));
  CHECK(std::abs(separate.lambda - s.lambda) < 1e-7);
}

TEST_CASE("weak duality against random PSD matrices") {
  std::mt19937 rng(99);
  const double opt = m4_solution().lambda;
  const auto& p = m4(true);
  for (int seed = 0; seed < 20; ++seed) {
    std::vector<RationalMatrix> a;
    const Rational scale(1, 200 * (1 + seed % 5));
    for (const auto& b : p.blocks) a.push_back(random_psd(rng, b.dim, scale));
    const Rational lambda = best_lambda(p, a);
    const auto s = slacks(p, lambda, a);
    Rational lowest = s[0];
    for (const auto& v : s) lowest = std::min(lowest, v);
    CHECK(lowest == 0);
    CHECK(to_double(lambda) <= opt + 1e-9);
  }
  const auto& g = goodman();
  const double gopt = 0.25;
  for (int seed = 0; seed < 20; ++seed) {
    std::vector<RationalMatrix> a{random_psd(rng, 2, Rational(1, 1 + seed))};
    CHECK(to_double(best_lambda(g, a)) <= gopt + 1e-12);
  }
}

TEST_CASE("fewer types never help") {
  auto spec = m4_spec(false);
  spec.types.resize(6);
  const double part = solve(build_problem(spec)).lambda;
  CHECK(part <= m4_solution().lambda + 1e-8);
  spec.parity.assign(spec.types.size(), {true, false});
  CHECK(solve(build_problem(spec)).lambda <= part + 1e-8);
}

TEST_CASE("positive row scaling leaves the optimum unchanged") {
  SdpProblem p = goodman();
  scale_constraint(p, 1, Rational(7));
  scale_constraint(p, 3, Rational(1, 3));
  CHECK(p.objective[1] == 7 * goodman().objective[1]);
  CHECK(std::abs(solve(p).lambda - 0.25) < 1e-6);
  CHECK_THROWS_AS(scale_constraint(p, 0, Rational(-1)), std::invalid_argument);
}

TEST_CASE("iteration cap") {
  IpmOptions opts;
  opts.max_iterations = 2;
  CHECK_THROWS_AS(solve(m4(true), opts), SolverError);
}

TEST_CASE("standard form conversion") {
  const auto& p = goodman();
  const SdpaProblem sd = to_sdpa(p);
  CHECK(sd.m() == 3);
  REQUIRE(sd.block_sizes.size() == 2);
  CHECK(sd.block_sizes[0] == -4);
  CHECK(sd.block_sizes[1] == 2);
  CHECK(sd.F.size() == 4);
  const IpmResult r = solve_sdpa(sd);
  CHECK(r.dual_objective + sd.offset == doctest::Approx(0.25).epsilon(1e-7));
  CHECK(r.primal_objective + sd.offset == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("SDPA text round trip") {
  const SdpaProblem sd = to_sdpa(m4(true));
  std::stringstream buf;
  write_sdpa(buf, sd);
  const SdpaProblem back = read_sdpa(buf);
  CHECK(back.block_sizes == sd.block_sizes);
  CHECK(back.c == sd.c);
  CHECK(back.offset == sd.offset);
  REQUIRE(back.F.size() == sd.F.size());
  for (std::size_t k = 0; k < sd.F.size(); ++k) CHECK(back.F[k].data == sd.F[k].data);
}

TEST_CASE("SDPA parse errors carry line numbers") {
  std::stringstream buf;
  write_sdpa(buf, to_sdpa(goodman()));
  std::vector<std::string> lines;
  for (std::string l; std::getline(buf, l);) lines.push_back(l);
  auto with = [&](std::size_t at, const std::string& text) {
    auto copy = lines;
    copy[at] = text;
    std::stringstream s;
    for (const auto& l : copy) s << l << '\n';
    return s.str();
  };
  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_sdpa(in);
    } catch (const FormatError& e) {
      return e.line;
    }
    return 0;
  };
  CHECK(line_of(with(3, "two = nBLOCK")) == 4);
  CHECK(line_of(with(4, "-4 2 7")) == 5);
  CHECK(line_of(with(7, "1 9 1 1 1.0")) == 8);
  CHECK(line_of(with(7, "1 2 1 1 oops")) == 8);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_sdpa(empty), FormatError);
}

TEST_CASE("solution file round trip") {
  const Solution s = solve(goodman());
  std::stringstream buf;
  write_solution(buf, s);
  const Solution back = read_solution(buf, goodman());
  CHECK(back.lambda == s.lambda);
  CHECK(back.blocks == s.blocks);
  std::istringstream short_file("0.25\n1 0\n");
  CHECK_THROWS_AS(read_solution(short_file, goodman()), FormatError);
  std::stringstream extra;
  write_solution(extra, s);
  extra << "1 2 3\n";
  CHECK_THROWS_AS(read_solution(extra, goodman()), FormatError);
}

TEST_CASE("external solver output in the CSDP layout") {
  const auto& p = m4(true);
  const SdpaProblem sd = to_sdpa(p);
  const IpmResult r = solve_sdpa(sd);
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < r.x.size(); ++i) out << (i ? " " : "") << r.x[i];
  out << '\n';
  for (int k = 1; k <= 2; ++k) {
    const BlockMatrix& m = k == 1 ? r.X : r.Y;
    for (std::size_t b = 0; b < sd.block_sizes.size(); ++b) {
      const int s = sd.block_sizes[b];
      for (int i = 0; i < std::abs(s); ++i)
        for (int j = i; j < (s < 0 ? i + 1 : s); ++j)
          if (m.get(b, i, j) != 0) out << k << ' ' << b + 1 << ' ' << i + 1 << ' ' << j + 1 << ' ' << m.get(b, i, j) << '\n';
    }
  }
  std::istringstream in(out.str());
  const Solution s = read_csdp_solution(in, p, sd);
  CHECK(s.lambda == doctest::Approx(m4_solution().lambda).epsilon(1e-9));
  REQUIRE(s.blocks.size() == p.blocks.size());
  std::istringstream bad("1 2\n");
  CHECK_THROWS_AS(read_csdp_solution(bad, p, sd), FormatError);
}
