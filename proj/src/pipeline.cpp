#include "flagcert/pipeline.hpp"

#include <cstdio>
#include <optional>

namespace flagcert {

std::vector<BigInt> default_denominators() {
  std::vector<BigInt> out;
  BigInt d = 1;
  for (int e = 1; e <= 10; ++e) {
    d *= 10;
    out.push_back(d);
  }
  return out;
}

PipelineConfig goodman_config() {
  PipelineConfig c;
  c.spec = goodman_spec();
  c.target_bound = Rational(1, 4);
  c.denominators = default_denominators();
  c.margin = Rational(1, 1000000);
  return c;
}

PipelineConfig m4_config() {
  PipelineConfig c;
  c.spec = m4_spec(true);
  c.target_bound = Rational(1, 35);
  c.denominators = default_denominators();
  c.margin = Rational(1, 1000000);
  return c;
}

namespace {

void say(const Progress& p, const std::string& text) {
  if (p) p(text);
}

/// Exact check against the problem's own coefficient matrices.
bool screen(const SdpProblem& p, const Certificate& c) {
  std::vector<RationalMatrix> mats;
  std::size_t k = 0;
  for (const auto& block : p.blocks) {
    mats.push_back(c.blocks.at(k).matrix);
    k += block.terms.size();
  }
  for (const auto& m : mats)
    if (!check_psd_rational(m).psd) return false;
  for (const auto& s : slacks(p, c.bound, mats))
    if (s < 0) return false;
  return true;
}

}  // namespace

PipelineResult certify_solution(const SdpProblem& problem, const Solution& solution, const PipelineConfig& config,
                                const Progress& progress) {
  PipelineResult r;
  r.problem = problem;
  r.solution = solution;
  std::vector<Rational> candidates;
  if (config.target_bound > 0) candidates.push_back(config.target_bound);
  // with a target the first accepted rounding wins; without one the best
  // accepted bound over all denominators
  std::optional<Certificate> best;
  for (const auto& d : config.denominators) {
    Certificate c = round_solution(problem, solution, d, config.margin, candidates);
    if (c.bound < config.target_bound) {
      say(progress, "numerical optimum is below the target bound " + to_string(config.target_bound));
      r.certificate = std::move(c);
      r.denominator = d;
      break;
    }
    const bool ok = screen(problem, c);
    say(progress, "denominator " + d.get_str() + ": " + (ok ? "accepted at " + to_string(c.bound) : "rejected"));
    if (ok && (!best || c.bound > best->bound)) {
      best = c;
      r.denominator = d;
    }
    if (!best) {
      r.certificate = std::move(c);
      r.denominator = d;
    }
    if (ok && candidates.size() == 1) break;
  }
  if (best) r.certificate = std::move(*best);
  r.report = verify_certificate(r.certificate, config.threads);
  r.verified = r.report.passed() && r.certificate.bound >= config.target_bound;
  return r;
}

PipelineResult run_pipeline(const PipelineConfig& config, const Progress& progress) {
  say(progress, "building relaxation (t=" + std::to_string(config.spec.t) + ", l=" + std::to_string(config.spec.l) +
                    ", " + std::to_string(config.spec.types.size()) + " types)");
  SdpProblem problem = build_problem(config.spec, config.cache);
  say(progress, std::to_string(problem.constraint_count()) + " constraints, " + std::to_string(problem.blocks.size()) +
                    " blocks");
  Solution solution = solve(problem, config.ipm);
  char buf[96];
  std::snprintf(buf, sizeof buf, "numerical lambda %.10f (1/%.6f) after %d iterations", solution.lambda,
                1.0 / solution.lambda, solution.iterations);
  say(progress, buf);
  if (solution.reduced_accuracy) say(progress, "solver stalled; continuing with the best iterate");
  return certify_solution(problem, solution, config, progress);
}

}  // namespace flagcert
