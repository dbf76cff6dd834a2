#pragma once

#include <functional>
#include <string>
#include <vector>

#include "flagcert/certificate.hpp"
#include "flagcert/solver.hpp"

namespace flagcert {

struct PipelineConfig {
  ObjectiveSpec spec;
  IpmOptions ipm;
  Rational target_bound;
  /// Tried in order. With a positive target the first accepted rounding
  /// wins; otherwise the accepted rounding with the largest bound.
  std::vector<BigInt> denominators;
  Rational margin;
  CacheOptions cache;
  int threads = 1;
};

/// 10^1 .. 10^10.
std::vector<BigInt> default_denominators();

PipelineConfig goodman_config();
PipelineConfig m4_config();

struct PipelineResult {
  SdpProblem problem;
  Solution solution;
  Certificate certificate;
  SlackReport report;
  BigInt denominator;
  /// Full from-scratch verification passed at a bound >= target.
  bool verified = false;
};

using Progress = std::function<void(const std::string&)>;

/// build -> solve -> round -> verify. Rounding attempts are screened
/// against the assembled problem; the accepted certificate is then verified
/// from scratch. Throws SolverError on non-convergence.
PipelineResult run_pipeline(const PipelineConfig& config, const Progress& progress = {});

/// round -> verify for an already solved problem.
PipelineResult certify_solution(const SdpProblem& problem, const Solution& solution, const PipelineConfig& config,
                                const Progress& progress = {});

}  // namespace flagcert
