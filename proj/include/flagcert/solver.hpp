#pragma once

#include <stdexcept>
#include <vector>

#include "flagcert/sdp.hpp"

namespace flagcert {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Block-diagonal symmetric matrix. A negative size marks a diagonal block
/// (SDPA convention); diagonal blocks store |size| values, dense blocks
/// size*size values row-major.
struct BlockMatrix {
  std::vector<int> sizes;
  std::vector<std::vector<double>> data;

  static BlockMatrix zeros(const std::vector<int>& sizes);
  double get(std::size_t b, int i, int j) const;
  /// Sets (i, j) and (j, i).
  void set(std::size_t b, int i, int j, double v);
};

/// SDPA standard form.
///   (P) minimise c^T x  s.t.  X = sum_i F_i x_i - F_0 >= 0
///   (D) maximise F_0 . Y  s.t.  F_i . Y = c_i,  Y >= 0
/// F holds F_0 .. F_m.
struct SdpaProblem {
  std::vector<int> block_sizes;
  std::vector<double> c;
  std::vector<BlockMatrix> F;
  /// Added to both objectives to recover lambda.
  double offset = 0;

  std::size_t m() const { return c.size(); }
};

/// Converts the feasibility form to the density dual with the last graph's
/// weight eliminated through sum_g lambda_coeff[g] y_g = 1. Block 0 is the
/// diagonal block of graph slacks; block b+1 is the problem's block b. The
/// optimum of (D) plus offset is the optimal lambda.
SdpaProblem to_sdpa(const SdpProblem& p);

struct IpmOptions {
  int max_iterations = 200;
  double gap_tolerance = 1e-9;
  double feasibility_tolerance = 1e-9;
  double step_fraction = 0.9;
  double initial_scale = 10.0;
  /// Stop after this many iterations without improving max(gap, infeasibility).
  int stall_iterations = 15;
  /// On a stall or the iteration cap, the best iterate is still returned
  /// (flagged reduced_accuracy) when its gap and infeasibilities are below this.
  double acceptable_tolerance = 1e-6;
  bool verbose = false;
};

struct IpmResult {
  std::vector<double> x;
  BlockMatrix X;
  BlockMatrix Y;
  double primal_objective = 0;
  double dual_objective = 0;
  double relative_gap = 0;
  double primal_infeasibility = 0;
  double dual_infeasibility = 0;
  int iterations = 0;
  bool reduced_accuracy = false;
};

/// Infeasible primal-dual interior-point method, HKM direction with
/// Mehrotra predictor-corrector. Throws SolverError when the iteration
/// breaks down or stops short of acceptable_tolerance.
IpmResult solve_sdpa(const SdpaProblem& p, const IpmOptions& options = {});

struct Solution {
  double lambda = 0;
  /// Per problem block, dim*dim row-major.
  std::vector<std::vector<double>> blocks;
  int iterations = 0;
  double relative_gap = 0;
  double primal_infeasibility = 0;
  double dual_infeasibility = 0;
  bool reduced_accuracy = false;
};

/// lambda = offset + F_0 . Y and the matrix variables from the dense blocks of Y.
Solution solution_from_dual(const SdpProblem& p, const SdpaProblem& sdpa, const BlockMatrix& Y);

Solution solve(const SdpProblem& p, const IpmOptions& options = {});

}  // namespace flagcert
