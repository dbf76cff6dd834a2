#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "flagcert/rational_psd.hpp"
#include "flagcert/sdp.hpp"
#include "flagcert/solver.hpp"

namespace flagcert {

struct CertificateBlock {
  TypeSigma sigma;
  Parity parity = Parity::Plus;
  std::vector<FlagVector> basis;
  RationalMatrix matrix;
};

/// Claim: for every graph G of order l,
///   obj_G - bound - sum_blocks matrix . M_G(block basis) >= 0,
/// with every matrix PSD.
struct Certificate {
  int t = 0;
  int l = 0;
  Rational bound;
  std::vector<CertificateBlock> blocks;
};

/// Entries rounded to the nearest multiple of 1/denominator after
/// symmetrisation. A block whose rounding is not PSD is rebuilt from its
/// eigendecomposition with eigenvalues clamped at a margin (starting at
/// dim/denominator, growing tenfold) until the rounded matrix is PSD.
/// Blocks shared by several terms are emitted once per term.
///
/// The bound is the largest candidate <= lambda + margin; with no such
/// candidate it is lambda - margin rounded down to a multiple of
/// 1/denominator.
Certificate round_solution(const SdpProblem& p, const Solution& s, const BigInt& denominator, const Rational& margin,
                           const std::vector<Rational>& candidates);

/// Exact rounding of one symmetric float matrix (no PSD repair).
RationalMatrix round_matrix(const std::vector<double>& values, int dim, const BigInt& denominator);

struct SlackRow {
  std::size_t graph_index = 0;
  Graph graph;
  Rational objective;
  Rational L;  // objective - bound
  Rational R;  // sum of matrix . M_G
  Rational diff() const { return L - R; }
};

struct SlackReport {
  Rational bound;
  int l = 0;
  std::vector<SlackRow> rows;
  std::vector<PsdResult> psd;
  bool all_psd = false;
  bool all_slacks_nonnegative = false;
  bool passed() const { return all_psd && all_slacks_nonnegative; }
  /// Row with the smallest diff.
  std::size_t tightest_row() const;
};

/// Recomputes every coefficient matrix and the objective column from
/// scratch (no cache), checks each matrix PSD exactly and every slack.
/// Throws std::invalid_argument if a block's basis or dimensions do not
/// resolve.
SlackReport verify_certificate(const Certificate& c, int threads = 1);

/// JSON: {"format", "problem": {t, l}, "bound": "p/q", "blocks": [{"type",
/// "parity", "basis": [[[coeff, flag text], ...], ...], "matrix": [[...]]}]}.
std::string certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const std::string& text);

/// TSV with columns index, l!L, l!R, (l!L - l!R)*10^3, 4 decimals.
void write_slack_tsv(std::ostream& out, const SlackReport& r);

}  // namespace flagcert
