#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "flagcert/solver.hpp"

namespace flagcert {

/// Parse failure with the 1-based line it occurred on.
struct FormatError : std::runtime_error {
  FormatError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

/// SDPA sparse (.dat-s). Values are written with %.17g; the lambda offset
/// travels in a leading comment line "* lambda-offset <value>".
void write_sdpa(std::ostream& out, const SdpaProblem& p);
SdpaProblem read_sdpa(std::istream& in);

/// Native solution text: lambda on the first line, then for each problem
/// block its rows, one row per line, blocks in problem order.
void write_solution(std::ostream& out, const Solution& s);
/// Validates block count and dimensions against the problem.
Solution read_solution(std::istream& in, const SdpProblem& p);

/// Solution file of an external solver in the CSDP layout: the vector x on
/// the first line, then "<matno> <block> <i> <j> <value>" entries where
/// matno 1 is the primal slack and matno 2 the dual matrix Y of the SDPA
/// form exported by write_sdpa.
Solution read_csdp_solution(std::istream& in, const SdpProblem& p, const SdpaProblem& sdpa);

}  // namespace flagcert
