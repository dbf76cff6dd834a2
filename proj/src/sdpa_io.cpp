#include "flagcert/sdpa_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace flagcert {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Reads non-comment lines, tracking line numbers. SDPA allows the
/// punctuation characters ,(){} as separators.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line.empty() || line[0] == '"' || line[0] == '*') {
        comments_.push_back(line);
        continue;
      }
      for (char& ch : line)
        if (ch == ',' || ch == '(' || ch == ')' || ch == '{' || ch == '}') ch = ' ';
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      return true;
    }
    return false;
  }

  std::string require(const char* what) {
    std::string line;
    if (!next(line)) throw FormatError(std::string("unexpected end of file, expected ") + what, line_no_ + 1);
    return line;
  }

  int line() const { return line_no_; }
  const std::vector<std::string>& comments() const { return comments_; }

 private:
  std::istream& in_;
  int line_no_ = 0;
  std::vector<std::string> comments_;
};

}  // namespace

void write_sdpa(std::ostream& out, const SdpaProblem& p) {
  out << "\"flagcert density-dual SDP\n";
  out << "* lambda-offset " << g17(p.offset) << '\n';
  out << p.m() << " = mDIM\n" << p.block_sizes.size() << " = nBLOCK\n";
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b) out << (b ? " " : "") << p.block_sizes[b];
  out << '\n';
  for (std::size_t i = 0; i < p.c.size(); ++i) out << (i ? " " : "") << g17(p.c[i]);
  out << '\n';
  for (std::size_t k = 0; k < p.F.size(); ++k)
    for (std::size_t b = 0; b < p.block_sizes.size(); ++b) {
      const int s = p.block_sizes[b];
      const int n = std::abs(s);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < (s < 0 ? i + 1 : n); ++j) {
          const double v = p.F[k].get(b, i, j);
          if (v != 0) out << k << ' ' << b + 1 << ' ' << i + 1 << ' ' << j + 1 << ' ' << g17(v) << '\n';
        }
    }
}

SdpaProblem read_sdpa(std::istream& in) {
  LineReader r(in);
  SdpaProblem p;
  long m = 0, nblocks = 0;
  {
    std::istringstream s(r.require("mDIM"));
    if (!(s >> m) || m < 0) throw FormatError("bad mDIM", r.line());
  }
  {
    std::istringstream s(r.require("nBLOCK"));
    if (!(s >> nblocks) || nblocks <= 0) throw FormatError("bad nBLOCK", r.line());
  }
  {
    std::istringstream s(r.require("block structure"));
    for (long b = 0; b < nblocks; ++b) {
      int size = 0;
      if (!(s >> size) || size == 0) throw FormatError("bad block structure", r.line());
      p.block_sizes.push_back(size);
    }
    std::string rest;
    if (s >> rest && (std::isdigit(static_cast<unsigned char>(rest[0])) || rest[0] == '-' || rest[0] == '+'))
      throw FormatError("more block sizes than nBLOCK", r.line());
  }
  {
    std::string line = r.require("objective vector");
    std::istringstream s(line);
    for (long i = 0; i < m; ++i) {
      double v = 0;
      while (!(s >> v)) {
        if (!s.eof()) throw FormatError("bad objective coefficient", r.line());
        s.clear();
        s.str(r.require("objective vector"));
      }
      p.c.push_back(v);
    }
  }
  p.F.assign(static_cast<std::size_t>(m) + 1, BlockMatrix::zeros(p.block_sizes));
  std::string line;
  while (r.next(line)) {
    std::istringstream s(line);
    long k = 0, b = 0, i = 0, j = 0;
    double v = 0;
    if (!(s >> k >> b >> i >> j >> v)) throw FormatError("malformed entry", r.line());
    if (k < 0 || k > m) throw FormatError("matrix number out of range", r.line());
    if (b < 1 || b > nblocks) throw FormatError("block number out of range", r.line());
    const int size = p.block_sizes[b - 1];
    const int n = std::abs(size);
    if (i < 1 || j < 1 || i > n || j > n) throw FormatError("entry index out of range for block", r.line());
    if (size < 0 && i != j) throw FormatError("off-diagonal entry in a diagonal block", r.line());
    p.F[k].set(b - 1, static_cast<int>(i - 1), static_cast<int>(j - 1), v);
  }
  for (const auto& c : r.comments()) {
    std::istringstream s(c.substr(1));
    std::string key;
    double v = 0;
    if (s >> key >> v && key == "lambda-offset") p.offset = v;
  }
  return p;
}

void write_solution(std::ostream& out, const Solution& s) {
  out << g17(s.lambda) << '\n';
  for (const auto& block : s.blocks) {
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(block.size()))));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << g17(block[i * n + j]);
      out << '\n';
    }
  }
}

Solution read_solution(std::istream& in, const SdpProblem& p) {
  int line_no = 0;
  std::string line;
  auto next = [&](const char* what) {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos && line[0] != '#') return;
    }
    throw FormatError(std::string("unexpected end of file, expected ") + what, line_no + 1);
  };
  Solution s;
  next("lambda");
  {
    std::istringstream ls(line);
    if (!(ls >> s.lambda)) throw FormatError("bad lambda", line_no);
  }
  for (const auto& block : p.blocks) {
    std::vector<double> values;
    for (int i = 0; i < block.dim; ++i) {
      next("matrix row");
      std::istringstream ls(line);
      double v = 0;
      int count = 0;
      while (ls >> v) {
        values.push_back(v);
        ++count;
      }
      if (!ls.eof() || count != block.dim)
        throw FormatError("expected " + std::to_string(block.dim) + " values for block " + block.id, line_no);
    }
    s.blocks.push_back(std::move(values));
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      throw FormatError("trailing data after the last block", line_no);
  }
  return s;
}

Solution read_csdp_solution(std::istream& in, const SdpProblem& p, const SdpaProblem& sdpa) {
  int line_no = 0;
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty solution file", 1);
  ++line_no;
  {
    std::istringstream s(line);
    double v = 0;
    std::size_t count = 0;
    while (s >> v) ++count;
    if (count != sdpa.m()) throw FormatError("expected " + std::to_string(sdpa.m()) + " values of x", line_no);
  }
  BlockMatrix Y = BlockMatrix::zeros(sdpa.block_sizes);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream s(line);
    long k = 0, b = 0, i = 0, j = 0;
    double v = 0;
    if (!(s >> k >> b >> i >> j >> v)) throw FormatError("malformed entry", line_no);
    if (k != 1 && k != 2) throw FormatError("matrix number must be 1 or 2", line_no);
    if (b < 1 || b > static_cast<long>(sdpa.block_sizes.size())) throw FormatError("block number out of range", line_no);
    const int size = sdpa.block_sizes[b - 1];
    const int n = std::abs(size);
    if (i < 1 || j < 1 || i > n || j > n || (size < 0 && i != j)) throw FormatError("entry index out of range", line_no);
    if (k == 2) Y.set(b - 1, static_cast<int>(i - 1), static_cast<int>(j - 1), v);
  }
  return solution_from_dual(p, sdpa, Y);
}

}  // namespace flagcert
