#include "flagcert/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "flagcert/density.hpp"

namespace flagcert {

namespace {

bool skip(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

std::ifstream open_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

}  // namespace

Rational reference_bound() { return Rational(1) / parse_rational("34.7858"); }

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("FLAGCERT_DATA_DIR"); env && *env) return env;
#ifdef FLAGCERT_DATA_DIR
  return FLAGCERT_DATA_DIR;
#else
  return "data";
#endif
}

std::vector<std::pair<std::size_t, Rational>> read_indexed_column(std::istream& in) {
  std::vector<std::pair<std::size_t, Rational>> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip(line)) continue;
    std::istringstream s(line);
    std::size_t i = 0;
    std::string value;
    if (!(s >> i >> value)) throw std::runtime_error("line " + std::to_string(line_no) + ": expected '<index> <value>'");
    out.emplace_back(i, parse_rational(value));
  }
  return out;
}

RationalMatrix read_scaled_matrix(std::istream& in) {
  std::string line;
  Rational denominator;
  bool have_den = false;
  std::vector<std::vector<Rational>> rows;
  while (std::getline(in, line)) {
    if (skip(line)) continue;
    std::istringstream s(line);
    std::string tok;
    std::vector<Rational> row;
    while (s >> tok) row.push_back(parse_rational(tok));
    if (!have_den) {
      if (row.size() != 1 || row[0] <= 0) throw std::runtime_error("scaled matrix: first line must be the denominator");
      denominator = row[0];
      have_den = true;
    } else {
      rows.push_back(std::move(row));
    }
  }
  RationalMatrix m(static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::runtime_error("scaled matrix: not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j] / denominator;
  }
  return m;
}

LColumnReport l_column_check(const std::filesystem::path& graphs_file, const std::filesystem::path& column_file) {
  auto gin = open_fixture(graphs_file);
  auto cin = open_fixture(column_file);
  const auto shipped_graphs = read_graph_file(gin);
  const auto column = read_indexed_column(cin);
  if (shipped_graphs.size() != column.size())
    throw std::runtime_error("graph table and L column differ in length");

  const auto classes = enumerate_graphs(6);
  const auto objective = objective_column(4, 6);
  const Rational scale = factorial(6);
  const Rational ref = reference_bound();
  LColumnReport r;
  for (std::size_t k = 0; k < column.size(); ++k) {
    const auto& [index, shipped] = column[k];
    if (index >= shipped_graphs.size()) throw std::runtime_error("L column index out of range");
    LColumnRow row;
    row.index = index;
    row.graph = shipped_graphs[index];
    const auto ci = class_index(classes, row.graph);
    if (!ci) throw std::runtime_error("shipped graph " + std::to_string(index) + " is not an order-6 class");
    row.class_index = *ci;
    row.objective = objective[*ci];
    row.computed = scale * (row.objective - ref);
    row.shipped = shipped;
    row.deviation = std::abs(to_double(row.computed - shipped));
    r.max_deviation = std::max(r.max_deviation, row.deviation);
    r.rows.push_back(std::move(row));
  }
  return r;
}

LColumnReport l_column_check() {
  return l_column_check(data_dir() / "reference_graphs.txt", data_dir() / "l_column.tsv");
}

void write_l_column_tsv(std::ostream& out, const LColumnReport& r) {
  out << "# G\tobj\t6!L computed\t6!L shipped\tdeviation\n";
  for (const auto& row : r.rows) {
    char dev[32];
    std::snprintf(dev, sizeof dev, "%.2e", row.deviation);
    out << row.index << '\t' << to_string(row.objective) << '\t' << to_decimal(row.computed, 4) << '\t'
        << to_decimal(row.shipped, 4) << '\t' << dev << '\n';
  }
  char maxdev[32];
  std::snprintf(maxdev, sizeof maxdev, "%.3e", r.max_deviation);
  out << "# max deviation " << maxdev << '\n';
}

}  // namespace flagcert
