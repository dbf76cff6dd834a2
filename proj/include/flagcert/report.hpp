#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "flagcert/graph.hpp"
#include "flagcert/matrix.hpp"

namespace flagcert {

/// 1/34.7858 as an exact rational.
Rational reference_bound();

/// FLAGCERT_DATA_DIR from the environment, else the build-time data directory.
std::filesystem::path data_dir();

/// "<i>\t<value>" lines; '#' lines skipped. Values kept exact.
std::vector<std::pair<std::size_t, Rational>> read_indexed_column(std::istream& in);

/// First non-comment line is the common denominator, then one row per line.
RationalMatrix read_scaled_matrix(std::istream& in);

struct LColumnRow {
  std::size_t index = 0;
  Graph graph;
  std::size_t class_index = 0;  // position in enumerate_graphs(6)
  Rational objective;
  Rational computed;  // 6! (objective - reference bound)
  Rational shipped;
  double deviation = 0;
};

struct LColumnReport {
  std::vector<LColumnRow> rows;
  double max_deviation = 0;
  bool passed(double tolerance = 5e-5) const { return rows.size() == 156 && max_deviation < tolerance; }
};

/// Compares 6!(obj_G - 1/34.7858) for every shipped order-6 graph with the
/// shipped 6!L column. Throws std::runtime_error if a fixture is missing or
/// the two tables disagree in length.
LColumnReport l_column_check(const std::filesystem::path& graphs_file, const std::filesystem::path& column_file);
LColumnReport l_column_check();

/// index, objective, computed 6!L, shipped 6!L, deviation.
void write_l_column_tsv(std::ostream& out, const LColumnReport& r);

}  // namespace flagcert
