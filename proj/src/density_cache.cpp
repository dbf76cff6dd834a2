#include "flagcert/density_cache.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace flagcert {

namespace {

constexpr std::string_view kMagic = "flagcert-density-cache 1";

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

std::string descriptor_block(const std::vector<Flag>& flags1, const std::vector<Flag>& flags2,
                             const std::vector<Graph>& graphs) {
  std::ostringstream s;
  s << "flags1 " << flags1.size() << '\n';
  for (const auto& f : flags1) s << format_flag(f) << '\n';
  s << "flags2 " << flags2.size() << '\n';
  for (const auto& f : flags2) s << format_flag(f) << '\n';
  s << "graphs " << graphs.size() << '\n';
  for (const auto& g : graphs) s << format_graph_line(g) << '\n';
  return s.str();
}

std::string header(const TypeSigma& sigma, int l1, int l2, int l, std::uint64_t enum_hash) {
  std::ostringstream s;
  s << kMagic << '\n'
    << "sigma " << sigma.order() << ' ' << sigma.graph.mask() << '\n'
    << "orders " << l1 << ' ' << l2 << ' ' << l << '\n'
    << "enumeration " << hex(enum_hash) << '\n';
  return s.str();
}

std::string next_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) throw CacheError(std::string("density cache truncated before ") + what);
  return line;
}

std::size_t expect_count(const std::string& line, std::string_view word) {
  std::istringstream s(line);
  std::string w;
  std::size_t n = 0;
  if (!(s >> w >> n) || w != word) throw CacheError("density cache: expected '" + std::string(word) + " <n>'");
  return n;
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t enumeration_hash(const TypeSigma& sigma, int l1, int l2, int l) {
  return fnv1a(descriptor_block(enumerate_flags(sigma, l1), enumerate_flags(sigma, l2), enumerate_graphs(l)));
}

void write_density_table(std::ostream& out, const DensityTable& t) {
  const std::string descriptors = descriptor_block(t.flags1, t.flags2, t.graphs);
  std::ostringstream body;
  body << header(t.sigma, t.l1, t.l2, t.l, fnv1a(descriptors)) << descriptors;
  std::size_t count = 0;
  for (const auto& row : t.entries) count += row.size();
  body << "entries " << count << '\n';
  for (std::size_t g = 0; g < t.entries.size(); ++g)
    for (const auto& [ij, p] : t.entries[g]) body << g << ' ' << ij.first << ' ' << ij.second << ' ' << p << '\n';
  const std::string text = body.str();
  out << text << "checksum " << hex(fnv1a(text)) << '\n';
}

DensityTable read_density_table(std::istream& in, const TypeSigma& sigma, int l1, int l2, int l) {
  DensityTable t;
  t.sigma = sigma;
  t.l1 = l1;
  t.l2 = l2;
  t.l = l;
  t.flags1 = enumerate_flags(sigma, l1);
  t.flags2 = enumerate_flags(sigma, l2);
  t.graphs = enumerate_graphs(l);
  const std::string descriptors = descriptor_block(t.flags1, t.flags2, t.graphs);
  const std::string expected_head = header(sigma, l1, l2, l, fnv1a(descriptors)) + descriptors;

  std::string text;
  std::istringstream expected(expected_head);
  for (std::string want; std::getline(expected, want);) {
    std::string got = next_line(in, "end of header");
    if (got != want) throw CacheError("density cache: header mismatch ('" + got + "' vs '" + want + "')");
    text += got + '\n';
  }
  std::string line = next_line(in, "entries");
  text += line + '\n';
  const std::size_t count = expect_count(line, "entries");
  t.entries.assign(t.graphs.size(), {});
  for (std::size_t e = 0; e < count; ++e) {
    line = next_line(in, "entry");
    text += line + '\n';
    std::istringstream s(line);
    std::size_t g = 0;
    int i = 0, j = 0;
    std::string value;
    if (!(s >> g >> i >> j >> value) || g >= t.graphs.size() || i < 0 || j < 0 ||
        i >= static_cast<int>(t.flags1.size()) || j >= static_cast<int>(t.flags2.size()))
      throw CacheError("density cache: bad entry line '" + line + "'");
    try {
      t.entries[g][{i, j}] = parse_rational(value);
    } catch (const std::exception&) {
      throw CacheError("density cache: bad rational '" + value + "'");
    }
  }
  line = next_line(in, "checksum");
  if (line != "checksum " + hex(fnv1a(text))) throw CacheError("density cache: checksum mismatch");
  return t;
}

std::filesystem::path cache_file(const std::filesystem::path& dir, const TypeSigma& sigma, int l1, int l2, int l) {
  std::ostringstream name;
  name << "pairs-k" << sigma.order() << "-m" << sigma.graph.mask() << '-' << l1 << '-' << l2 << '-' << l << '-'
       << hex(enumeration_hash(sigma, l1, l2, l)) << ".txt";
  return dir / name.str();
}

DensityTable cached_pair_table(const TypeSigma& sigma, int l1, int l2, int l, const CacheOptions& options) {
  if (!options.enabled || options.dir.empty()) return averaged_pair_table(sigma, l1, l2, l, options.threads);
  const auto path = cache_file(options.dir, sigma, l1, l2, l);
  if (std::ifstream in(path); in) {
    try {
      return read_density_table(in, sigma, l1, l2, l);
    } catch (const CacheError&) {
      // stale or damaged: fall through and rebuild
    }
  }
  DensityTable table = averaged_pair_table(sigma, l1, l2, l, options.threads);
  std::error_code ec;
  std::filesystem::create_directories(options.dir, ec);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (out) write_density_table(out, table);
  }
  std::filesystem::rename(tmp, path, ec);
  return table;
}

}  // namespace flagcert
