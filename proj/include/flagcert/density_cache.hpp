#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string_view>

#include "flagcert/density.hpp"

namespace flagcert {

struct CacheError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

/// Hash of the index -> descriptor tables (flags1, flags2, graphs) a table is
/// laid out against. Changes whenever enumeration order would change.
std::uint64_t enumeration_hash(const TypeSigma& sigma, int l1, int l2, int l);

/// Text format, version 1:
///   flagcert-density-cache 1
///   sigma <order> <mask>
///   orders <l1> <l2> <l>
///   enumeration <hex hash>
///   flags1 <n>, then n flag lines; flags2 <n>, ...; graphs <n>, then graph lines
///   entries <n>, then "<g> <i> <j> <p/q>" lines
///   checksum <hex fnv1a of everything above>
void write_density_table(std::ostream& out, const DensityTable& table);

/// Throws CacheError on a malformed file, a checksum failure, or descriptors
/// that disagree with the current enumeration.
DensityTable read_density_table(std::istream& in, const TypeSigma& sigma, int l1, int l2, int l);

struct CacheOptions {
  std::filesystem::path dir;  // empty disables the cache
  bool enabled = true;
  int threads = 1;
};

std::filesystem::path cache_file(const std::filesystem::path& dir, const TypeSigma& sigma, int l1, int l2, int l);

/// averaged_pair_table with read-through / write-back caching. Unreadable or
/// stale files are recomputed and overwritten.
DensityTable cached_pair_table(const TypeSigma& sigma, int l1, int l2, int l, const CacheOptions& options);

}  // namespace flagcert
