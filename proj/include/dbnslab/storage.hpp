#pragma once

// Binary cache of k* arrays.
//
// Layout (all multi-byte integers little-endian):
//   4 bytes   magic "DBN1"
//   1 byte    version (1)
//   1 byte    q, then q x uint32 bases
//   1 byte    digit count, then that many uint32 digits
//   1 byte    n
//   2^n bytes k*_m for m = 0 .. 2^n - 1

#include "dbnslab/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace dbnslab {

inline constexpr std::uint8_t kCacheVersion = 1;
inline constexpr const char* kCacheDirEnv = "DBNSLAB_CACHE_DIR";

/// Written to a sibling temp file, then renamed into place.
void save_table(const OptimalTable& table, const std::filesystem::path& path);

/// Throws BadMagic, BadVersion, Corrupt or IoError.
OptimalTable load_table(const std::filesystem::path& path);

/// Expected file size for a system and n.
std::uint64_t cache_file_size(const BaseSystem& system, unsigned n);

/// File name for a (system, n) pair, e.g. "kstar_b2-3_d1_n12.dbn".
std::string cache_file_name(const BaseSystem& system, unsigned n);

/// Explicit directory if given, else $DBNSLAB_CACHE_DIR, else none.
std::optional<std::filesystem::path> resolve_cache_dir(const std::optional<std::string>& explicit_dir);

/// Loads the cached table when present and valid; otherwise solves and, when a
/// directory is given, stores the result. Unreadable cache files are recomputed.
OptimalTable load_or_solve(const BaseSystem& system, unsigned n, unsigned cap,
                           const std::optional<std::filesystem::path>& cache_dir);

}  // namespace dbnslab
