#pragma once

// Optional on-disk cache for restricted series plus the memoizing provider
// the sweep drivers share. A cache directory holds files cm_<m>_<trunc>.json;
// any file with trunc' >= trunc answers a request for (m, trunc) by prefix.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "rmp/series.hpp"

namespace rmp {

inline constexpr std::size_t kDefaultSeriesBudget = 200000;
inline constexpr int kCacheFormatVersion = 1;

std::string cache_file_name(unsigned m, std::size_t trunc);

/// Parse and integrity-check one cache file. Returns nullopt when the file
/// carries a different format version (stale formats are ignored, not
/// errors). Structural corruption — unparseable JSON, missing fields, base
/// mismatch, length mismatch, bad digit strings, checksum mismatch — throws
/// CacheError.
std::optional<TruncatedSeries> load_cached_series(const std::filesystem::path& file, unsigned expected_m);

/// Write cm_<m>_<trunc>.json into dir (atomically, via temp file + rename).
void store_cached_series(const std::filesystem::path& dir, unsigned m, const TruncatedSeries& series);

/// Memoizing series provider with a hard truncation budget and an optional
/// read/write-through disk cache. Not thread-safe; concurrent sweep workers
/// each own a store (they may share one cache directory).
class SeriesStore {
public:
    explicit SeriesStore(std::size_t budget = kDefaultSeriesBudget,
                         std::optional<std::filesystem::path> cache_dir = std::nullopt);

    /// The series for base m with trunc() >= min_trunc. The reference stays
    /// valid until the next request for the same m with a larger truncation.
    const TruncatedSeries& series(unsigned m, std::size_t min_trunc);

    /// c_m(n) through the store.
    Int count(unsigned m, unsigned long n);

    std::size_t budget() const noexcept { return budget_; }
    const std::optional<std::filesystem::path>& cache_dir() const noexcept { return cache_dir_; }

private:
    std::size_t budget_;
    std::optional<std::filesystem::path> cache_dir_;
    std::map<unsigned, TruncatedSeries> memo_;
};

}  // namespace rmp
