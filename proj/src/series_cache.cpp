#include "rmp/series_cache.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <utility>
#include <vector>

#include "rmp/errors.hpp"

namespace rmp {

namespace {

using nlohmann::ordered_json;

// FNV-1a over "<m>|<trunc>|" followed by one "<coeff>\n" per coefficient.
// Guards cached data against bit rot and hand edits.
std::string coeff_checksum(unsigned m, std::size_t trunc, const std::vector<std::string>& coeffs) {
    std::uint64_t h = 1469598103934665603ULL;
    auto feed = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    };
    feed(std::to_string(m) + "|" + std::to_string(trunc) + "|");
    for (const auto& c : coeffs) feed(c + "\n");
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

[[noreturn]] void corrupt(const std::filesystem::path& file, const std::string& why) {
    throw CacheError("cache integrity error in " + file.string() + ": " + why);
}

}  // namespace

std::string cache_file_name(unsigned m, std::size_t trunc) {
    return "cm_" + std::to_string(m) + "_" + std::to_string(trunc) + ".json";
}

std::optional<TruncatedSeries> load_cached_series(const std::filesystem::path& file, unsigned expected_m) {
    std::ifstream in(file);
    if (!in) corrupt(file, "unreadable");
    ordered_json doc = ordered_json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) corrupt(file, "not a JSON object");

    // An unknown format version means a stale file, not corruption.
    if (!doc.contains("version") || !doc["version"].is_number_integer()) corrupt(file, "missing version");
    if (doc["version"].get<int>() != kCacheFormatVersion) return std::nullopt;

    for (const char* key : {"m", "trunc", "coeffs", "checksum"})
        if (!doc.contains(key)) corrupt(file, std::string("missing field '") + key + "'");
    if (!doc["m"].is_number_unsigned() || doc["m"].get<unsigned>() != expected_m)
        corrupt(file, "base mismatch");
    if (!doc["trunc"].is_number_unsigned()) corrupt(file, "bad trunc");
    const auto trunc = doc["trunc"].get<std::size_t>();
    if (!doc["coeffs"].is_array() || doc["coeffs"].size() != trunc || trunc == 0)
        corrupt(file, "coefficient count does not match trunc");

    std::vector<std::string> raw;
    raw.reserve(trunc);
    for (const auto& c : doc["coeffs"]) {
        if (!c.is_string()) corrupt(file, "coefficient is not a decimal string");
        raw.push_back(c.get<std::string>());
    }
    if (!doc["checksum"].is_string() ||
        doc["checksum"].get<std::string>() != coeff_checksum(expected_m, trunc, raw))
        corrupt(file, "checksum mismatch");

    std::vector<Int> coeffs;
    coeffs.reserve(trunc);
    try {
        for (const auto& s : raw) coeffs.push_back(parse_decimal(s));
    } catch (const std::invalid_argument&) {
        corrupt(file, "coefficient is not a decimal integer");
    }
    return TruncatedSeries(std::move(coeffs));
}

void store_cached_series(const std::filesystem::path& dir, unsigned m, const TruncatedSeries& series) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> raw;
    raw.reserve(series.trunc());
    for (const auto& c : series.coeffs()) raw.push_back(to_decimal(c));

    ordered_json doc;
    doc["version"] = kCacheFormatVersion;
    doc["m"] = m;
    doc["trunc"] = series.trunc();
    doc["coeffs"] = raw;
    doc["checksum"] = coeff_checksum(m, series.trunc(), raw);

    const auto target = dir / cache_file_name(m, series.trunc());
    const auto tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw CacheError("cache write failed: " + tmp);
        out << doc.dump() << '\n';
    }
    std::filesystem::rename(tmp, target);
}

SeriesStore::SeriesStore(std::size_t budget, std::optional<std::filesystem::path> cache_dir)
    : budget_(budget), cache_dir_(std::move(cache_dir)) {}

const TruncatedSeries& SeriesStore::series(unsigned m, std::size_t min_trunc) {
    if (min_trunc == 0) throw std::invalid_argument("SeriesStore: trunc must be >= 1");
    auto it = memo_.find(m);
    if (it != memo_.end() && it->second.trunc() >= min_trunc) return it->second;

    if (min_trunc > budget_)
        throw ResourceLimitError("series truncation " + std::to_string(min_trunc) +
                                 " exceeds the budget of " + std::to_string(budget_) + " coefficients");

    if (cache_dir_ && std::filesystem::is_directory(*cache_dir_)) {
        // Cheapest sufficient file first.
        const std::string prefix = "cm_" + std::to_string(m) + "_";
        std::vector<std::pair<std::size_t, std::filesystem::path>> candidates;
        for (const auto& entry : std::filesystem::directory_iterator(*cache_dir_)) {
            const std::string name = entry.path().filename().string();
            if (name.rfind(prefix, 0) != 0 || entry.path().extension() != ".json") continue;
            const std::string mid = name.substr(prefix.size(), name.size() - prefix.size() - 5);
            if (mid.empty() || mid.find_first_not_of("0123456789") != std::string::npos) continue;
            const auto trunc = std::stoull(mid);
            if (trunc >= min_trunc) candidates.emplace_back(trunc, entry.path());
        }
        std::sort(candidates.begin(), candidates.end());
        for (const auto& [trunc, path] : candidates) {
            auto loaded = load_cached_series(path, m);
            if (!loaded) continue;  // stale format version
            auto [pos, _] = memo_.insert_or_assign(m, std::move(*loaded));
            return pos->second;
        }
    }

    auto [pos, _] = memo_.insert_or_assign(m, restricted_series(m, min_trunc));
    if (cache_dir_) store_cached_series(*cache_dir_, m, pos->second);
    return pos->second;
}

Int SeriesStore::count(unsigned m, unsigned long n) { return series(m, n + 1).coeff(n); }

}  // namespace rmp
