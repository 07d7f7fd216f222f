#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "rmp/errors.hpp"
#include "rmp/series.hpp"
#include "rmp/series_cache.hpp"

using namespace rmp;

namespace {

std::vector<Int> ints(std::initializer_list<long> values) {
    return std::vector<Int>(values.begin(), values.end());
}

// Computed by the literal enumeration oracle (and cross-checked against the
// DP oracle at runtime below); frozen here so the series route is pinned to
// something it cannot influence.
const std::vector<long> kC2Prefix = {1, 1, 1, 2, 2, 3, 3, 5, 5, 7, 7, 10, 10, 13, 13, 18, 18, 23, 23, 30};
const std::vector<long> kC3Prefix = {1, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 6, 6, 6, 8, 8, 8, 10};

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("rmp_test_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("TruncatedSeries basics") {
    CHECK_THROWS_AS(TruncatedSeries(0), std::invalid_argument);
    CHECK_THROWS_AS(TruncatedSeries(std::vector<Int>{}), std::invalid_argument);

    auto one = TruncatedSeries::one(4);
    CHECK(one.trunc() == 4);
    CHECK(one.coeff(0) == 1);
    CHECK(one.coeff(3) == 0);
    CHECK_THROWS_AS(one.coeff(4), std::out_of_range);

    auto other = TruncatedSeries::one(5);
    CHECK_THROWS_AS(one += other, std::invalid_argument);
}

TEST_CASE("divide_by_one_minus_qk examples") {
    // 1/(1-q) is the geometric series
    auto s = divide_by_one_minus_qk(TruncatedSeries::one(4), 1);
    CHECK(s.coeffs() == ints({1, 1, 1, 1}));

    // q/(1-q^2)
    TruncatedSeries q(6);
    q.set_coeff(1, 1);
    CHECK(divide_by_one_minus_qk(q, 2).coeffs() == ints({0, 1, 0, 1, 0, 1}));

    CHECK_THROWS_AS(divide_by_one_minus_qk(q, 0), std::invalid_argument);
}

TEST_CASE("divide then multiply by (1 - q^k) is the identity") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<long> coeff(-9, 9);
    std::uniform_int_distribution<std::size_t> kdist(1, 12);
    for (int round = 0; round < 50; ++round) {
        TruncatedSeries s(32);
        for (std::size_t i = 0; i < 32; ++i) s.set_coeff(i, coeff(rng));
        const std::size_t k = kdist(rng);
        CHECK(divide_by_one_minus_qk(s, k).multiply_by_one_minus_qk(k) == s);
    }
}

TEST_CASE("restricted_series examples") {
    CHECK_THROWS_AS(restricted_series(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(restricted_series(1, 5), std::invalid_argument);

    CHECK(restricted_series(2, 1).coeffs() == ints({1}));
    CHECK(restricted_series(2, 6).coeffs() == ints({1, 1, 1, 2, 2, 3}));
    CHECK(restricted_series(3, 10).coeff(9) == 3);

    auto s2 = restricted_series(2, 20);
    auto s3 = restricted_series(3, 20);
    for (std::size_t n = 0; n < 20; ++n) {
        CHECK(s2.coeff(n) == kC2Prefix[n]);
        CHECK(s3.coeff(n) == kC3Prefix[n]);
    }
}

TEST_CASE("truncation consistency: shorter series are prefixes") {
    for (unsigned m : {2u, 3u, 5u, 7u}) {
        auto small = restricted_series(m, 30);
        auto large = restricted_series(m, 61);
        for (std::size_t n = 0; n < 30; ++n) CHECK(small.coeff(n) == large.coeff(n));
    }
}

TEST_CASE("count_restricted spot values") {
    CHECK_THROWS_AS(PartitionSpec(1, 3), std::invalid_argument);
    CHECK(count_restricted({2, 0}) == 1);
    CHECK(count_restricted({2, 4}) == 2);
    CHECK(count_restricted({2, 5}) == 3);
    CHECK(count_restricted({3, 9}) == 3);
    CHECK(count_restricted({2, 12}) == brute_force_count({2, 12}));
}

TEST_CASE("oracle examples and guards") {
    CHECK(brute_force_count({5, 0}) == 1);
    CHECK(brute_force_count({2, 5}) == 3);
    CHECK(enumerate_count({2, 5}) == 3);
    CHECK(enumerate_count({7, 0}) == 1);

    CHECK_THROWS_AS(brute_force_count({2, kBruteForceLimit + 1}), ResourceLimitError);
    CHECK_THROWS_AS(enumerate_count({2, kEnumerationLimit + 1}), ResourceLimitError);
}

TEST_CASE("oracle equivalence on a medium sweep") {
    for (unsigned m = 2; m <= 6; ++m) {
        auto series = restricted_series(m, 61);
        for (unsigned long n = 0; n <= 60; ++n) {
            CAPTURE(m);
            CAPTURE(n);
            const Int oracle = brute_force_count({m, n});
            CHECK(series.coeff(n) == oracle);
            CHECK(enumerate_count({m, n}) == oracle);
            CHECK(oracle >= 1);  // the all-ones partition always exists
        }
    }
}

TEST_CASE("series cache round trip") {
    TempDir dir;
    {
        SeriesStore store(1000, dir.path);
        CHECK(store.count(2, 30) == restricted_series(2, 31).coeff(30));
        CHECK(std::filesystem::exists(dir.path / cache_file_name(2, 31)));
    }
    // A fresh store is served from disk; a larger file answers by prefix.
    {
        SeriesStore store(1000, dir.path);
        CHECK(store.series(2, 10).coeff(5) == 3);
        CHECK(store.count(2, 30) == restricted_series(2, 31).coeff(30));
        // No smaller file was written for the prefix request.
        CHECK_FALSE(std::filesystem::exists(dir.path / cache_file_name(2, 11)));
    }
}

TEST_CASE("series cache rejects corruption") {
    TempDir dir;
    const auto file = dir.path / cache_file_name(2, 21);

    // valid file
    store_cached_series(dir.path, 2, restricted_series(2, 21));
    CHECK(load_cached_series(file, 2).has_value());

    // stale format version: ignored, not an error
    {
        std::ifstream in(file);
        std::stringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        const auto pos = text.find("\"version\":1");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 11, "\"version\":9");
        std::ofstream(file, std::ios::trunc) << text;
    }
    CHECK_FALSE(load_cached_series(file, 2).has_value());

    // flipped digit (valid JSON, wrong data): integrity error
    store_cached_series(dir.path, 2, restricted_series(2, 21));
    {
        std::ifstream in(file);
        std::stringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        const auto pos = text.find("\"3\"");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 3, "\"4\"");
        std::ofstream(file, std::ios::trunc) << text;
    }
    CHECK_THROWS_AS(load_cached_series(file, 2), CacheError);

    // truncated file: integrity error
    store_cached_series(dir.path, 2, restricted_series(2, 21));
    {
        std::ifstream in(file);
        std::stringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        std::ofstream(file, std::ios::trunc) << text.substr(0, text.size() / 2);
    }
    CHECK_THROWS_AS(load_cached_series(file, 2), CacheError);

    // base mismatch between name and content
    store_cached_series(dir.path, 2, restricted_series(2, 21));
    CHECK_THROWS_AS(load_cached_series(file, 3), CacheError);
}

TEST_CASE("series store budget") {
    SeriesStore store(100);
    CHECK_THROWS_AS(store.series(2, 101), ResourceLimitError);
    CHECK(store.series(2, 100).trunc() == 100);
}
