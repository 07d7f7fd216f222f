#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "rmp/series.hpp"
#include "rmp/series_cache.hpp"

#ifndef RMP_CLI_PATH
#error "RMP_CLI_PATH must point at the rmp binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + std::string(RMP_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("rmp_cli_test_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("count and oracle") {
    auto r = run_cli("count --m 2 --n 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "2\n");

    r = run_cli("oracle --m 2 --n 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "3\n");

    r = run_cli("count --m 3 --n 9");
    CHECK(r.out == "3\n");
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("count --m 1 --n 4").exit_code == 2);
    CHECK(run_cli("verify --m 2 --j 0 --n-max 1").exit_code == 2);
    CHECK(run_cli("verify --m 2..x --j 1 --n-max 1").exit_code == 2);
    CHECK(run_cli("nonsense --m 2").exit_code == 2);
    CHECK(run_cli("s-table --m 2 --max-j 3 --format yaml").exit_code == 2);
}

TEST_CASE("verify reports and exit codes") {
    auto r = run_cli("verify --m 3 --j 1 --n-max 5 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"total\": 6") != std::string::npos);
    CHECK(r.out.find("\"failed\": 0") != std::string::npos);
    CHECK(r.out.find("\"ok\": false") == std::string::npos);

    r = run_cli("verify --m 2,3 --j 1..2 --n-max 3 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("m,j,n,N,count,modulus,ok,padic\n", 0) == 0);

    // a budget too small for the targets is a resource error
    r = run_cli("verify --m 2 --j 12 --n-max 50");
    CHECK(r.exit_code == 3);
    r = run_cli("verify --m 2 --j 1 --n-max 50 --budget 100");
    CHECK(r.exit_code == 3);
}

TEST_CASE("verify output is deterministic and jobs-independent") {
    const std::string flags = "verify --m 2..4 --j 1..2 --n-max 5 --format json";
    const auto a = run_cli(flags);
    const auto b = run_cli(flags);
    const auto c = run_cli(flags + " --jobs 3");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
}

TEST_CASE("cache fault injection cannot pass silently") {
    TempDir dir;
    const std::string cache_flag = " --cache-dir " + dir.path.string();
    const std::string flags = "verify --m 2 --j 1 --n-max 3 --format json" + cache_flag;

    auto first = run_cli(flags);
    REQUIRE(first.exit_code == 0);

    // find the cache file that was written
    std::filesystem::path cache_file;
    for (const auto& entry : std::filesystem::directory_iterator(dir.path))
        cache_file = entry.path();
    REQUIRE(!cache_file.empty());

    // flip one digit of one coefficient, keeping the JSON well-formed
    std::string text;
    {
        std::ifstream in(cache_file);
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    const auto pos = text.find("\"2\",");
    REQUIRE(pos != std::string::npos);
    std::string corrupted = text;
    corrupted.replace(pos, 4, "\"7\",");
    std::ofstream(cache_file, std::ios::trunc) << corrupted;

    auto tampered = run_cli(flags);
    CHECK(tampered.exit_code != 0);  // integrity error (2) or failed check (1)

    // structural damage is also caught
    std::ofstream(cache_file, std::ios::trunc) << text.substr(0, text.size() / 3);
    tampered = run_cli(flags);
    CHECK(tampered.exit_code != 0);

    // environment variable selects the cache directory
    std::filesystem::remove(cache_file);
    const std::string env = "RMP_CACHE_DIR=" + dir.path.string() + " ";
    auto via_env = run_cli("verify --m 2 --j 1 --n-max 3 --format json", env);
    CHECK(via_env.exit_code == 0);
    CHECK(!std::filesystem::is_empty(dir.path));

    // --no-cache leaves the directory alone
    std::filesystem::remove_all(dir.path);
    std::filesystem::create_directories(dir.path);
    auto no_cache = run_cli("verify --m 2 --j 1 --n-max 3 --no-cache", env);
    CHECK(no_cache.exit_code == 0);
    CHECK(std::filesystem::is_empty(dir.path));
}

TEST_CASE("self-consistent but wrong cache data fails the math check") {
    // A tampered file whose checksum has been fixed up passes integrity
    // validation; the congruence check itself must then catch it (exit 1).
    TempDir dir;
    auto bogus = rmp::restricted_series(2, 40);
    bogus.set_coeff(4, 3);  // c_2(4) is 2; 3 breaks the n = 0 case mod 2
    rmp::store_cached_series(dir.path, 2, bogus);

    const auto r =
        run_cli("verify --m 2 --j 1 --n-max 3 --format json --cache-dir " + dir.path.string());
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("\"ok\": false") != std::string::npos);
    CHECK(r.out.find("\"failed\": 1") != std::string::npos);
}

TEST_CASE("fit respects the budget flag") {
    // the level-4 fit at base 6 needs a series past the default budget
    CHECK(run_cli("fit --m 6 --j 4").exit_code == 3);
    CHECK(run_cli("fit --m 2 --j 4").exit_code == 0);
}

TEST_CASE("s-table output") {
    auto r = run_cli("s-table --m 2 --max-j 3 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"rows\"") != std::string::npos);
    CHECK(r.out.find("[\n      \"0\",\n      \"3\",\n      \"4\"\n    ]") != std::string::npos);

    r = run_cli("s-table --m 2 --max-j 3 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("2,1,3\n") != std::string::npos);
    CHECK(r.out.find("3,3,8\n") != std::string::npos);
}

TEST_CASE("minimal output") {
    auto r = run_cli("minimal --j 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"s[1,1]*s[2,1]\"") != std::string::npos);

    r = run_cli("minimal --j 3 --m 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"divisor\": \"2\"") != std::string::npos);
    CHECK(r.out.find("false") == std::string::npos);
}

TEST_CASE("fit and cross-check") {
    auto r = run_cli("fit --m 2 --j 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"holdout_verified\": true") != std::string::npos);
    CHECK(r.out.find("\"2\",\n    \"8\",\n    \"8\"") != std::string::npos);

    r = run_cli("cross-check --m 2 --j 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"consistent\": true") != std::string::npos);

    r = run_cli("cross-check --m 3 --j 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"consistent\": true") != std::string::npos);
}
