// rmp - restricted m-ary partition counts and congruence checks.
//
// Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 usage or
// configuration error, 3 resource budget exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <iterator>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "rmp/binom.hpp"
#include "rmp/errors.hpp"
#include "rmp/series.hpp"
#include "rmp/series_cache.hpp"
#include "rmp/symbolic.hpp"
#include "rmp/verify.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

constexpr const char* kCacheDirEnvVar = "RMP_CACHE_DIR";

// Inclusive list/range syntax: "3", "2..6", "2,5..7,9".
std::vector<unsigned> parse_values(const std::string& text, unsigned min_value, const char* what) {
    std::vector<unsigned> out;
    std::size_t pos = 0;
    auto fail = [&] {
        throw CLI::ValidationError(std::string(what), "expected <n>, <a>..<b> or a comma list, got '" + text + "'");
    };
    auto number = [&]() -> unsigned long {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail();
        return std::stoul(text.substr(start, pos - start));
    };
    while (true) {
        unsigned long lo = number(), hi = lo;
        if (text.compare(pos, 2, "..") == 0) {
            pos += 2;
            hi = number();
        }
        if (lo > hi || hi > 1000000ul) fail();
        for (unsigned long v = lo; v <= hi; ++v) out.push_back(static_cast<unsigned>(v));
        if (pos == text.size()) break;
        if (text[pos] != ',') fail();
        ++pos;
    }
    for (unsigned v : out)
        if (v < min_value)
            throw CLI::ValidationError(std::string(what),
                                       "value " + std::to_string(v) + " below the minimum of " +
                                           std::to_string(min_value));
    return out;
}

struct CacheOptions {
    std::string dir;
    bool no_cache = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--cache-dir", dir, "Series cache directory (default: $RMP_CACHE_DIR)");
        cmd->add_flag("--no-cache", no_cache, "Disable the series cache");
    }

    std::optional<std::filesystem::path> resolve() const {
        if (no_cache) return std::nullopt;
        if (!dir.empty()) return std::filesystem::path(dir);
        if (const char* env = std::getenv(kCacheDirEnvVar); env && *env)
            return std::filesystem::path(env);
        return std::nullopt;
    }
};

std::string json_line(const ordered_json& doc) { return doc.dump(2) + "\n"; }

// ---- verify -------------------------------------------------------------

struct VerifyArgs {
    std::string m_spec, j_spec;
    unsigned long n_max = 0;
    std::size_t budget = rmp::kDefaultSeriesBudget;
    std::string format = "json";
    unsigned jobs = 1;
    CacheOptions cache;
};

ordered_json case_to_json(const rmp::CongruenceCase& c) {
    return ordered_json{{"m", c.m},
                        {"j", c.j},
                        {"n", c.n},
                        {"N", c.target},
                        {"count", rmp::to_decimal(c.count)},
                        {"modulus", rmp::to_decimal(c.modulus)},
                        {"ok", c.ok},
                        {"padic", c.padic}};
}

int run_verify(const VerifyArgs& args) {
    const auto ms = parse_values(args.m_spec, 2, "--m");
    const auto js = parse_values(args.j_spec, 1, "--j");
    const auto cache_dir = args.cache.resolve();

    // One work item per base so each worker computes its series once, sized
    // for the largest level.
    std::vector<std::vector<rmp::CongruenceCase>> results(ms.size());
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        rmp::SeriesStore store(args.budget, cache_dir);
        for (;;) {
            const std::size_t slot = next.fetch_add(1);
            if (slot >= ms.size()) return;
            try {
                const unsigned m = ms[slot];
                unsigned long max_trunc = 0;
                for (unsigned j : js) {
                    const rmp::Int t = rmp::theorem_target(m, j, args.n_max);
                    if (!t.fits_ulong_p() || t.get_ui() >= args.budget)
                        throw rmp::ResourceLimitError(
                            "theorem target " + t.get_str() + " at m=" + std::to_string(m) +
                            ", j=" + std::to_string(j) + " needs a series past the budget of " +
                            std::to_string(args.budget) + " coefficients");
                    max_trunc = std::max(max_trunc, t.get_ui() + 1);
                }
                store.series(m, max_trunc);
                for (unsigned j : js) {
                    auto cases = rmp::verify_theorem(m, j, args.n_max, store);
                    results[slot].insert(results[slot].end(), cases.begin(), cases.end());
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    const unsigned thread_count = std::max(1u, std::min<unsigned>(args.jobs, ms.size()));
    if (thread_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<rmp::CongruenceCase> cases;
    for (auto& part : results) cases.insert(cases.end(), std::make_move_iterator(part.begin()),
                                            std::make_move_iterator(part.end()));
    std::sort(cases.begin(), cases.end(), [](const auto& a, const auto& b) {
        return std::tie(a.m, a.j, a.n) < std::tie(b.m, b.j, b.n);
    });

    const auto failed = static_cast<std::size_t>(
        std::count_if(cases.begin(), cases.end(), [](const auto& c) { return !c.ok; }));

    if (args.format == "csv") {
        std::cout << "m,j,n,N,count,modulus,ok,padic\n";
        for (const auto& c : cases)
            std::cout << c.m << ',' << c.j << ',' << c.n << ',' << c.target << ','
                      << rmp::to_decimal(c.count) << ',' << rmp::to_decimal(c.modulus) << ','
                      << (c.ok ? "true" : "false") << ',' << c.padic << '\n';
    } else {
        ordered_json doc;
        doc["cases"] = ordered_json::array();
        for (const auto& c : cases) doc["cases"].push_back(case_to_json(c));
        doc["summary"] = ordered_json{{"total", cases.size()}, {"failed", failed}};
        std::cout << json_line(doc);
    }
    return failed == 0 ? kExitOk : kExitCheckFailed;
}

// ---- fit / cross-check ---------------------------------------------------

ordered_json fit_to_json(const rmp::HFitResult& fit, unsigned long holdout) {
    ordered_json d = ordered_json::array(), e = ordered_json::array();
    for (const auto& v : fit.d) d.push_back(rmp::to_decimal(v));
    for (std::size_t i = 1; i < fit.e.size(); ++i) e.push_back(rmp::to_decimal(fit.e[i]));
    return ordered_json{{"m", fit.m},
                        {"j", fit.j},
                        {"holdout", holdout},
                        {"holdout_verified", fit.holdout_verified},
                        {"modulus", rmp::to_decimal(rmp::theorem_modulus(fit.m, fit.j))},
                        {"extra_rows", fit.extra_rows},
                        {"d", d},
                        {"e", e}};
}

// ---- minimal --------------------------------------------------------------

int run_minimal(unsigned j, std::optional<unsigned> m) {
    const rmp::MinimalTermTable table = rmp::minimal_terms(j);
    ordered_json doc;
    doc["j"] = j;
    const std::vector<std::pair<const char*, const std::vector<rmp::SMonomial>*>> rows = {
        {"p", &table.p_bar}, {"q", &table.q_bar}, {"r", &table.r_bar}, {"t", &table.t_bar}};
    for (const auto& [name, row] : rows) {
        ordered_json arr = ordered_json::array();
        for (const auto& mono : *row) arr.push_back(mono.str());
        doc[name] = arr;
    }
    bool all_ok = true;
    if (m) {
        const rmp::SCoeffTable s_table(*m, j + 1);
        doc["m"] = *m;
        doc["divisor"] = rmp::to_decimal(rmp::theorem_modulus(*m, j));
        ordered_json values, checks;
        for (const auto& [name, row] : rows) {
            ordered_json varr = ordered_json::array(), carr = ordered_json::array();
            for (const auto& mono : *row) {
                varr.push_back(rmp::to_decimal(rmp::substitute(mono, s_table)));
                const bool ok = rmp::theorem_divisor_check(mono, j, *m);
                carr.push_back(ok);
                all_ok = all_ok && ok;
            }
            values[name] = varr;
            checks[name] = carr;
        }
        doc["values"] = values;
        doc["divisor_ok"] = checks;
    }
    std::cout << json_line(doc);
    return all_ok ? kExitOk : kExitCheckFailed;
}

// ---- s-table ---------------------------------------------------------------

int run_s_table(unsigned m, unsigned max_j, const std::string& format) {
    const rmp::SCoeffTable table(m, max_j);
    if (format == "csv") {
        std::cout << "j,i,value\n";
        for (unsigned j = 0; j <= table.max_j(); ++j)
            for (unsigned i = 0; i <= j; ++i)
                std::cout << j << ',' << i << ',' << rmp::to_decimal(table.at(j, i)) << '\n';
    } else {
        ordered_json rows = ordered_json::array();
        for (unsigned j = 0; j <= table.max_j(); ++j) {
            ordered_json row = ordered_json::array();
            for (unsigned i = 0; i <= j; ++i) row.push_back(rmp::to_decimal(table.at(j, i)));
            rows.push_back(row);
        }
        std::cout << json_line(ordered_json{{"m", m}, {"max_j", max_j}, {"rows", rows}});
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Restricted m-ary partition counts and machine verification of their congruences"};
    app.require_subcommand(1);

    // count
    auto* count_cmd = app.add_subcommand("count", "c_m(n) via the generating function");
    unsigned count_m = 2;
    unsigned long count_n = 0;
    std::size_t count_budget = rmp::kDefaultSeriesBudget;
    CacheOptions count_cache;
    count_cmd->add_option("--m", count_m, "Base m >= 2")->required()->check(CLI::Range(2u, 1000000u));
    count_cmd->add_option("--n", count_n, "Target n >= 0")->required();
    count_cmd->add_option("--budget", count_budget, "Maximum series truncation");
    count_cache.attach(count_cmd);

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "c_m(n) via the series-free counting oracle");
    unsigned oracle_m = 2;
    unsigned long oracle_n = 0;
    oracle_cmd->add_option("--m", oracle_m, "Base m >= 2")->required()->check(CLI::Range(2u, 1000000u));
    oracle_cmd->add_option("--n", oracle_n, "Target n >= 0")->required();

    // s-table
    auto* stable_cmd = app.add_subcommand("s-table", "Change-of-basis coefficients s_{j,i}");
    unsigned stable_m = 2, stable_maxj = 1;
    std::string stable_format = "json";
    stable_cmd->add_option("--m", stable_m, "Base m >= 2")->required()->check(CLI::Range(2u, 1000000u));
    stable_cmd->add_option("--max-j", stable_maxj, "Largest row index, >= 1")
        ->required()
        ->check(CLI::Range(1u, 2000u));
    stable_cmd->add_option("--format", stable_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // minimal
    auto* minimal_cmd = app.add_subcommand("minimal", "Minimal-evaluation terms at level j");
    unsigned minimal_j = 1;
    unsigned minimal_m = 0;
    minimal_cmd->add_option("--j", minimal_j, "Level j >= 1")->required()->check(CLI::Range(1u, 10000u));
    minimal_cmd->add_option("--m", minimal_m, "Optional base for numeric substitution")
        ->check(CLI::Range(2u, 1000000u));

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Sweep the congruence family");
    VerifyArgs verify_args;
    verify_cmd->add_option("--m", verify_args.m_spec, "Bases: list or a..b range")->required();
    verify_cmd->add_option("--j", verify_args.j_spec, "Levels: list or a..b range")->required();
    verify_cmd->add_option("--n-max", verify_args.n_max, "Largest subsequence index n")->required();
    verify_cmd->add_option("--budget", verify_args.budget, "Maximum series truncation");
    verify_cmd->add_option("--format", verify_args.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    verify_cmd->add_option("--jobs", verify_args.jobs, "Concurrent workers")->check(CLI::Range(1u, 256u));
    verify_args.cache.attach(verify_cmd);

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "Recover the h-basis decomposition of the subsequence");
    unsigned fit_m = 2, fit_j = 1;
    unsigned long fit_holdout = 0;  // 0 = default 4j + 8
    std::size_t fit_budget = rmp::kDefaultSeriesBudget;
    CacheOptions fit_cache;
    fit_cmd->add_option("--m", fit_m, "Base m >= 2")->required()->check(CLI::Range(2u, 1000000u));
    fit_cmd->add_option("--j", fit_j, "Level j >= 1")->required()->check(CLI::Range(1u, 10000u));
    fit_cmd->add_option("--holdout", fit_holdout, "Holdout rows (default 4j + 8)");
    fit_cmd->add_option("--budget", fit_budget, "Maximum series truncation");
    fit_cache.attach(fit_cmd);

    // cross-check
    auto* cross_cmd = app.add_subcommand("cross-check", "Recurrence closure between fits at j and j+1");
    unsigned cross_m = 2, cross_j = 1;
    std::size_t cross_budget = rmp::kDefaultSeriesBudget;
    CacheOptions cross_cache;
    cross_cmd->add_option("--m", cross_m, "Base m >= 2")->required()->check(CLI::Range(2u, 1000000u));
    cross_cmd->add_option("--j", cross_j, "Lower level j >= 1")->required()->check(CLI::Range(1u, 10000u));
    cross_cmd->add_option("--budget", cross_budget, "Maximum series truncation");
    cross_cache.attach(cross_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (count_cmd->parsed()) {
            rmp::SeriesStore store(count_budget, count_cache.resolve());
            std::cout << rmp::to_decimal(store.count(count_m, count_n)) << '\n';
            return kExitOk;
        }
        if (oracle_cmd->parsed()) {
            std::cout << rmp::to_decimal(rmp::brute_force_count({oracle_m, oracle_n})) << '\n';
            return kExitOk;
        }
        if (stable_cmd->parsed()) return run_s_table(stable_m, stable_maxj, stable_format);
        if (minimal_cmd->parsed())
            return run_minimal(minimal_j, minimal_m >= 2 ? std::optional<unsigned>(minimal_m)
                                                         : std::nullopt);
        if (verify_cmd->parsed()) return run_verify(verify_args);
        if (fit_cmd->parsed()) {
            rmp::SeriesStore store(fit_budget, fit_cache.resolve());
            const unsigned long holdout = fit_holdout ? fit_holdout : 4ul * fit_j + 8;
            const auto fit = rmp::fit_lemma21(fit_m, fit_j, holdout, store);
            std::cout << json_line(fit_to_json(fit, holdout));
            return fit.holdout_verified ? kExitOk : kExitCheckFailed;
        }
        if (cross_cmd->parsed()) {
            rmp::SeriesStore store(cross_budget, cross_cache.resolve());
            const auto low = rmp::fit_lemma21(cross_m, cross_j, 4ul * cross_j + 8, store);
            const auto high = rmp::fit_lemma21(cross_m, cross_j + 1, 4ul * (cross_j + 1) + 8, store);
            const rmp::SCoeffTable table(cross_m, cross_j + 2);
            const bool consistent = rmp::cross_check_recurrences(low, high, table);
            ordered_json doc{{"m", cross_m},
                             {"j", cross_j},
                             {"consistent", consistent},
                             {"fit_j", fit_to_json(low, 4ul * cross_j + 8)},
                             {"fit_j1", fit_to_json(high, 4ul * (cross_j + 1) + 8)}};
            std::cout << json_line(doc);
            return consistent ? kExitOk : kExitCheckFailed;
        }
        return kExitUsage;
    } catch (const rmp::ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kExitResource;
    } catch (const rmp::CacheError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const rmp::TheoremViolationError& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return kExitCheckFailed;
    } catch (const rmp::DegenerateSystemError& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return kExitCheckFailed;
    } catch (const rmp::InconsistencyError& e) {
        std::cerr << "internal inconsistency: " << e.what() << '\n';
        return kExitCheckFailed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
