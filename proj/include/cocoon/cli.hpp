#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cocoon/census.hpp"
#include "cocoon/errors.hpp"
#include "cocoon/gap_classifier.hpp"
#include "cocoon/infimum_scan.hpp"
#include "cocoon/oracle.hpp"
#include "cocoon/residue_tables.hpp"

// Command-line front end. Exit codes: 0 success, 1 usage error, 2 domain
// error, 3 theorem/identity violation.
namespace cocoon::cli {

enum class Command { primes, composites, census_cmd, verify, scan, bench };
enum class OutputFormat { text, csv, jsonl };

struct CommandConfig {
    Command command = Command::primes;
    std::uint64_t limit = 0; // the limit, or m for census
    OutputFormat format = OutputFormat::text;
    std::string output_path;  // empty: stdout
    unsigned threads = 0;     // filled in by parse_args
    std::uint64_t memory_cap_bytes = kDefaultMemoryCapBytes;
    std::string bench_impl = "tables";
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --help and friends: carries the text to print, exits 0.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline OutputFormat parse_format(const std::string& name) {
    if (name == "text")
        return OutputFormat::text;
    if (name == "csv")
        return OutputFormat::csv;
    return OutputFormat::jsonl;
}

inline std::uint64_t memory_cap_from_env() {
    const char* env = std::getenv("COCOON_MEMORY_CAP");
    if (env == nullptr || *env == '\0')
        return kDefaultMemoryCapBytes;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || parsed == 0)
        throw UsageError("COCOON_MEMORY_CAP must be a positive byte count, got \"" +
                         std::string(env) + "\"");
    return parsed;
}

} // namespace detail

// Strict parsing into a validated config. Throws UsageError on bad input and
// HelpRequested when help was asked for.
inline CommandConfig parse_args(const std::vector<std::string>& argv) {
    CLI::App app{"odd-composite enumeration, gap census and identity verification"};
    app.name("cocoon");
    app.require_subcommand(1);

    CommandConfig config;
    std::string format_name = "text";
    std::uint64_t env_cap = detail::memory_cap_from_env();
    std::optional<std::uint64_t> cap_flag;
    std::optional<unsigned> threads_flag;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format_name, "output format")
            ->check(CLI::IsMember({"text", "csv", "jsonl"}))
            ->capture_default_str();
        sub->add_option("--output", config.output_path, "write the report to this file");
        sub->add_option_function<unsigned>(
               "--threads", [&](unsigned v) { threads_flag = v; },
               "worker threads for composite enumeration")
            ->check(CLI::PositiveNumber);
        sub->add_option_function<std::uint64_t>(
               "--memory-cap", [&](std::uint64_t v) { cap_flag = v; },
               "byte bound for the enumeration bit array")
            ->check(CLI::PositiveNumber);
    };

    const auto add_limit = [&](CLI::App* sub, std::uint64_t min_value) {
        sub->add_option("--limit", config.limit, "upper bound (inclusive)")
            ->required()
            ->check(CLI::Range(min_value, std::numeric_limits<std::uint64_t>::max()));
    };

    CLI::App* primes = app.add_subcommand("primes", "print all primes up to a limit");
    add_limit(primes, 9);
    add_common(primes);

    CLI::App* composites = app.add_subcommand("composites", "print all odd composites up to a limit");
    add_limit(composites, 9);
    add_common(composites);

    CLI::App* census_sub = app.add_subcommand("census", "gap census and identity checks at one threshold m");
    census_sub->add_option("--m", config.limit, "threshold, an odd multiple of 3 that is >= 9")
        ->required()
        ->check([](const std::string& text) -> std::string {
            std::uint64_t value = 0;
            try {
                value = std::stoull(text);
            } catch (const std::exception&) {
                return "m must equal 3(2n+1), n >= 1";
            }
            if (!is_valid_threshold(value))
                return "m must equal 3(2n+1), n >= 1 (an odd multiple of 3, >= 9)";
            return {};
        });
    add_common(census_sub);

    CLI::App* verify = app.add_subcommand("verify", "verify every identity for all valid m up to a limit");
    add_limit(verify, 9);
    add_common(verify);

    CLI::App* scan = app.add_subcommand("scan", "emit the s-sequence scan for all valid m up to a limit");
    add_limit(scan, 9);
    add_common(scan);

    CLI::App* bench = app.add_subcommand("bench", "time composite enumeration");
    add_limit(bench, 9);
    bench->add_option("--impl", config.bench_impl, "enumeration to time")
        ->check(CLI::IsMember({"tables", "oracle"}))
        ->capture_default_str();
    add_common(bench);

    try {
        std::vector<std::string> args(argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream help;
        help << app.help();
        throw HelpRequested(help.str());
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.what()) + "\nRun with --help for usage.");
    }

    if (primes->parsed())
        config.command = Command::primes;
    else if (composites->parsed())
        config.command = Command::composites;
    else if (census_sub->parsed())
        config.command = Command::census_cmd;
    else if (verify->parsed())
        config.command = Command::verify;
    else if (scan->parsed())
        config.command = Command::scan;
    else
        config.command = bench->parsed() ? Command::bench : config.command;

    config.format = detail::parse_format(format_name);
    config.memory_cap_bytes = cap_flag.value_or(env_cap);
    config.threads = threads_flag.value_or(std::max(1u, std::thread::hardware_concurrency()));
    return config;
}

namespace detail {

inline void write_values(const std::vector<std::uint64_t>& values, OutputFormat format,
                         std::ostream& out) {
    switch (format) {
    case OutputFormat::text: {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i)
                out << ' ';
            out << values[i];
        }
        out << '\n';
        break;
    }
    case OutputFormat::csv:
        out << "value\n";
        for (std::uint64_t v : values)
            out << v << '\n';
        break;
    case OutputFormat::jsonl:
        for (std::uint64_t v : values)
            out << "{\"value\":" << v << "}\n";
        break;
    }
}

inline void run_census(const CensusReport& report, OutputFormat format, std::ostream& out) {
    const auto checks = evaluate_identities(report);
    switch (format) {
    case OutputFormat::text:
        out << "m: " << report.m << "\n"
            << "t: " << report.t << "\n"
            << "a2: " << report.a2 << "\n"
            << "a4: " << report.a4 << "\n"
            << "a6: " << report.a6 << "\n"
            << "pi: " << report.pi << "\n";
        for (const IdentityCheck& c : checks)
            out << c.name << ": " << c.lhs << " == " << c.rhs << ' '
                << (c.pass() ? "PASS" : "FAIL") << "\n";
        out << "all identities: PASS\n";
        break;
    case OutputFormat::csv:
        out << "m,t,a2,a4,a6,pi,identities_pass\n"
            << report.m << ',' << report.t << ',' << report.a2 << ',' << report.a4 << ','
            << report.a6 << ',' << report.pi << ",true\n";
        break;
    case OutputFormat::jsonl:
        out << "{\"m\":" << report.m << ",\"t\":" << report.t << ",\"a2\":" << report.a2
            << ",\"a4\":" << report.a4 << ",\"a6\":" << report.a6 << ",\"pi\":" << report.pi
            << ",\"identities_pass\":true}\n";
        break;
    }
}

// Exhaustive verification of every valid m <= limit from one enumeration and
// one sieve. Reconstructed primes are consumed against the sieve's list as
// the pairs stream by; any disagreement aborts with a theorem violation, so
// a normal return means zero failures.
inline void run_verify(std::uint64_t limit, const EnumerateOptions& opts, OutputFormat format,
                       std::ostream& out) {
    const CocoonList list = odd_composites(limit, opts);
    const oracle::SieveTable sieve(limit);
    const std::vector<std::uint64_t> oracle_primes = sieve.primes();

    if (format == OutputFormat::csv)
        out << "m,t,a2,a4,a6,pi,oracle_pi,identities_pass,oracle_match\n";

    CensusReport r;
    r.t = 1;
    std::size_t matched = 0; // reconstructed primes consumed from the oracle list
    std::size_t pi_idx = 0;  // oracle primes <= current m
    std::uint64_t checked = 0;

    for (std::uint64_t seed : {2ull, 3ull, 5ull, 7ull}) {
        if (matched >= oracle_primes.size() || oracle_primes[matched] != seed)
            throw TheoremViolation("seed prime " + std::to_string(seed) +
                                   " disagrees with the sieve");
        ++matched;
    }

    const auto at_threshold = [&](std::uint64_t v) {
        if (v % 6 != 3)
            return;
        r.m = v;
        r.pi = 4 + r.a4 + 2 * r.a6;
        validate(r);
        while (pi_idx < oracle_primes.size() && oracle_primes[pi_idx] <= v)
            ++pi_idx;
        if (r.pi != pi_idx)
            throw TheoremViolation("identity prime_count disagrees with the sieve at m=" +
                                   std::to_string(v) + ": " + std::to_string(r.pi) +
                                   " != " + std::to_string(pi_idx));
        if (matched != pi_idx)
            throw TheoremViolation("reconstructed prime set is incomplete at m=" +
                                   std::to_string(v));
        ++checked;
        if (format == OutputFormat::csv)
            out << r.m << ',' << r.t << ',' << r.a2 << ',' << r.a4 << ',' << r.a6 << ','
                << r.pi << ',' << pi_idx << ",true,true\n";
        else if (format == OutputFormat::jsonl)
            out << "{\"m\":" << r.m << ",\"t\":" << r.t << ",\"a2\":" << r.a2
                << ",\"a4\":" << r.a4 << ",\"a6\":" << r.a6 << ",\"pi\":" << r.pi
                << ",\"oracle_pi\":" << pi_idx << ",\"identities_pass\":true"
                << ",\"oracle_match\":true}\n";
    };

    at_threshold(list.values().front());
    for_each_pair(list, [&](const CocoonPair& pair) {
        switch (pair.gap()) {
        case 2: ++r.a2; break;
        case 4: ++r.a4; break;
        default: ++r.a6; break;
        }
        ++r.t;
        const PairPrimes primes = pair_primes(pair);
        for (int k = 0; k < primes.count; ++k) {
            if (matched >= oracle_primes.size() || oracle_primes[matched] != primes.p[k])
                throw TheoremViolation("reconstructed prime " + std::to_string(primes.p[k]) +
                                       " disagrees with the sieve");
            ++matched;
        }
        at_threshold(pair.hi);
    });

    if (format == OutputFormat::text)
        out << checked << (checked == 1 ? " value" : " values") << " of m checked, 0 failures\n"
            << "oracle prime counts and reconstructions match for every checked m\n";
}

inline void run_scan(std::uint64_t limit, const EnumerateOptions& opts, OutputFormat format,
                     std::ostream& out) {
    // The CSV is the scan's canonical table; text emits the same bytes.
    if (format != OutputFormat::jsonl)
        out << kScanCsvHeader << '\n';
    scan_rows(limit, opts, [&](const ScanRow& row) {
        out << (format == OutputFormat::jsonl ? scan_jsonl_row(row) : scan_csv_row(row)) << '\n';
    });
}

inline void run_bench(const CommandConfig& config, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    std::uint64_t count = 0;
    if (config.bench_impl == "tables") {
        EnumerateOptions opts{config.threads, config.memory_cap_bytes};
        count = odd_composites(config.limit, opts).count();
    } else {
        count = oracle::odd_composites(config.limit).size();
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    const double throughput = elapsed.count() > 0 ? static_cast<double>(count) / elapsed.count()
                                                  : 0.0;
    switch (config.format) {
    case OutputFormat::text:
        out << "impl=" << config.bench_impl << " limit=" << config.limit << " count=" << count
            << " seconds=" << float12(elapsed.count()) << " throughput=" << float12(throughput)
            << " values/s\n";
        break;
    case OutputFormat::csv:
        out << "impl,limit,count,seconds,throughput\n"
            << config.bench_impl << ',' << config.limit << ',' << count << ','
            << float12(elapsed.count()) << ',' << float12(throughput) << '\n';
        break;
    case OutputFormat::jsonl:
        out << "{\"impl\":\"" << config.bench_impl << "\",\"limit\":" << config.limit
            << ",\"count\":" << count << ",\"seconds\":" << float12(elapsed.count())
            << ",\"throughput\":" << float12(throughput) << "}\n";
        break;
    }
}

} // namespace detail

// Execute a parsed config, writing the report to `out`. Returns 0; failures
// surface as exceptions for the dispatcher to map.
inline int run(const CommandConfig& config, std::ostream& out) {
    const EnumerateOptions opts{config.threads, config.memory_cap_bytes};
    switch (config.command) {
    case Command::primes:
        detail::write_values(reconstruct_primes(classify(odd_composites(config.limit, opts))),
                             config.format, out);
        break;
    case Command::composites:
        detail::write_values(odd_composites(config.limit, opts).values(), config.format, out);
        break;
    case Command::census_cmd:
        detail::run_census(census(config.limit, opts), config.format, out);
        break;
    case Command::verify:
        detail::run_verify(config.limit, opts, config.format, out);
        break;
    case Command::scan:
        detail::run_scan(config.limit, opts, config.format, out);
        break;
    case Command::bench:
        detail::run_bench(config, out);
        break;
    }
    return 0;
}

// Full front end: parse, run, map failures to the exit-code contract.
inline int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    try {
        const CommandConfig config = parse_args(argv);
        if (!config.output_path.empty()) {
            std::ofstream file(config.output_path, std::ios::binary);
            if (!file)
                throw DomainError("cannot open output file: " + config.output_path);
            return run(config, file);
        }
        return run(config, out);
    } catch (const HelpRequested& help) {
        out << help.what();
        return 0;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const TheoremViolation& e) {
        err << "theorem violation: " << e.what() << '\n';
        return 3;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace cocoon::cli
