#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ppsnd/bench.hpp"
#include "ppsnd/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

std::string default_summary_path(const std::string& in) {
    std::string stem = in;
    if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".csv") == 0) {
        stem.resize(stem.size() - 4);
    }
    return stem + "-summary.csv";
}

int run_bench_cmd(const std::string& protocol, unsigned bits, unsigned trials, uint64_t seed,
                  const std::string& out) {
    ppsnd::BenchConfig config;
    config.protocol = protocol == "ppsnd" ? ppsnd::Protocol::Ppsnd : ppsnd::Protocol::Snd;
    config.key_bits = bits;
    config.trials = trials;
    config.seed = seed;
    auto records = ppsnd::run_bench(config);
    ppsnd::write_records_csv(out, records);
    std::cout << "wrote " << records.size() << " records to " << out << '\n';
    return kExitOk;
}

int run_summarize_cmd(const std::string& in, std::string out) {
    auto records = ppsnd::read_records_csv(in);
    auto rows = ppsnd::summarize(records);
    std::cout << ppsnd::format_summary_table(rows);
    if (out.empty()) out = default_summary_path(in);
    ppsnd::write_summary_csv(out, rows);
    std::cout << "wrote summary to " << out << '\n';
    return kExitOk;
}

int run_simulate_cmd(const std::string& scenario, const std::string& trace) {
    auto outcome = ppsnd::run_scenario_file(scenario);
    for (const auto& [node, res] : outcome.results) {
        std::cout << node << " peer=" << ppsnd::pid_hex(res.peer_pid)
                  << " outcome=" << ppsnd::outcome_name(res.outcome);
        if (!res.reason.empty()) std::cout << " reason=" << res.reason;
        if (std::isfinite(res.d_tof_m)) std::cout << " d_tof_m=" << res.d_tof_m;
        if (std::isfinite(res.d_he_m)) std::cout << " d_he_m=" << res.d_he_m;
        std::cout << '\n';
    }
    for (const auto& k : outcome.curious) {
        std::cout << k.node << " learned peer=" << ppsnd::pid_hex(k.peer_pid)
                  << " sessions=" << k.sessions << " d_tof_m=" << k.last_d_tof_m
                  << " d_he_m=" << k.last_d_he_m << '\n';
    }
    for (const auto& [node, refused] : outcome.refusals) {
        std::cout << node << " refused=" << refused << '\n';
    }
    std::cout << "sessions=" << outcome.results.size() << " events=" << outcome.events << '\n';
    if (!trace.empty()) {
        std::ofstream out(trace, std::ios::binary);
        if (!out) throw ppsnd::SimulationError("cannot write " + trace);
        out << outcome.trace_jsonl;
        if (!out) throw ppsnd::SimulationError("short write to " + trace);
        std::cout << "wrote trace to " << trace << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"privacy-preserving secure neighbor discovery toolkit"};
    app.require_subcommand(1);

    std::string bench_protocol;
    unsigned bench_bits = 1024;
    unsigned bench_trials = 10;
    uint64_t bench_seed = 1;
    std::string bench_out = "results.csv";
    auto* bench = app.add_subcommand("bench", "measure per-role cryptographic cost");
    bench->add_option("--protocol", bench_protocol, "snd or ppsnd")
        ->required()
        ->check(CLI::IsMember({"snd", "ppsnd"}));
    bench->add_option("--bits", bench_bits, "key size")
        ->required()
        ->check(CLI::IsMember({1024u, 2048u, 3072u}));
    bench->add_option("--trials", bench_trials, "sessions to run")->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_seed, "deterministic seed");
    bench->add_option("--out", bench_out, "output CSV path");

    std::string sum_in;
    std::string sum_out;
    auto* sum = app.add_subcommand("summarize", "aggregate bench results");
    sum->add_option("--in", sum_in, "bench results CSV")->required();
    sum->add_option("--out", sum_out, "summary CSV path (default: <in>-summary.csv)");

    std::string sim_scenario;
    std::string sim_trace;
    auto* sim = app.add_subcommand("simulate", "run a scenario file");
    sim->add_option("--scenario", sim_scenario, "scenario JSON path")->required();
    sim->add_option("--trace", sim_trace, "write the radio trace as JSONL");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (bench->parsed()) {
            return run_bench_cmd(bench_protocol, bench_bits, bench_trials, bench_seed, bench_out);
        }
        if (sum->parsed()) return run_summarize_cmd(sum_in, sum_out);
        return run_simulate_cmd(sim_scenario, sim_trace);
    } catch (const ppsnd::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
