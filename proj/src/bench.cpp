#include "ppsnd/bench.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace ppsnd {

double sample_mean(const std::vector<double>& values) {
    if (values.empty()) throw DomainError("mean of empty sample");
    double sum = 0;
    for (double v : values) sum += v;
    return sum / double(values.size());
}

double sample_stddev(const std::vector<double>& values) {
    if (values.size() < 2) throw DomainError("stddev needs at least two samples");
    double mean = sample_mean(values);
    double sq = 0;
    for (double v : values) sq += (v - mean) * (v - mean);
    return std::sqrt(sq / double(values.size() - 1));
}

double ci95_half_width(const std::vector<double>& values) {
    return 1.96 * sample_stddev(values) / std::sqrt(double(values.size()));
}

const char* protocol_name(Protocol protocol) {
    return protocol == Protocol::Ppsnd ? "ppsnd" : "snd";
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
    if (config.key_bits != 1024 && config.key_bits != 2048 && config.key_bits != 3072) {
        throw ConfigError("key_bits must be 1024, 2048 or 3072");
    }
    if (config.trials == 0) throw ConfigError("trials must be at least 1");

    DeterministicRng root(config.seed);
    TrustDomain trust(config.key_bits, root.fork("trust"));

    WorldConfig wc;
    wc.protocol = config.protocol;
    wc.session.paillier_bits = config.key_bits;
    wc.session.tau_snd_ps = 0;

    // One credential set per cell; worlds are rebuilt per trial so each
    // session starts from clean protocol state.
    SimTime forever = int64_t(1) << 62;
    PseudonymWallet initiator_wallet = trust.enroll("bench-initiator-identity", 1, forever, 0,
                                                    config.key_bits, root.fork("enroll:initiator"));
    PseudonymWallet responder_wallet = trust.enroll("bench-responder-identity", 1, forever, 0,
                                                    config.key_bits, root.fork("enroll:responder"));

    std::vector<BenchRecord> records;
    records.reserve(size_t(config.trials) * 2);
    for (unsigned t = 0; t < config.trials; ++t) {
        WorldConfig trial_config = wc;
        trial_config.seed = root.fork("trial:" + std::to_string(t)).u64();
        World world(trial_config, trust);
        HonestNode& a = world.add_honest("bench-initiator", {0, 0}, initiator_wallet);
        HonestNode& b = world.add_honest("bench-responder", {50, 0}, responder_wallet);
        world.schedule_session("bench-initiator", 0);
        world.run();

        const auto& results = a.results();
        if (results.size() != 1 || results[0].outcome != Outcome::Neighbor) {
            throw SimulationError("bench trial did not complete a discovery session");
        }
        records.push_back({protocol_name(config.protocol), "initiator", config.key_bits, t,
                           a.endpoint().crypto_cost().initiator_seconds});
        records.push_back({protocol_name(config.protocol), "responder", config.key_bits, t,
                           b.endpoint().crypto_cost().responder_seconds});
    }
    return records;
}

std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records) {
    if (records.empty()) throw ConfigError("no records to summarize");
    std::map<std::tuple<std::string, unsigned, std::string>, std::vector<double>> groups;
    for (const auto& r : records) {
        groups[{r.protocol, r.key_bits, r.role}].push_back(r.crypto_seconds);
    }

    std::vector<SummaryRow> rows;
    for (const auto& [key, samples] : groups) {
        if (samples.size() < 2) {
            throw ConfigError("need at least two samples per group for an interval");
        }
        SummaryRow row;
        row.protocol = std::get<0>(key);
        row.key_bits = std::get<1>(key);
        row.role = std::get<2>(key);
        row.count = samples.size();
        row.mean_seconds = sample_mean(samples);
        double half = ci95_half_width(samples);
        row.ci95_low = row.mean_seconds - half;
        row.ci95_high = row.mean_seconds + half;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_records_csv(const std::string& path, const std::vector<BenchRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SimulationError("cannot write " + path);
    out << "protocol,role,key_bits,trial,crypto_seconds\n";
    out << std::setprecision(9) << std::scientific;
    for (const auto& r : records) {
        out << r.protocol << ',' << r.role << ',' << r.key_bits << ',' << r.trial << ','
            << r.crypto_seconds << '\n';
    }
    if (!out) throw SimulationError("short write to " + path);
}

std::vector<BenchRecord> read_records_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "protocol,role,key_bits,trial,crypto_seconds") {
        throw ConfigError(path + ": not a bench results file (bad header)");
    }

    std::vector<BenchRecord> records;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        BenchRecord r;
        auto next = [&](const char* what) {
            if (!std::getline(row, field, ',')) {
                throw ConfigError(path + ":" + std::to_string(line_no) + ": missing " + what);
            }
            return field;
        };
        r.protocol = next("protocol");
        r.role = next("role");
        try {
            r.key_bits = unsigned(std::stoul(next("key_bits")));
            r.trial = unsigned(std::stoul(next("trial")));
            r.crypto_seconds = std::stod(next("crypto_seconds"));
        } catch (const std::exception&) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": malformed numeric field");
        }
        if (r.protocol != "ppsnd" && r.protocol != "snd") {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": unknown protocol");
        }
        if (r.role != "initiator" && r.role != "responder") {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": unknown role");
        }
        records.push_back(std::move(r));
    }
    if (records.empty()) throw ConfigError(path + ": no records");
    return records;
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SimulationError("cannot write " + path);
    out << "protocol,role,key_bits,count,mean_seconds,ci95_low,ci95_high\n";
    out << std::setprecision(9) << std::scientific;
    for (const auto& r : rows) {
        out << r.protocol << ',' << r.role << ',' << r.key_bits << ',' << r.count << ','
            << r.mean_seconds << ',' << r.ci95_low << ',' << r.ci95_high << '\n';
    }
    if (!out) throw SimulationError("short write to " + path);
}

std::string format_summary_table(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    out << std::left << std::setw(9) << "protocol" << std::setw(11) << "role" << std::right
        << std::setw(6) << "bits" << std::setw(7) << "n" << std::setw(15) << "mean [s]"
        << std::setw(26) << "95% CI [s]" << '\n';
    for (const auto& r : rows) {
        std::ostringstream ci;
        ci << std::setprecision(6) << std::fixed << '[' << r.ci95_low << ", " << r.ci95_high << ']';
        out << std::left << std::setw(9) << r.protocol << std::setw(11) << r.role << std::right
            << std::setw(6) << r.key_bits << std::setw(7) << r.count << std::setw(15)
            << std::setprecision(6) << std::fixed << r.mean_seconds << std::setw(26) << ci.str()
            << '\n';
    }
    return out.str();
}

}  // namespace ppsnd
