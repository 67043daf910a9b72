#pragma once

#include <string>
#include <vector>

#include "ppsnd/simnet.hpp"

namespace ppsnd {

double sample_mean(const std::vector<double>& values);
double sample_stddev(const std::vector<double>& values);      // Bessel-corrected
double ci95_half_width(const std::vector<double>& values);    // 1.96 * s / sqrt(n)

struct BenchConfig {
    Protocol protocol = Protocol::Ppsnd;
    unsigned key_bits = 1024;  // homomorphic modulus size; also selects the issuer group
    unsigned trials = 10;
    uint64_t seed = 1;
};

struct BenchRecord {
    std::string protocol;  // "ppsnd" | "snd"
    std::string role;      // "initiator" | "responder"
    unsigned key_bits = 0;
    unsigned trial = 0;
    double crypto_seconds = 0;
};

// Runs `trials` complete two-node sessions over a fresh world each time,
// reusing one set of credentials per cell. Records wall-clock time spent in
// cryptographic operations per role; key generation and wallet issuance are
// setup, not part of any sample.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

struct SummaryRow {
    std::string protocol;
    std::string role;
    unsigned key_bits = 0;
    size_t count = 0;
    double mean_seconds = 0;
    double ci95_low = 0;
    double ci95_high = 0;
};

// Mean and normal-approximation 95% interval per (protocol, key size, role).
std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records);

void write_records_csv(const std::string& path, const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_records_csv(const std::string& path);
void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows);
std::string format_summary_table(const std::vector<SummaryRow>& rows);

const char* protocol_name(Protocol protocol);

}  // namespace ppsnd
