// Self-checking acceptance run for the discovery stack. Each numbered check
// prints one PASS/FAIL line; the process exit code is the number of failures.
// Tolerances are fixed here, next to the checks that use them.

#include <bit>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "ppsnd/bench.hpp"
#include "ppsnd/bytes.hpp"
#include "ppsnd/geo.hpp"
#include "ppsnd/scenario.hpp"
#include "ppsnd/simnet.hpp"
#include "ppsnd/trace.hpp"

using namespace ppsnd;

namespace {

// sqrt(2) * (meters per degree) / normalization factor: the worst-case
// distance shift from rounding both axes to integer units.
const double kQuantToleranceM = std::sqrt(2.0) * kMetersPerDegree / 1e6;

// Slack for picosecond rounding of propagation times, in meters.
const double kRangingToleranceM = 0.001;

constexpr double kMaxSecondsPhe = 60.0;
constexpr double kMaxSecondsPipeline = 120.0;
constexpr double kMaxSecondsBench = 900.0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* pattern, ...) {
    va_list args;
    va_start(args, pattern);
    char buf[256];
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

PseudonymWallet enroll_forever(TrustDomain& trust, DeterministicRng& root, const std::string& who,
                               unsigned paillier_bits, size_t k = 1, SimTime tau = int64_t(1) << 62,
                               SimTime start = 0) {
    std::string id = "identity-" + who + "-longterm-credential";
    return trust.enroll(id, k, tau, start, paillier_bits, root.fork("enroll:" + who));
}

// ---------------------------------------------------------------- check 1

bool check_phe_oracle(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    DeterministicRng rng(101);

    // Toy modulus small enough to try the whole plaintext space.
    PaillierKeyPair toy = PaillierKeyPair::from_primes(251, 241);
    const uint64_t n = 60491;
    if (toy.pub.n() != n) {
        detail = "unexpected toy modulus";
        return false;
    }
    for (uint64_t m = 0; m < n; ++m) {
        if (toy.decrypt(toy.pub.encrypt(m, rng)) != m) {
            detail = fmt("toy round-trip broke at m=%" PRIu64, m);
            return false;
        }
    }

    // Production-size key: additive identities must hold exactly.
    PaillierKeyPair kp = PaillierKeyPair::generate(1024, rng);
    const mpz_class& big_n = kp.pub.n();
    for (int trial = 0; trial < 1000; ++trial) {
        int64_t a = int64_t(rng.u64() >> 2) - int64_t(1ull << 61);
        int64_t b = int64_t(rng.u64() >> 2) - int64_t(1ull << 61);
        uint64_t k = rng.u64() >> 40;

        mpz_class ma(a), mb(b);
        PaillierCiphertext ca = kp.pub.encrypt(ma < 0 ? ma + big_n : ma, rng);
        PaillierCiphertext cb = kp.pub.encrypt(mb < 0 ? mb + big_n : mb, rng);

        mpz_class sum = decode_signed(kp.decrypt(kp.pub.he_add(ca, cb)), big_n);
        mpz_class diff = decode_signed(kp.decrypt(kp.pub.he_sub(ca, cb)), big_n);
        mpz_class scaled = decode_signed(kp.decrypt(kp.pub.he_scalar_mul(ca, mpz_class(k))), big_n);

        if (sum != mpz_class(a) + b || diff != mpz_class(a) - b ||
            scaled != mpz_class(a) * mpz_class(k)) {
            detail = fmt("identity broke at trial %d", trial);
            return false;
        }
    }

    double elapsed = seconds_since(t0);
    detail = fmt("%" PRIu64 " toy plaintexts, 1000 trials at 1024 bits, %.1fs", n, elapsed);
    return elapsed <= kMaxSecondsPhe;
}

// ---------------------------------------------------------------- check 2

bool check_pipeline_equivalence(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    DeterministicRng rng(202);
    PaillierKeyPair kp = PaillierKeyPair::generate(1024, rng);
    const int64_t factor = 1000000;

    for (int trial = 0; trial < 1000; ++trial) {
        GeoCoordinate a;
        a.lat = double(int64_t(rng.u64() % 120000001)) / 1e6 - 60.0;   // [-60, 60]
        a.lng = double(int64_t(rng.u64() % 358000001)) / 1e6 - 179.0;  // [-179, 179]
        double dy = double(int64_t(rng.u64() % 1400001)) / 1e3 - 700.0;  // meters
        double dx = double(int64_t(rng.u64() % 1400001)) / 1e3 - 700.0;
        GeoCoordinate b{a.lat + dy / kMetersPerDegree,
                        a.lng + dx / (kMetersPerDegree * std::cos(a.lat * std::numbers::pi / 180.0))};

        NormalizedCoordinate na = normalize_coord(a, factor);
        NormalizedCoordinate nb = normalize_coord(b, factor);
        int64_t plain_dlat = int64_t(na.lat_units) - int64_t(nb.lat_units);
        int64_t plain_dlng = int64_t(na.lng_units) - int64_t(nb.lng_units);

        EncryptedCoordinate ea = enc_coord(kp.pub, a, factor, rng);
        EncryptedCoordinate eb = enc_coord(kp.pub, b, factor, rng);
        EncryptedDiff ed = hec_diff(kp.pub, ea, eb);
        mpz_class dec_dlat = decode_signed(kp.decrypt(ed.diff_lat), kp.pub.n());
        mpz_class dec_dlng = decode_signed(kp.decrypt(ed.diff_lng), kp.pub.n());

        if (dec_dlat != plain_dlat || dec_dlng != plain_dlng) {
            detail = fmt("decrypted unit diff mismatch at trial %d", trial);
            return false;
        }

        double d_pipeline = euclid_distance_m(dec_dlat.get_si(), dec_dlng.get_si(), a.lat, factor);
        double d_plain = euclid_distance_m(plain_dlat, plain_dlng, a.lat, factor);
        if (d_pipeline != d_plain) {  // same integers, same arithmetic, bit-equal
            detail = fmt("distance not bit-equal at trial %d", trial);
            return false;
        }

        double d_true = euclid_distance_deg(a.lat - b.lat, a.lng - b.lng, a.lat);
        if (std::fabs(d_pipeline - d_true) > kQuantToleranceM) {
            detail = fmt("quantization error %.4f m above %.4f m at trial %d",
                         std::fabs(d_pipeline - d_true), kQuantToleranceM, trial);
            return false;
        }
    }

    double elapsed = seconds_since(t0);
    detail = fmt("1000 coordinate pairs at 1024 bits, %.1fs", elapsed);
    return elapsed <= kMaxSecondsPipeline;
}

// ---------------------------------------------------------------- check 3

bool check_range_sweep(std::string& detail) {
    DeterministicRng root(303);
    TrustDomain trust(1024, root.fork("trust"));
    PseudonymWallet wa = enroll_forever(trust, root, "sweep-a", 1024);
    PseudonymWallet wb = enroll_forever(trust, root, "sweep-b", 1024);

    WorldConfig wc;
    wc.session.paillier_bits = 1024;

    auto run_at = [&](double distance_m, uint64_t seed) {
        WorldConfig cfg = wc;
        cfg.seed = seed;
        World world(cfg, trust);
        world.add_honest("alice", {0, 0}, wa);
        world.add_honest("bob", {distance_m, 0}, wb);
        world.schedule_session("alice", 0);
        world.run();
        auto results = world.results();
        if (results.size() != 1) throw SimulationError("sweep session did not resolve");
        return results[0].second;
    };

    for (int i = 0; i < 100; ++i) {
        double d = 1.99 * (i + 1);  // 1.99 .. 199.0, inside the discovery radius
        SessionResult res = run_at(d, 1000 + uint64_t(i));
        if (res.outcome != Outcome::Neighbor) {
            detail = fmt("no neighbor verdict at %.2f m (%s)", d, res.reason.c_str());
            return false;
        }
    }
    for (int i = 0; i < 20; ++i) {
        double d = 200.0 + 9.5 * (i + 1);  // 209.5 .. 390.0, between the radii
        SessionResult res = run_at(d, 2000 + uint64_t(i));
        if (res.outcome != Outcome::NotNeighbor || res.reason != "tof-gate") {
            detail = fmt("no gate rejection at %.2f m", d);
            return false;
        }
    }

    detail = "100 in-range all neighbors, 20 beyond all gated";
    return true;
}

// ---------------------------------------------------------------- check 4

bool check_relay_threshold(std::string& detail) {
    DeterministicRng root(404);
    TrustDomain trust(1024, root.fork("trust"));
    PseudonymWallet wa = enroll_forever(trust, root, "relay-a", 1024);
    PseudonymWallet wb = enroll_forever(trust, root, "relay-b", 1024);

    const SimTime delays_ps[] = {100'000, 1'000'000, 10'000'000};  // 100 ns, 1 us, 10 us

    for (bool chain : {false, true}) {
        for (SimTime delay : delays_ps) {
            WorldConfig wc;
            wc.session.paillier_bits = 1024;
            wc.session.response_guard_ps = 200'000'000;  // accommodate the long relayed path
            wc.seed = 4000 + uint64_t(delay / 1000) + (chain ? 7 : 0);

            double direct_m = chain ? 10000.0 : 500.0;
            World world(wc, trust);
            world.add_honest("alice", {0, 0}, wa);
            world.add_honest("bob", {direct_m, 0}, wb);
            if (chain) {
                world.add_chain_relay("tunnel", {50, 0}, {direct_m - 50, 0}, delay);
            } else {
                world.add_relay("wormhole", {direct_m / 2, 0}, delay);
            }
            world.schedule_session("alice", 0);
            world.run();

            auto results = world.results();
            if (results.size() != 1) {
                detail = fmt("relay run produced %zu results", results.size());
                return false;
            }
            const SessionResult& res = results[0].second;
            if (res.outcome == Outcome::Neighbor) {
                detail = fmt("relay produced a neighbor verdict (%s, %lld ps)",
                             chain ? "chain" : "single", (long long)delay);
                return false;
            }

            // Both wireless legs cross the relay once, so the round trip
            // gains twice the relay delay.
            double added_m = kSpeedOfLight * double(2 * delay) * 1e-12 / 2.0;
            bool predicted_reject = added_m >= 5.0;  // epsilon_m
            bool rejected = res.outcome == Outcome::NotNeighbor;
            if (rejected != predicted_reject) {
                detail = fmt("threshold prediction failed: added %.1f m, rejected=%d", added_m,
                             int(rejected));
                return false;
            }

            double predicted_tof = direct_m + added_m;
            if (std::fabs(res.d_tof_m - predicted_tof) > kRangingToleranceM) {
                detail = fmt("measured %.4f m, predicted %.4f m", res.d_tof_m, predicted_tof);
                return false;
            }
        }
    }

    detail = "single and chained relays, 100ns/1us/10us, all rejected as predicted";
    return true;
}

// ---------------------------------------------------------------- check 5

struct Enrolled {
    LongTermCredential ltc;
    PseudonymWallet wallet;
};

Enrolled enroll_with_ltc(TrustDomain& trust, DeterministicRng& root, const std::string& who,
                         unsigned paillier_bits) {
    Enrolled out;
    std::string id = "identity-" + who + "-longterm-credential";
    out.ltc = trust.ltca().issue_ltc(id);
    AnonymousToken token = trust.ltca().request_token(out.ltc);
    DeterministicRng mat_rng = root.fork("material:" + who);
    KeyMaterial material = KeyMaterial::generate(1, paillier_bits, mat_rng);
    out.wallet = trust.pca().issue_batch(token, trust.ltca().anchor(), 1, int64_t(1) << 62, 0,
                                         material);
    return out;
}

bool check_location_privacy(std::string& detail) {
    DeterministicRng root(505);
    TrustDomain trust(1024, root.fork("trust"));
    Enrolled alice = enroll_with_ltc(trust, root, "priv-a", 1024);
    Enrolled bob = enroll_with_ltc(trust, root, "priv-b", 1024);

    WorldConfig wc;
    wc.session.paillier_bits = 1024;
    NormalizedCoordinate ua = normalize_coord(plane_to_geo(wc.anchor, {0, 0}), 1000000);
    NormalizedCoordinate ub = normalize_coord(plane_to_geo(wc.anchor, {120, 0}), 1000000);

    std::vector<Bytes> secrets{
        u64_be(ua.lat_units), u64_be(ua.lng_units), u64_be(ub.lat_units), u64_be(ub.lng_units),
        Bytes(alice.ltc.identity.begin(), alice.ltc.identity.end()),
        alice.ltc.keys.pk.serialize(), mpz_to_bytes(alice.ltc.keys.sk), alice.ltc.issuer_sig,
        Bytes(bob.ltc.identity.begin(), bob.ltc.identity.end()),
        bob.ltc.keys.pk.serialize(), mpz_to_bytes(bob.ltc.keys.sk), bob.ltc.issuer_sig,
    };

    for (int i = 0; i < 100; ++i) {
        WorldConfig cfg = wc;
        cfg.seed = 5000 + uint64_t(i);
        World world(cfg, trust);
        world.add_honest("alice", {0, 0}, alice.wallet);
        world.add_honest("bob", {120, 0}, bob.wallet);
        world.schedule_session("alice", 0);
        world.run();

        auto results = world.results();
        if (results.size() != 1 || results[0].second.outcome != Outcome::Neighbor) {
            detail = fmt("session %d did not finish as neighbors", i);
            return false;
        }
        auto findings = privacy_scan(world.transcript().all_bytes(), secrets);
        if (!findings.empty()) {
            detail = fmt("secret %zu leaked in session %d at offset %zu",
                         findings[0].secret_index, i, findings[0].offset);
            return false;
        }
    }

    // The plaintext baseline must leak the responder's position every time.
    std::vector<Bytes> responder_units{u64_be(ub.lat_units), u64_be(ub.lng_units)};
    for (int i = 0; i < 100; ++i) {
        WorldConfig cfg = wc;
        cfg.protocol = Protocol::Snd;
        cfg.seed = 6000 + uint64_t(i);
        World world(cfg, trust);
        world.add_honest("alice", {0, 0}, alice.wallet);
        world.add_honest("bob", {120, 0}, bob.wallet);
        world.schedule_session("alice", 0);
        world.run();

        auto results = world.results();
        if (results.size() != 1 || results[0].second.outcome != Outcome::Neighbor) {
            detail = fmt("baseline session %d did not finish as neighbors", i);
            return false;
        }
        Bytes wire = world.transcript().all_bytes();
        bool lat_seen = !privacy_scan(wire, {responder_units[0]}).empty();
        bool lng_seen = !privacy_scan(wire, {responder_units[1]}).empty();
        if (!lat_seen || !lng_seen) {
            detail = fmt("baseline session %d hid the responder position", i);
            return false;
        }
    }

    detail = "0/100 private transcripts leak, 100/100 baseline transcripts reveal";
    return true;
}

// ---------------------------------------------------------------- check 6

std::set<Bytes> frame_windows(const Transcript& transcript) {
    std::set<Bytes> out;
    for (const auto& e : transcript.entries()) {
        if (e.dir != TraceDir::Tx || e.frame.size() < 8) continue;
        for (size_t i = 0; i + 8 <= e.frame.size(); ++i) {
            out.insert(Bytes(e.frame.begin() + i, e.frame.begin() + i + 8));
        }
    }
    return out;
}

std::set<Bytes> intersect(const std::set<Bytes>& a, const std::set<Bytes>& b) {
    std::set<Bytes> out;
    for (const auto& w : a)
        if (b.count(w)) out.insert(w);
    return out;
}

bool check_unlinkability(std::string& detail) {
    DeterministicRng root(606);
    TrustDomain trust(1024, root.fork("trust"));
    const SimTime tau = 1'000'000'000'000;  // 1 s lifetimes
    PseudonymWallet wa = enroll_forever(trust, root, "unlink-a", 1024, 16, tau, 0);
    PseudonymWallet wb = enroll_forever(trust, root, "unlink-b", 1024, 16, tau, 0);
    PseudonymWallet wx = enroll_forever(trust, root, "unlink-x", 1024, 16, tau, 0);
    PseudonymWallet wy = enroll_forever(trust, root, "unlink-y", 1024, 16, tau, 0);

    // Within a wallet, every certificate field must be fresh per lifetime.
    const Bytes& provider = trust.pca().provider_id();
    for (size_t i = 0; i < wa.entries.size(); ++i) {
        const Pseudonym& pi = wa.entries[i].pnym;
        if (pi.provider_id != provider) {
            detail = "provider id not shared";
            return false;
        }
        for (size_t j = i + 1; j < wa.entries.size(); ++j) {
            const Pseudonym& pj = wa.entries[j].pnym;
            bool distinct = pi.valid_from != pj.valid_from && pi.valid_to != pj.valid_to &&
                            pi.ppk.serialize() != pj.ppk.serialize() &&
                            pi.sig_pk.serialize() != pj.sig_pk.serialize() &&
                            pi.provider_sig != pj.provider_sig &&
                            wa.entries[i].pid != wa.entries[j].pid;
            if (!distinct) {
                detail = fmt("wallet entries %zu and %zu share a field", i, j);
                return false;
            }
        }
    }

    WorldConfig wc;
    wc.session.paillier_bits = 1024;
    auto run_session = [&](PseudonymWallet& init, PseudonymWallet& resp, SimTime at,
                           uint64_t seed) {
        WorldConfig cfg = wc;
        cfg.seed = seed;
        World world(cfg, trust);
        world.add_honest("alice", {0, 0}, init);
        world.add_honest("bob", {120, 0}, resp);
        world.schedule_session("alice", at);
        world.run();
        auto results = world.results();
        if (results.size() != 1 || results[0].second.outcome != Outcome::Neighbor) {
            throw SimulationError("unlinkability session failed");
        }
        return frame_windows(world.transcript());
    };

    SimTime early = 2 * tau + 1'000'000;  // third lifetime
    SimTime late = 9 * tau + 1'000'000;   // tenth lifetime
    std::set<Bytes> t_early = run_session(wa, wb, early, 6001);
    std::set<Bytes> t_late = run_session(wa, wb, late, 6002);
    std::set<Bytes> t_control = run_session(wx, wy, late, 6003);

    // Whatever the same pair shares across lifetimes must also be shared
    // with an unrelated pair, i.e. pure protocol structure, or the provider
    // id itself.
    std::set<Bytes> shared = intersect(t_early, t_late);
    std::set<Bytes> structural = intersect(t_early, t_control);
    size_t linking = 0;
    for (const auto& w : shared) {
        if (structural.count(w)) continue;
        if (w == provider) continue;
        ++linking;
    }
    if (linking != 0) {
        detail = fmt("%zu identifier windows link lifetimes", linking);
        return false;
    }

    detail = fmt("16 lifetimes pairwise fresh, %zu shared windows all structural", shared.size());
    return true;
}

// ---------------------------------------------------------------- check 7

bool check_curious_containment(std::string& detail) {
    DeterministicRng root(707);
    TrustDomain trust(1024, root.fork("trust"));
    PseudonymWallet we = enroll_forever(trust, root, "curious-e", 1024);
    PseudonymWallet wb = enroll_forever(trust, root, "curious-b", 1024);
    Pid bob_pid = wb.entries[0].pid;

    WorldConfig wc;
    wc.session.paillier_bits = 1024;
    GeoCoordinate bob_geo = plane_to_geo(wc.anchor, {120, 0});
    NormalizedCoordinate bob_units = normalize_coord(bob_geo, 1000000);

    // Fifty unhindered sessions: the curious side ends up with scalars only.
    {
        WorldConfig cfg = wc;
        cfg.seed = 7001;
        World world(cfg, trust);
        CuriousNode& eve = world.add_curious("eve", {0, 0}, we, 0, 10'000'000'000, 50);
        HonestNode& bob = world.add_honest("bob", {120, 0}, wb);
        world.run();

        if (bob.endpoint().rate_refusals() != 0) {
            detail = "unexpected refusals with rate limiting off";
            return false;
        }
        if (eve.knowledge().count(bob_pid) != 1) {
            detail = "curious node learned nothing";
            return false;
        }
        const CuriousNode::Knowledge& k = eve.knowledge().at(bob_pid);
        if (k.sessions != 50 || std::fabs(k.last_d_tof_m - 120.0) > 0.001 ||
            std::fabs(k.last_d_he_m - 120.0) > 0.25) {
            detail = fmt("expected 50 sessions at 120 m, got %" PRIu64 " at %.3f/%.3f m",
                         k.sessions, k.last_d_tof_m, k.last_d_he_m);
            return false;
        }

        const WalletEntry& bw = wb.entries[0];
        std::vector<Bytes> secrets{
            u64_be(bob_units.lat_units),
            u64_be(bob_units.lng_units),
            u64_be(std::bit_cast<uint64_t>(bob_geo.lat)),
            u64_be(std::bit_cast<uint64_t>(bob_geo.lng)),
            mpz_to_bytes(bw.paillier.lambda),
            mpz_to_bytes(bw.paillier.mu),
            mpz_to_bytes(bw.sig_sk),
        };
        if (!privacy_scan(eve.knowledge_bytes(), secrets).empty()) {
            detail = "peer coordinates or key material in retained state";
            return false;
        }
    }

    // Same curious schedule against an enforced minimum spacing: every
    // second attempt lands inside the window and is refused.
    {
        WorldConfig cfg = wc;
        cfg.seed = 7002;
        cfg.session.tau_snd_ps = 10'000'000'000'000;  // 10 s
        World world(cfg, trust);
        CuriousNode& eve = world.add_curious("eve", {0, 0}, we, 0, 5'000'000'000'000, 50);
        HonestNode& bob = world.add_honest("bob", {120, 0}, wb);
        world.run();

        uint64_t refused = bob.endpoint().rate_refusals();
        uint64_t completed =
            eve.knowledge().count(bob_pid) ? eve.knowledge().at(bob_pid).sessions : 0;
        if (refused != 25 || completed != 25) {
            detail = fmt("expected 25 accepted / 25 refused, got %" PRIu64 " / %" PRIu64,
                         completed, refused);
            return false;
        }
    }

    detail = "50 sessions leave scalars only; half-spacing attempts refused 25/25";
    return true;
}

// ---------------------------------------------------------------- check 8

bool check_cost_scaling(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    const unsigned sizes[] = {1024, 2048, 3072};
    const char* roles[] = {"initiator", "responder"};

    std::map<std::tuple<std::string, unsigned, std::string>, SummaryRow> cells;
    uint64_t seed = 8001;
    for (Protocol protocol : {Protocol::Ppsnd, Protocol::Snd}) {
        for (unsigned bits : sizes) {
            BenchConfig cfg;
            cfg.protocol = protocol;
            cfg.key_bits = bits;
            cfg.trials = 200;
            cfg.seed = seed++;
            for (const SummaryRow& row : summarize(run_bench(cfg))) {
                cells[{row.protocol, row.key_bits, row.role}] = row;
            }
        }
    }

    auto cell = [&](const char* p, unsigned bits, const char* role) -> const SummaryRow& {
        return cells.at({p, bits, role});
    };

    for (const char* protocol : {"ppsnd", "snd"}) {
        for (const char* role : roles) {
            const SummaryRow& s1 = cell(protocol, 1024, role);
            const SummaryRow& s2 = cell(protocol, 2048, role);
            const SummaryRow& s3 = cell(protocol, 3072, role);
            if (!(s1.ci95_high < s2.ci95_low && s2.ci95_high < s3.ci95_low)) {
                detail = fmt("%s %s intervals overlap across key sizes", protocol, role);
                return false;
            }
        }
    }
    for (unsigned bits : sizes) {
        for (const char* role : roles) {
            if (!(cell("ppsnd", bits, role).mean_seconds > cell("snd", bits, role).mean_seconds)) {
                detail = fmt("private protocol not costlier at %u bits (%s)", bits, role);
                return false;
            }
        }
        if (!(cell("snd", bits, "initiator").mean_seconds >
              cell("snd", bits, "responder").mean_seconds)) {
            detail = fmt("baseline initiator not costlier at %u bits", bits);
            return false;
        }
        double mi = cell("ppsnd", bits, "initiator").mean_seconds;
        double mr = cell("ppsnd", bits, "responder").mean_seconds;
        if (std::max(mi, mr) > 2.0 * std::min(mi, mr)) {
            detail = fmt("role means differ by more than 2x at %u bits", bits);
            return false;
        }
    }

    double elapsed = seconds_since(t0);
    detail = fmt("200 trials per cell, 6 cells, %.0fs", elapsed);
    return elapsed <= kMaxSecondsBench;
}

// ---------------------------------------------------------------- check 9

bool check_determinism(std::string& detail) {
    const char* scenario = R"({
        "protocol": "ppsnd",
        "seed": 90909,
        "paillier_bits": 1024,
        "nodes": [
            {"name": "alice", "x_m": 0, "y_m": 0},
            {"name": "bob", "x_m": 140, "y_m": 30}
        ],
        "relays": [{"name": "echo", "x_m": 60, "y_m": -40, "delay_ns": 250}],
        "eavesdroppers": [{"name": "eve", "x_m": 70, "y_m": 15}],
        "sessions": [
            {"initiator": "alice", "at_us": 10},
            {"initiator": "bob", "at_us": 900}
        ]
    })";

    ScenarioOutcome first = run_scenario(scenario);
    ScenarioOutcome second = run_scenario(scenario);
    if (first.trace_jsonl.empty()) {
        detail = "empty trace";
        return false;
    }
    if (first.trace_jsonl != second.trace_jsonl) {
        detail = "same-seed traces differ";
        return false;
    }
    if (first.events != second.events || first.results.size() != second.results.size()) {
        detail = "same-seed runs diverged";
        return false;
    }

    detail = fmt("two runs, %zu trace bytes identical", first.trace_jsonl.size());
    return true;
}

}  // namespace

int main() {
    struct Check {
        const char* name;
        bool (*fn)(std::string&);
    };
    const Check checks[] = {
        {"homomorphic arithmetic oracle", check_phe_oracle},
        {"encrypted pipeline equivalence", check_pipeline_equivalence},
        {"discovery range sweep", check_range_sweep},
        {"relay delay threshold", check_relay_threshold},
        {"transcript location privacy", check_location_privacy},
        {"pseudonym unlinkability", check_unlinkability},
        {"curious peer containment", check_curious_containment},
        {"crypto cost scaling", check_cost_scaling},
        {"trace determinism", check_determinism},
    };

    int failures = 0;
    for (size_t i = 0; i < std::size(checks); ++i) {
        std::string note;
        bool ok = false;
        try {
            ok = checks[i].fn(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        std::printf("[%zu/9] %-32s %s  (%s)\n", i + 1, checks[i].name, ok ? "PASS" : "FAIL",
                    note.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }

    if (failures == 0) {
        std::printf("all 9 acceptance checks passed\n");
    } else {
        std::printf("%d acceptance check(s) failed\n", failures);
    }
    return failures;
}
