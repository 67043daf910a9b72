#pragma once

#include <chrono>
#include <limits>
#include <map>
#include <optional>
#include <set>

#include "ppsnd/geo.hpp"
#include "ppsnd/wire.hpp"

namespace ppsnd {

// One-way signal travel time over `meters` of free space.
SimTime propagation_ps(double meters);

struct SessionConfig {
    double r_m = 400.0;       // radio range
    double r_snd_m = 200.0;   // neighbor discovery range, < r_m
    double epsilon_m = 5.0;   // agreement threshold between the two distances
    SimTime delta_proc_ps = 20'000'000;          // fixed responder turnaround (20 us)
    SimTime response_guard_ps = 10'000'000;      // slack on the ranging deadline (10 us)
    SimTime reply_timeout_ps = 50'000'000'000;   // per-message deadline after ranging (50 ms)
    SimTime responder_gc_ps = 200'000'000'000;   // responder session retention (200 ms)
    int64_t normalize_factor = kDefaultNormalizeFactor;
    SimTime tau_snd_ps = 0;   // min spacing between sessions per peer; 0 disables
    unsigned paillier_bits = 1024;

    void validate() const;
    // Latest a ranging response can arrive: 2R/c + turnaround + guard.
    SimTime ranging_deadline_ps() const;
};

enum class Outcome : uint8_t { Neighbor, NotNeighbor, Aborted };
const char* outcome_name(Outcome outcome);

// Reason strings attached to results. Aborts: "timeout", "nonce-mismatch",
// "hash-mismatch", "auth-fail", "malformed", "pnym-expired". NotNeighbor
// carries "tof-gate" (ranging gate) or "epsilon" (distance disagreement).
struct SessionResult {
    Outcome outcome = Outcome::Aborted;
    std::string reason;
    Pid local_pid = 0;
    Pid peer_pid = 0;
    SimTime t1 = -1;
    SimTime t2 = -1;
    double d_tof_m = std::numeric_limits<double>::quiet_NaN();
    double d_he_m = std::numeric_limits<double>::quiet_NaN();
};

struct SendIntent {
    SimTime at = 0;  // absolute transmit time, >= now
    Bytes frame;
};

struct EndpointOutputs {
    std::vector<SendIntent> sends;
    std::vector<std::pair<SimTime, uint64_t>> timers;  // (fire_at, timer id)
    std::vector<SessionResult> results;
};

enum class Role : uint8_t { Initiator, Responder };

// Wall-clock seconds spent in cryptographic operations, split by the role the
// endpoint was playing at the time. Message handling, queueing and state
// bookkeeping are excluded.
struct CryptoCost {
    double initiator_seconds = 0;
    double responder_seconds = 0;

    double& slot(Role role) { return role == Role::Initiator ? initiator_seconds : responder_seconds; }
    void reset() { initiator_seconds = responder_seconds = 0; }
};

// Signature input layouts, shared by endpoints and by tests that forge
// traffic.
Digest auth_commit_digest(const Nonce& n1);
Digest auth_range_digest(Pid initiator, Pid responder, const Nonce& n1, const Nonce& n2_plus_1);
Digest auth_coord_digest(Pid initiator, Pid responder, const Bytes& x_ct, const Bytes& y_ct);
Digest auth_diff_digest(Pid initiator, Pid responder, const Bytes& diff_lat_ct, const Bytes& diff_lng_ct);
Digest base_auth_digest(const Nonce& n1, const Nonce& n2, uint64_t lat_units, uint64_t lng_units);

// Protocol endpoint: one per node, handles both the initiator and the
// responder side. Drives no clock of its own; the caller feeds frames and
// timer expirations and forwards the returned sends.
class Endpoint {
  public:
    Endpoint(std::string name, SessionConfig config, PseudonymWallet wallet, SchnorrPublicKey pca_anchor,
             GeoCoordinate position, DeterministicRng rng);
    virtual ~Endpoint() = default;

    virtual EndpointOutputs start_session(SimTime now) = 0;
    virtual EndpointOutputs on_frame(const Bytes& frame, SimTime now) = 0;
    virtual EndpointOutputs on_timer(uint64_t timer_id, SimTime now) = 0;

    // Live responder-side sessions; forged advertisements must not create any.
    virtual size_t responder_session_count() const = 0;

    const std::string& name() const { return name_; }
    const GeoCoordinate& position() const { return position_; }
    const PseudonymWallet& wallet() const { return wallet_; }
    const SessionConfig& config() const { return config_; }

    CryptoCost& crypto_cost() { return cost_; }
    uint64_t rate_refusals() const { return rate_refusals_; }

    // Honest nodes space their own session starts by tau_snd; a curious node
    // switches this off and relies on peers to refuse.
    void set_self_rate_limit(bool enabled) { self_rate_limit_ = enabled; }

  protected:
    class Timed {  // accumulates wall time into the role's crypto cost slot
      public:
        Timed(CryptoCost& cost, Role role);
        ~Timed();

      private:
        double* slot_;
        std::chrono::steady_clock::time_point start_;
    };

    uint64_t next_timer_id() { return next_timer_++; }
    bool is_own_pid(Pid pid) const;
    bool may_start(SimTime now) const;
    void note_start(SimTime now) { last_start_ = now; started_ = true; }
    bool accept_session(SimTime now);  // rate gate; counts refusals

    std::string name_;
    SessionConfig config_;
    PseudonymWallet wallet_;
    SchnorrPublicKey pca_anchor_;
    GeoCoordinate position_;
    NormalizedCoordinate own_units_;
    DeterministicRng rng_;
    CryptoCost cost_;
    std::set<Pid> own_pids_;
    bool self_rate_limit_ = true;
    bool started_ = false;
    SimTime last_start_ = 0;
    bool accepted_ = false;
    SimTime last_accept_ = 0;
    uint64_t rate_refusals_ = 0;
    uint64_t next_timer_ = 1;
};

// Six-message discovery: nonce commitment, timed challenge/response ranging,
// authenticated echo, then an encrypted coordinate comparison. The initiator
// learns two distances and compares them; neither side reveals plaintext
// coordinates.
class PpsndEndpoint final : public Endpoint {
  public:
    using Endpoint::Endpoint;

    EndpointOutputs start_session(SimTime now) override;
    EndpointOutputs on_frame(const Bytes& frame, SimTime now) override;
    EndpointOutputs on_timer(uint64_t timer_id, SimTime now) override;
    size_t responder_session_count() const override;

  private:
    struct PeerState {
        enum class Stage : uint8_t { WaitD, WaitF, Done } stage = Stage::WaitD;
        Nonce n2{};
        SimTime t2 = -1;
        Pseudonym pnym_b;
        double d_tof_m = std::numeric_limits<double>::quiet_NaN();
    };
    struct InitiatorSession {
        uint64_t gen = 0;
        Nonce n1{};
        Digest h_n1{};
        Pid own_pid = 0;
        const WalletEntry* entry = nullptr;
        SimTime t1 = -1;
        bool accepting = true;
        std::map<Pid, PeerState> peers;
    };
    struct ResponderSession {
        enum class Stage : uint8_t { WaitB, WaitE, Done } stage = Stage::WaitB;
        Pid pid_a = 0;
        Pid own_pid = 0;
        Pseudonym pnym_a;
        Bytes auth_a;  // verified once the nonce is revealed
        Nonce n1{};
        Nonce n2{};
        const WalletEntry* entry = nullptr;
        SimTime created = 0;
    };
    using RespKey = std::pair<Pid, Digest>;

    enum class TimerKind : uint8_t { RangingDeadline, EchoDeadline, DiffDeadline, ResponderGc };
    struct TimerInfo {
        TimerKind kind;
        uint64_t gen = 0;
        Pid peer = 0;
        RespKey rkey{};
    };

    void on_a(const MsgA& m, SimTime now, EndpointOutputs& out);
    void on_b(const MsgB& m, SimTime now, EndpointOutputs& out);
    void on_c(const MsgC& m, SimTime now, EndpointOutputs& out);
    void on_d(const MsgD& m, SimTime now, EndpointOutputs& out);
    void on_e(const MsgE& m, SimTime now, EndpointOutputs& out);
    void on_f(const MsgF& m, SimTime now, EndpointOutputs& out);

    void finish_peer(PeerState& peer, Pid peer_pid, SessionResult result, EndpointOutputs& out);
    SessionResult result_shell(Pid peer_pid) const;

    std::optional<InitiatorSession> init_;
    uint64_t session_gen_ = 0;
    std::map<RespKey, ResponderSession> resp_;
    std::map<uint64_t, TimerInfo> timers_;
};

// Challenge-response baseline: the same timed ranging, but the responder
// authenticates its plaintext location instead of running the encrypted
// comparison.
class BaselineEndpoint final : public Endpoint {
  public:
    using Endpoint::Endpoint;

    EndpointOutputs start_session(SimTime now) override;
    EndpointOutputs on_frame(const Bytes& frame, SimTime now) override;
    EndpointOutputs on_timer(uint64_t timer_id, SimTime now) override;
    size_t responder_session_count() const override;

  private:
    struct PeerState {
        enum class Stage : uint8_t { WaitAuth, Done } stage = Stage::WaitAuth;
        Nonce n2{};
        SimTime t2 = -1;
    };
    struct InitiatorSession {
        uint64_t gen = 0;
        Nonce n1{};
        Pid own_pid = 0;
        const WalletEntry* entry = nullptr;
        SimTime t1 = -1;
        bool accepting = true;
        std::map<Pid, PeerState> peers;
    };
    using RespKey = std::pair<Pid, Nonce>;

    enum class TimerKind : uint8_t { RangingDeadline, AuthDeadline, ResponderGc };
    struct TimerInfo {
        TimerKind kind;
        uint64_t gen = 0;
        Pid peer = 0;
        RespKey rkey{};
    };

    void on_challenge(const BaseChallenge& m, SimTime now, EndpointOutputs& out);
    void on_response(const BaseResponse& m, SimTime now, EndpointOutputs& out);
    void on_auth(const BaseAuth& m, SimTime now, EndpointOutputs& out);

    SessionResult result_shell(Pid peer_pid) const;

    std::optional<InitiatorSession> init_;
    uint64_t session_gen_ = 0;
    std::set<RespKey> resp_seen_;  // answered challenges, for duplicate suppression
    std::map<uint64_t, TimerInfo> timers_;
};

}  // namespace ppsnd
