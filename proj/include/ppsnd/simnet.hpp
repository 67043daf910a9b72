#pragma once

#include <memory>
#include <queue>

#include "ppsnd/protocol.hpp"
#include "ppsnd/trace.hpp"

namespace ppsnd {

// Node placement on a local tangent plane, meters east (x) and north (y) of
// the anchor coordinate.
struct PlanePoint {
    double x = 0;
    double y = 0;
};

double plane_distance(PlanePoint a, PlanePoint b);
GeoCoordinate plane_to_geo(const GeoCoordinate& anchor, PlanePoint p);

// Credential infrastructure shared by every node in a deployment. Lives
// outside the simulated world so wallets can be reused across runs.
class TrustDomain {
  public:
    TrustDomain(unsigned schnorr_bits, DeterministicRng rng);

    PseudonymWallet enroll(const std::string& identity, size_t k, SimTime tau, SimTime start,
                           unsigned paillier_bits, DeterministicRng rng);

    const SchnorrPublicKey& pca_anchor() const { return pca_.anchor(); }
    Ltca& ltca() { return ltca_; }
    Pca& pca() { return pca_; }

  private:
    Ltca ltca_;
    Pca pca_;
};

enum class Protocol : uint8_t { Ppsnd, Snd };

struct WorldConfig {
    Protocol protocol = Protocol::Ppsnd;
    SessionConfig session;
    GeoCoordinate anchor{59.3293, 18.0686};
    uint64_t seed = 1;
    uint64_t max_events = 1'000'000;
};

class World;

class SimNode {
  public:
    SimNode(std::string name, PlanePoint pos) : name_(std::move(name)), pos_(pos) {}
    virtual ~SimNode() = default;

    virtual void on_frame(World& world, const Bytes& frame, SimTime now) = 0;
    virtual void on_timer(World& world, uint64_t timer_id, SimTime now) {
        (void)world, (void)timer_id, (void)now;
    }

    const std::string& name() const { return name_; }
    PlanePoint position() const { return pos_; }

  protected:
    std::string name_;
    PlanePoint pos_;
};

// Protocol participant. Deduplicates deliveries by frame content, so when a
// relay echoes traffic the first arrival of each frame is the one that
// counts.
class HonestNode : public SimNode {
  public:
    HonestNode(std::string name, PlanePoint pos, std::unique_ptr<Endpoint> endpoint);

    void on_frame(World& world, const Bytes& frame, SimTime now) override;
    void on_timer(World& world, uint64_t timer_id, SimTime now) override;
    void start_session(World& world, SimTime now);

    Endpoint& endpoint() { return *endpoint_; }
    const Endpoint& endpoint() const { return *endpoint_; }
    const std::vector<SessionResult>& results() const { return results_; }

  protected:
    virtual void apply(World& world, EndpointOutputs outputs);

    std::unique_ptr<Endpoint> endpoint_;
    std::vector<SessionResult> results_;
    std::set<Digest> seen_;
};

// Honest-but-curious profile: protocol-conformant, but starts sessions on a
// fixed period regardless of its own spacing limit, and distills every result
// into per-peer distance scalars. Nothing else is retained.
class CuriousNode final : public HonestNode {
  public:
    struct Knowledge {
        uint64_t sessions = 0;
        double last_d_tof_m = std::numeric_limits<double>::quiet_NaN();
        double last_d_he_m = std::numeric_limits<double>::quiet_NaN();
    };

    CuriousNode(std::string name, PlanePoint pos, std::unique_ptr<Endpoint> endpoint, SimTime period,
                uint64_t session_budget);

    void on_timer(World& world, uint64_t timer_id, SimTime now) override;

    const std::map<Pid, Knowledge>& knowledge() const { return knowledge_; }
    Bytes knowledge_bytes() const;  // full serialized store, for leak scans

    static constexpr uint64_t kTickTimer = 0;  // endpoint timer ids start at 1

  protected:
    void apply(World& world, EndpointOutputs outputs) override;

  private:
    SimTime period_;
    uint64_t remaining_;
    std::map<Pid, Knowledge> knowledge_;
};

// Wormhole endpoint: echoes every frame it hears exactly once, from
// `emit_at`, after a fixed processing delay plus the internal link time
// between its two antennas. A plain single-antenna relay has both antennas in
// the same place.
class RelayNode final : public SimNode {
  public:
    RelayNode(std::string name, PlanePoint hear_at, PlanePoint emit_at, SimTime process_delay_ps);

    void on_frame(World& world, const Bytes& frame, SimTime now) override;

  private:
    PlanePoint emit_;
    SimTime forward_delay_ps_;  // processing plus antenna-to-antenna travel
    std::set<Digest> seen_;
};

// Passive listener; logs everything it hears and sends nothing.
class EavesdropperNode final : public SimNode {
  public:
    using SimNode::SimNode;

    void on_frame(World& world, const Bytes& frame, SimTime now) override;

    const Transcript& log() const { return log_; }

  private:
    Transcript log_;
};

// Active attacker without credentials: answers ranging challenges instantly
// with fabricated responses and floods advertisements carrying self-signed
// credentials.
class ForgerNode final : public SimNode {
  public:
    ForgerNode(std::string name, PlanePoint pos, DeterministicRng rng, bool forge_ranging,
               uint64_t flood_budget, SimTime flood_period);

    void on_frame(World& world, const Bytes& frame, SimTime now) override;
    void on_timer(World& world, uint64_t timer_id, SimTime now) override;

    uint64_t forged_sent() const { return forged_sent_; }

  private:
    Bytes fake_advert();

    DeterministicRng rng_;
    bool forge_ranging_;
    uint64_t flood_remaining_;
    SimTime flood_period_;
    uint64_t forged_sent_ = 0;
};

// Deterministic event-driven radio medium. Frames broadcast from a point
// reach every other node within radio range after free-space propagation
// delay; processing is instantaneous and ties resolve in schedule order.
class World {
  public:
    World(WorldConfig config, TrustDomain& trust);

    HonestNode& add_honest(const std::string& name, PlanePoint pos, PseudonymWallet wallet);
    CuriousNode& add_curious(const std::string& name, PlanePoint pos, PseudonymWallet wallet,
                             SimTime first_at, SimTime period, uint64_t session_budget);
    RelayNode& add_relay(const std::string& name, PlanePoint pos, SimTime process_delay_ps);
    // Two linked antennas: frames heard at one end re-emit from the other.
    void add_chain_relay(const std::string& name, PlanePoint end_a, PlanePoint end_b,
                         SimTime process_delay_ps);
    EavesdropperNode& add_eavesdropper(const std::string& name, PlanePoint pos);
    ForgerNode& add_forger(const std::string& name, PlanePoint pos, bool forge_ranging,
                           uint64_t flood_budget, SimTime flood_first_at, SimTime flood_period);

    void schedule_session(const std::string& initiator, SimTime at);
    void run();

    void broadcast_from(PlanePoint origin, const SimNode& sender, const Bytes& frame, SimTime at);
    void arm_timer(SimNode& node, uint64_t timer_id, SimTime at);

    HonestNode& honest(const std::string& name);
    CuriousNode& curious(const std::string& name);
    const Transcript& transcript() const { return transcript_; }
    std::vector<std::pair<std::string, SessionResult>> results() const;
    const WorldConfig& config() const { return config_; }
    TrustDomain& trust() { return trust_; }
    uint64_t events_processed() const { return events_processed_; }

  private:
    enum class EventKind : uint8_t { Transmit, Deliver, Timer, Start };
    struct Event {
        SimTime at = 0;
        uint64_t seq = 0;
        EventKind kind = EventKind::Transmit;
        size_t node = SIZE_MAX;  // Deliver/Timer/Start target
        PlanePoint origin{};     // Transmit
        Bytes frame;             // Transmit/Deliver
        uint64_t timer_id = 0;   // Timer

        bool operator>(const Event& other) const {
            return at != other.at ? at > other.at : seq > other.seq;
        }
    };

    void push(Event e);
    std::unique_ptr<Endpoint> make_endpoint(const std::string& name, PlanePoint pos,
                                            PseudonymWallet wallet);
    size_t register_node(std::unique_ptr<SimNode> node);

    WorldConfig config_;
    TrustDomain& trust_;
    DeterministicRng rng_;
    std::vector<std::unique_ptr<SimNode>> nodes_;
    std::map<std::string, size_t> by_name_;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
    uint64_t next_seq_ = 0;
    uint64_t events_processed_ = 0;
    Transcript transcript_;
};

}  // namespace ppsnd
