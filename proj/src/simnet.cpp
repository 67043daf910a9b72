#include "ppsnd/simnet.hpp"

#include <bit>
#include <cmath>

namespace ppsnd {

double plane_distance(PlanePoint a, PlanePoint b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

GeoCoordinate plane_to_geo(const GeoCoordinate& anchor, PlanePoint p) {
    GeoCoordinate g;
    g.lat = anchor.lat + p.y / kMetersPerDegree;
    g.lng = anchor.lng + p.x / (kMetersPerDegree * std::cos(anchor.lat * M_PI / 180.0));
    return g;
}

TrustDomain::TrustDomain(unsigned schnorr_bits, DeterministicRng rng)
    : ltca_(rng.fork("ltca")), pca_(SchnorrGroup::for_bits(schnorr_bits), rng.fork("pca")) {}

PseudonymWallet TrustDomain::enroll(const std::string& identity, size_t k, SimTime tau, SimTime start,
                                    unsigned paillier_bits, DeterministicRng rng) {
    LongTermCredential ltc = ltca_.issue_ltc(identity);
    AnonymousToken token = ltca_.request_token(ltc);
    KeyMaterial material = KeyMaterial::generate(k, paillier_bits, rng);
    return pca_.issue_batch(token, ltca_.anchor(), k, tau, start, material);
}

HonestNode::HonestNode(std::string name, PlanePoint pos, std::unique_ptr<Endpoint> endpoint)
    : SimNode(std::move(name), pos), endpoint_(std::move(endpoint)) {}

void HonestNode::on_frame(World& world, const Bytes& frame, SimTime now) {
    if (!seen_.insert(sha256(frame)).second) return;  // first delivery wins
    apply(world, endpoint_->on_frame(frame, now));
}

void HonestNode::on_timer(World& world, uint64_t timer_id, SimTime now) {
    apply(world, endpoint_->on_timer(timer_id, now));
}

void HonestNode::start_session(World& world, SimTime now) {
    apply(world, endpoint_->start_session(now));
}

void HonestNode::apply(World& world, EndpointOutputs outputs) {
    for (auto& send : outputs.sends) world.broadcast_from(pos_, *this, send.frame, send.at);
    for (auto& [at, id] : outputs.timers) world.arm_timer(*this, id, at);
    results_.insert(results_.end(), outputs.results.begin(), outputs.results.end());
}

CuriousNode::CuriousNode(std::string name, PlanePoint pos, std::unique_ptr<Endpoint> endpoint,
                         SimTime period, uint64_t session_budget)
    : HonestNode(std::move(name), pos, std::move(endpoint)), period_(period), remaining_(session_budget) {
    endpoint_->set_self_rate_limit(false);
}

void CuriousNode::on_timer(World& world, uint64_t timer_id, SimTime now) {
    if (timer_id != kTickTimer) {
        HonestNode::on_timer(world, timer_id, now);
        return;
    }
    if (remaining_ == 0) return;
    --remaining_;
    start_session(world, now);
    if (remaining_ > 0) world.arm_timer(*this, kTickTimer, now + period_);
}

void CuriousNode::apply(World& world, EndpointOutputs outputs) {
    HonestNode::apply(world, std::move(outputs));
    for (const auto& res : results_) {
        if (res.peer_pid == 0) continue;
        Knowledge& k = knowledge_[res.peer_pid];
        ++k.sessions;
        k.last_d_tof_m = res.d_tof_m;
        k.last_d_he_m = res.d_he_m;
    }
    results_.clear();  // scalars above are all this node keeps
}

Bytes CuriousNode::knowledge_bytes() const {
    Bytes out;
    for (const auto& [pid, k] : knowledge_) {
        put_u64_be(out, pid);
        put_u64_be(out, k.sessions);
        put_u64_be(out, std::bit_cast<uint64_t>(k.last_d_tof_m));
        put_u64_be(out, std::bit_cast<uint64_t>(k.last_d_he_m));
    }
    return out;
}

RelayNode::RelayNode(std::string name, PlanePoint hear_at, PlanePoint emit_at, SimTime process_delay_ps)
    : SimNode(std::move(name), hear_at),
      emit_(emit_at),
      forward_delay_ps_(process_delay_ps + propagation_ps(plane_distance(hear_at, emit_at))) {}

void RelayNode::on_frame(World& world, const Bytes& frame, SimTime now) {
    if (!seen_.insert(sha256(frame)).second) return;  // each frame echoes once
    world.broadcast_from(emit_, *this, frame, now + forward_delay_ps_);
}

void EavesdropperNode::on_frame(World& world, const Bytes& frame, SimTime now) {
    (void)world;
    log_.record(now, TraceDir::Rx, name_, frame);
}

ForgerNode::ForgerNode(std::string name, PlanePoint pos, DeterministicRng rng, bool forge_ranging,
                       uint64_t flood_budget, SimTime flood_period)
    : SimNode(std::move(name), pos),
      rng_(std::move(rng)),
      forge_ranging_(forge_ranging),
      flood_remaining_(flood_budget),
      flood_period_(flood_period) {}

void ForgerNode::on_frame(World& world, const Bytes& frame, SimTime now) {
    if (!forge_ranging_) return;
    ProtocolMessage msg;
    try {
        msg = decode(frame);
    } catch (const DecodeError&) {
        return;
    }
    // Answer ranging challenges instantly, skipping the mandated turnaround,
    // to fake a shorter round trip.
    if (const auto* b = std::get_if<MsgB>(&msg)) {
        MsgC forged;
        forged.sender_pid = rng_.u64();
        forged.dest_pid = b->sender_pid;
        rng_.fill(forged.n2.data(), forged.n2.size());
        world.broadcast_from(pos_, *this, encode(forged), now);
        ++forged_sent_;
    } else if (const auto* c = std::get_if<BaseChallenge>(&msg)) {
        BaseResponse forged;
        forged.time = now;
        forged.sender_pid = rng_.u64();
        forged.dest_pid = c->sender_pid;
        rng_.fill(forged.n2.data(), forged.n2.size());
        world.broadcast_from(pos_, *this, encode(forged), now);
        ++forged_sent_;
    }
}

Bytes ForgerNode::fake_advert() {
    Pseudonym pnym;
    pnym.provider_id.resize(8);
    rng_.fill(pnym.provider_id.data(), pnym.provider_id.size());
    pnym.valid_from = 0;
    pnym.valid_to = int64_t(1) << 60;
    Bytes fake_n(64);
    rng_.fill(fake_n.data(), fake_n.size());
    fake_n[63] |= 1;
    fake_n[0] |= 0x80;
    pnym.ppk = PaillierPublicKey(mpz_from_bytes(fake_n));
    Bytes pt(32);
    rng_.fill(pt.data(), pt.size());
    pnym.sig_pk.x = mpz_from_bytes(pt);
    rng_.fill(pt.data(), pt.size());
    pnym.sig_pk.y = mpz_from_bytes(pt);
    pnym.provider_sig.resize(32 + 128);
    rng_.fill(pnym.provider_sig.data(), pnym.provider_sig.size());

    MsgA advert;
    advert.sender_pid = pnym.pid();
    rng_.fill(advert.h_n1.data(), advert.h_n1.size());
    advert.auth_a.resize(64);
    rng_.fill(advert.auth_a.data(), advert.auth_a.size());
    advert.pnym_a = std::move(pnym);
    return encode(advert);
}

void ForgerNode::on_timer(World& world, uint64_t timer_id, SimTime now) {
    (void)timer_id;
    if (flood_remaining_ == 0) return;
    --flood_remaining_;
    world.broadcast_from(pos_, *this, fake_advert(), now);
    ++forged_sent_;
    if (flood_remaining_ > 0) world.arm_timer(*this, 0, now + flood_period_);
}

World::World(WorldConfig config, TrustDomain& trust)
    : config_(std::move(config)), trust_(trust), rng_(config_.seed) {
    config_.session.validate();
    if (config_.max_events == 0) throw ConfigError("event budget must be positive");
}

std::unique_ptr<Endpoint> World::make_endpoint(const std::string& name, PlanePoint pos,
                                               PseudonymWallet wallet) {
    GeoCoordinate geo = plane_to_geo(config_.anchor, pos);
    DeterministicRng rng = rng_.fork("node:" + name);
    if (config_.protocol == Protocol::Ppsnd) {
        return std::make_unique<PpsndEndpoint>(name, config_.session, std::move(wallet),
                                               trust_.pca_anchor(), geo, std::move(rng));
    }
    return std::make_unique<BaselineEndpoint>(name, config_.session, std::move(wallet),
                                              trust_.pca_anchor(), geo, std::move(rng));
}

size_t World::register_node(std::unique_ptr<SimNode> node) {
    auto [it, fresh] = by_name_.try_emplace(node->name(), nodes_.size());
    if (!fresh) throw ConfigError("duplicate node name: " + node->name());
    nodes_.push_back(std::move(node));
    return it->second;
}

HonestNode& World::add_honest(const std::string& name, PlanePoint pos, PseudonymWallet wallet) {
    auto node = std::make_unique<HonestNode>(name, pos, make_endpoint(name, pos, std::move(wallet)));
    HonestNode& ref = *node;
    register_node(std::move(node));
    return ref;
}

CuriousNode& World::add_curious(const std::string& name, PlanePoint pos, PseudonymWallet wallet,
                                SimTime first_at, SimTime period, uint64_t session_budget) {
    auto node = std::make_unique<CuriousNode>(name, pos, make_endpoint(name, pos, std::move(wallet)),
                                              period, session_budget);
    CuriousNode& ref = *node;
    register_node(std::move(node));
    if (session_budget > 0) arm_timer(ref, CuriousNode::kTickTimer, first_at);
    return ref;
}

RelayNode& World::add_relay(const std::string& name, PlanePoint pos, SimTime process_delay_ps) {
    auto node = std::make_unique<RelayNode>(name, pos, pos, process_delay_ps);
    RelayNode& ref = *node;
    register_node(std::move(node));
    return ref;
}

void World::add_chain_relay(const std::string& name, PlanePoint end_a, PlanePoint end_b,
                            SimTime process_delay_ps) {
    register_node(std::make_unique<RelayNode>(name + "-a", end_a, end_b, process_delay_ps));
    register_node(std::make_unique<RelayNode>(name + "-b", end_b, end_a, process_delay_ps));
}

EavesdropperNode& World::add_eavesdropper(const std::string& name, PlanePoint pos) {
    auto node = std::make_unique<EavesdropperNode>(name, pos);
    EavesdropperNode& ref = *node;
    register_node(std::move(node));
    return ref;
}

ForgerNode& World::add_forger(const std::string& name, PlanePoint pos, bool forge_ranging,
                              uint64_t flood_budget, SimTime flood_first_at, SimTime flood_period) {
    auto node = std::make_unique<ForgerNode>(name, pos, rng_.fork("forger:" + name), forge_ranging,
                                             flood_budget, flood_period);
    ForgerNode& ref = *node;
    register_node(std::move(node));
    if (flood_budget > 0) arm_timer(ref, 0, flood_first_at);
    return ref;
}

void World::schedule_session(const std::string& initiator, SimTime at) {
    HonestNode& node = honest(initiator);  // validates the name and kind
    Event e;
    e.at = at;
    e.kind = EventKind::Start;
    e.node = by_name_.at(node.name());
    push(std::move(e));
}

void World::broadcast_from(PlanePoint origin, const SimNode& sender, const Bytes& frame, SimTime at) {
    auto it = by_name_.find(sender.name());
    if (it == by_name_.end()) throw SimulationError("broadcast from unregistered node");
    Event e;
    e.at = at;
    e.kind = EventKind::Transmit;
    e.node = it->second;
    e.origin = origin;
    e.frame = frame;
    push(std::move(e));
}

void World::arm_timer(SimNode& node, uint64_t timer_id, SimTime at) {
    Event e;
    e.at = at;
    e.kind = EventKind::Timer;
    e.node = by_name_.at(node.name());
    e.timer_id = timer_id;
    push(std::move(e));
}

void World::push(Event e) {
    e.seq = next_seq_++;
    queue_.push(std::move(e));
}

void World::run() {
    while (!queue_.empty()) {
        if (++events_processed_ > config_.max_events) {
            throw SimulationError("event budget exhausted after " +
                                  std::to_string(config_.max_events) + " events");
        }
        Event e = queue_.top();
        queue_.pop();
        SimNode& target = *nodes_[e.node];
        switch (e.kind) {
            case EventKind::Transmit: {
                transcript_.record(e.at, TraceDir::Tx, target.name(), e.frame);
                for (size_t i = 0; i < nodes_.size(); ++i) {
                    if (i == e.node) continue;
                    double dist = plane_distance(e.origin, nodes_[i]->position());
                    if (dist > config_.session.r_m) continue;
                    Event d;
                    d.at = e.at + propagation_ps(dist);
                    d.kind = EventKind::Deliver;
                    d.node = i;
                    d.frame = e.frame;
                    push(std::move(d));
                }
                break;
            }
            case EventKind::Deliver:
                transcript_.record(e.at, TraceDir::Rx, target.name(), e.frame);
                target.on_frame(*this, e.frame, e.at);
                break;
            case EventKind::Timer:
                target.on_timer(*this, e.timer_id, e.at);
                break;
            case EventKind::Start:
                static_cast<HonestNode&>(target).start_session(*this, e.at);
                break;
        }
    }
}

HonestNode& World::honest(const std::string& name) {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw ConfigError("no such node: " + name);
    auto* node = dynamic_cast<HonestNode*>(nodes_[it->second].get());
    if (node == nullptr) throw ConfigError("node is not a protocol participant: " + name);
    return *node;
}

CuriousNode& World::curious(const std::string& name) {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw ConfigError("no such node: " + name);
    auto* node = dynamic_cast<CuriousNode*>(nodes_[it->second].get());
    if (node == nullptr) throw ConfigError("node is not a curious participant: " + name);
    return *node;
}

std::vector<std::pair<std::string, SessionResult>> World::results() const {
    std::vector<std::pair<std::string, SessionResult>> out;
    for (const auto& node : nodes_) {
        const auto* honest = dynamic_cast<const HonestNode*>(node.get());
        if (honest == nullptr) continue;
        for (const auto& res : honest->results()) out.emplace_back(honest->name(), res);
    }
    return out;
}

}  // namespace ppsnd
