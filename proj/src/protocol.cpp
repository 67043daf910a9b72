#include "ppsnd/protocol.hpp"

#include <chrono>
#include <cmath>

namespace ppsnd {

namespace {

void append_nonce(Bytes& out, const Nonce& n) {
    out.insert(out.end(), n.begin(), n.end());
}

Bytes nonce_bytes(const Nonce& n) {
    return Bytes(n.begin(), n.end());
}

}  // namespace

SimTime propagation_ps(double meters) {
    if (meters < 0) throw DomainError("propagation_ps: negative distance");
    return llround(meters * 1e4 / 3.0);
}

void SessionConfig::validate() const {
    if (r_m <= 0) throw ConfigError("radio range must be positive");
    if (r_snd_m <= 0 || r_snd_m > r_m) throw ConfigError("discovery range must be in (0, radio range]");
    if (epsilon_m <= 0) throw ConfigError("epsilon must be positive");
    if (delta_proc_ps < 0) throw ConfigError("turnaround must be non-negative");
    if (response_guard_ps < 0) throw ConfigError("response guard must be non-negative");
    if (reply_timeout_ps <= 0) throw ConfigError("reply timeout must be positive");
    if (responder_gc_ps <= 0) throw ConfigError("responder gc must be positive");
    if (normalize_factor <= 0) throw ConfigError("normalize factor must be positive");
    if (tau_snd_ps < 0) throw ConfigError("session spacing must be non-negative");
}

SimTime SessionConfig::ranging_deadline_ps() const {
    return 2 * propagation_ps(r_m) + delta_proc_ps + response_guard_ps;
}

const char* outcome_name(Outcome outcome) {
    switch (outcome) {
        case Outcome::Neighbor: return "neighbor";
        case Outcome::NotNeighbor: return "not-neighbor";
        case Outcome::Aborted: return "aborted";
    }
    return "unknown";
}

Digest auth_commit_digest(const Nonce& n1) {
    Bytes b;
    append(b, std::string("auth-a-commit"));
    append_nonce(b, n1);
    return sha256(b);
}

Digest auth_range_digest(Pid initiator, Pid responder, const Nonce& n1, const Nonce& n2_plus_1) {
    Bytes b;
    append(b, std::string("auth-b-range"));
    put_u64_be(b, initiator);
    put_u64_be(b, responder);
    append_nonce(b, n1);
    append_nonce(b, n2_plus_1);
    return sha256(b);
}

Digest auth_coord_digest(Pid initiator, Pid responder, const Bytes& x_ct, const Bytes& y_ct) {
    Bytes b;
    append(b, std::string("auth-a-coord"));
    put_u64_be(b, initiator);
    put_u64_be(b, responder);
    put_var(b, x_ct);
    put_var(b, y_ct);
    return sha256(b);
}

Digest auth_diff_digest(Pid initiator, Pid responder, const Bytes& diff_lat_ct, const Bytes& diff_lng_ct) {
    Bytes b;
    append(b, std::string("auth-b-diff"));
    put_u64_be(b, initiator);
    put_u64_be(b, responder);
    put_var(b, diff_lat_ct);
    put_var(b, diff_lng_ct);
    return sha256(b);
}

Digest base_auth_digest(const Nonce& n1, const Nonce& n2, uint64_t lat_units, uint64_t lng_units) {
    Bytes b;
    append(b, std::string("base-auth-b"));
    append_nonce(b, n1);
    append_nonce(b, n2);
    put_u64_be(b, lat_units);
    put_u64_be(b, lng_units);
    return sha256(b);
}

Endpoint::Timed::Timed(CryptoCost& cost, Role role)
    : slot_(&cost.slot(role)), start_(std::chrono::steady_clock::now()) {}

Endpoint::Timed::~Timed() {
    auto elapsed = std::chrono::steady_clock::now() - start_;
    *slot_ += std::chrono::duration<double>(elapsed).count();
}

Endpoint::Endpoint(std::string name, SessionConfig config, PseudonymWallet wallet, SchnorrPublicKey pca_anchor,
                   GeoCoordinate position, DeterministicRng rng)
    : name_(std::move(name)),
      config_(config),
      wallet_(std::move(wallet)),
      pca_anchor_(std::move(pca_anchor)),
      position_(position),
      rng_(std::move(rng)) {
    config_.validate();
    own_units_ = normalize_coord(position_, config_.normalize_factor);
    for (const auto& e : wallet_.entries) own_pids_.insert(e.pid);
}

bool Endpoint::is_own_pid(Pid pid) const {
    return own_pids_.count(pid) != 0;
}

bool Endpoint::may_start(SimTime now) const {
    if (!self_rate_limit_ || config_.tau_snd_ps == 0 || !started_) return true;
    return now - last_start_ >= config_.tau_snd_ps;
}

bool Endpoint::accept_session(SimTime now) {
    if (config_.tau_snd_ps == 0 || !accepted_ || now - last_accept_ >= config_.tau_snd_ps) return true;
    ++rate_refusals_;
    return false;
}

// --- six-message discovery -------------------------------------------------

EndpointOutputs PpsndEndpoint::start_session(SimTime now) {
    EndpointOutputs out;
    if (!may_start(now)) return out;

    const WalletEntry* entry = nullptr;
    try {
        entry = &wallet_.current(now);
    } catch (const DomainError&) {
        SessionResult res;
        res.reason = "pnym-expired";
        out.results.push_back(res);
        return out;
    }
    note_start(now);

    InitiatorSession s;
    s.gen = ++session_gen_;
    rng_.fill(s.n1.data(), s.n1.size());
    s.h_n1 = sha256(nonce_bytes(s.n1));
    s.own_pid = entry->pid;
    s.entry = entry;
    s.t1 = now;

    Bytes auth;
    {
        Timed t(cost_, Role::Initiator);
        auth = ecdsa_sign(entry->sig_sk, auth_commit_digest(s.n1));
    }
    out.sends.push_back({now, encode(MsgA{s.own_pid, s.h_n1, auth, entry->pnym})});
    out.sends.push_back({now, encode(MsgB{s.own_pid, s.n1})});

    uint64_t id = next_timer_id();
    timers_[id] = {TimerKind::RangingDeadline, s.gen, 0, {}};
    out.timers.push_back({now + config_.ranging_deadline_ps(), id});

    init_ = std::move(s);
    return out;
}

SessionResult PpsndEndpoint::result_shell(Pid peer_pid) const {
    SessionResult res;
    res.local_pid = init_ ? init_->own_pid : 0;
    res.peer_pid = peer_pid;
    return res;
}

void PpsndEndpoint::finish_peer(PeerState& peer, Pid peer_pid, SessionResult result, EndpointOutputs& out) {
    (void)peer_pid;
    peer.stage = PeerState::Stage::Done;
    out.results.push_back(std::move(result));
}

EndpointOutputs PpsndEndpoint::on_frame(const Bytes& frame, SimTime now) {
    EndpointOutputs out;
    ProtocolMessage msg;
    try {
        msg = decode(frame);
    } catch (const DecodeError&) {
        return out;  // undecodable radio noise
    }
    if (const auto* a = std::get_if<MsgA>(&msg)) on_a(*a, now, out);
    else if (const auto* b = std::get_if<MsgB>(&msg)) on_b(*b, now, out);
    else if (const auto* c = std::get_if<MsgC>(&msg)) on_c(*c, now, out);
    else if (const auto* d = std::get_if<MsgD>(&msg)) on_d(*d, now, out);
    else if (const auto* e = std::get_if<MsgE>(&msg)) on_e(*e, now, out);
    else if (const auto* f = std::get_if<MsgF>(&msg)) on_f(*f, now, out);
    return out;
}

void PpsndEndpoint::on_a(const MsgA& m, SimTime now, EndpointOutputs& out) {
    if (is_own_pid(m.sender_pid)) return;
    RespKey key{m.sender_pid, m.h_n1};
    if (resp_.count(key)) return;  // duplicate commitment
    if (!accept_session(now)) return;

    bool ok;
    {
        Timed t(cost_, Role::Responder);
        ok = verify_pnym(m.pnym_a, pca_anchor_, now) && m.pnym_a.pid() == m.sender_pid;
    }
    if (!ok) return;  // silent discard, no state for invalid credentials

    ResponderSession s;
    s.pid_a = m.sender_pid;
    s.pnym_a = m.pnym_a;
    s.auth_a = m.auth_a;
    s.created = now;
    resp_[key] = std::move(s);
    accepted_ = true;
    last_accept_ = now;

    uint64_t id = next_timer_id();
    timers_[id] = {TimerKind::ResponderGc, 0, 0, key};
    out.timers.push_back({now + config_.responder_gc_ps, id});
}

void PpsndEndpoint::on_b(const MsgB& m, SimTime now, EndpointOutputs& out) {
    if (is_own_pid(m.sender_pid)) return;
    Digest h = sha256(nonce_bytes(m.n1));
    auto it = resp_.find({m.sender_pid, h});
    if (it == resp_.end() || it->second.stage != ResponderSession::Stage::WaitB) {
        // revealed nonce matches no pending commitment from this sender
        for (auto& [k, s] : resp_) {
            if (k.first != m.sender_pid || s.stage != ResponderSession::Stage::WaitB) continue;
            SessionResult res;
            res.local_pid = 0;
            res.peer_pid = m.sender_pid;
            res.reason = "hash-mismatch";
            out.results.push_back(res);
            s.stage = ResponderSession::Stage::Done;
        }
        return;
    }

    ResponderSession& s = it->second;
    bool ok;
    {
        Timed t(cost_, Role::Responder);
        ok = ecdsa_verify(s.pnym_a.sig_pk, auth_commit_digest(m.n1), s.auth_a);
    }
    if (!ok) {
        SessionResult res;
        res.peer_pid = s.pid_a;
        res.reason = "auth-fail";
        out.results.push_back(res);
        s.stage = ResponderSession::Stage::Done;
        return;
    }

    const WalletEntry* entry = nullptr;
    try {
        entry = &wallet_.current(now);
    } catch (const DomainError&) {
        SessionResult res;
        res.peer_pid = s.pid_a;
        res.reason = "pnym-expired";
        out.results.push_back(res);
        s.stage = ResponderSession::Stage::Done;
        return;
    }

    s.entry = entry;
    s.own_pid = entry->pid;
    s.n1 = m.n1;
    rng_.fill(s.n2.data(), s.n2.size());
    Nonce echo = nonce_increment(s.n2);

    Bytes auth;
    {
        Timed t(cost_, Role::Responder);
        auth = ecdsa_sign(entry->sig_sk, auth_range_digest(s.pid_a, s.own_pid, s.n1, echo));
    }

    SimTime reply_at = now + config_.delta_proc_ps;
    out.sends.push_back({reply_at, encode(MsgC{s.own_pid, s.pid_a, s.n2})});
    out.sends.push_back({reply_at, encode(MsgD{s.own_pid, s.pid_a, echo, auth, entry->pnym})});
    s.stage = ResponderSession::Stage::WaitE;
}

void PpsndEndpoint::on_c(const MsgC& m, SimTime now, EndpointOutputs& out) {
    if (!init_ || !init_->accepting) return;
    if (m.dest_pid != init_->own_pid || is_own_pid(m.sender_pid)) return;
    auto [it, fresh] = init_->peers.try_emplace(m.sender_pid);
    if (!fresh) return;  // first response from a given pid wins
    it->second.n2 = m.n2;
    it->second.t2 = now;

    uint64_t id = next_timer_id();
    timers_[id] = {TimerKind::EchoDeadline, init_->gen, m.sender_pid, {}};
    out.timers.push_back({now + config_.reply_timeout_ps, id});
}

void PpsndEndpoint::on_d(const MsgD& m, SimTime now, EndpointOutputs& out) {
    if (!init_ || m.dest_pid != init_->own_pid) return;
    auto it = init_->peers.find(m.sender_pid);
    if (it == init_->peers.end() || it->second.stage != PeerState::Stage::WaitD) return;
    PeerState& p = it->second;

    SessionResult res = result_shell(m.sender_pid);
    res.t1 = init_->t1;
    res.t2 = p.t2;

    if (nonce_increment(p.n2) != m.n2_plus_1) {
        res.reason = "nonce-mismatch";
        finish_peer(p, m.sender_pid, std::move(res), out);
        return;
    }

    bool ok;
    {
        Timed t(cost_, Role::Initiator);
        ok = verify_pnym(m.pnym_b, pca_anchor_, now) && m.pnym_b.pid() == m.sender_pid &&
             ecdsa_verify(m.pnym_b.sig_pk,
                          auth_range_digest(init_->own_pid, m.sender_pid, init_->n1, m.n2_plus_1), m.auth_b);
    }
    if (!ok) {
        res.reason = "auth-fail";
        finish_peer(p, m.sender_pid, std::move(res), out);
        return;
    }
    p.pnym_b = m.pnym_b;

    double d;
    try {
        d = d_tof(init_->t1, p.t2, config_.delta_proc_ps);
    } catch (const DomainError&) {
        res.reason = "malformed";  // response earlier than physically possible
        finish_peer(p, m.sender_pid, std::move(res), out);
        return;
    }
    res.d_tof_m = d;
    p.d_tof_m = d;

    if (d >= config_.r_snd_m) {
        res.outcome = Outcome::NotNeighbor;
        res.reason = "tof-gate";
        finish_peer(p, m.sender_pid, std::move(res), out);
        return;
    }

    const WalletEntry* cur = nullptr;
    try {
        cur = &wallet_.current(now);
    } catch (const DomainError&) {
    }
    if (cur == nullptr || cur->pid != init_->own_pid) {
        res.reason = "pnym-expired";  // own credential rolled over mid-session
        finish_peer(p, m.sender_pid, std::move(res), out);
        return;
    }

    Bytes x_ct, y_ct, sig;
    {
        Timed t(cost_, Role::Initiator);
        EncryptedCoordinate enc =
            enc_coord(init_->entry->paillier.pub, position_, config_.normalize_factor, rng_);
        x_ct = mpz_to_bytes(enc.X.value);
        y_ct = mpz_to_bytes(enc.Y.value);
        sig = ecdsa_sign(init_->entry->sig_sk, auth_coord_digest(init_->own_pid, m.sender_pid, x_ct, y_ct));
    }
    out.sends.push_back({now, encode(MsgE{init_->own_pid, m.sender_pid, x_ct, y_ct, sig})});
    p.stage = PeerState::Stage::WaitF;

    uint64_t id = next_timer_id();
    timers_[id] = {TimerKind::DiffDeadline, init_->gen, m.sender_pid, {}};
    out.timers.push_back({now + config_.reply_timeout_ps, id});
}

void PpsndEndpoint::on_e(const MsgE& m, SimTime now, EndpointOutputs& out) {
    ResponderSession* s = nullptr;
    for (auto& [k, cand] : resp_) {
        if (k.first == m.sender_pid && cand.stage == ResponderSession::Stage::WaitE &&
            cand.own_pid == m.dest_pid) {
            s = &cand;
            break;
        }
    }
    if (s == nullptr) return;

    bool ok;
    {
        Timed t(cost_, Role::Responder);
        ok = ecdsa_verify(s->pnym_a.sig_pk, auth_coord_digest(s->pid_a, s->own_pid, m.x_ct, m.y_ct),
                          m.auth_a);
    }
    if (!ok) {
        SessionResult res;
        res.local_pid = s->own_pid;
        res.peer_pid = s->pid_a;
        res.reason = "auth-fail";
        out.results.push_back(res);
        s->stage = ResponderSession::Stage::Done;
        return;
    }

    EncryptedCoordinate input;
    try {
        Timed t(cost_, Role::Responder);
        input.X = s->pnym_a.ppk.ciphertext_from_bytes(m.x_ct);
        input.Y = s->pnym_a.ppk.ciphertext_from_bytes(m.y_ct);
    } catch (const DomainError&) {
        SessionResult res;
        res.local_pid = s->own_pid;
        res.peer_pid = s->pid_a;
        res.reason = "malformed";
        out.results.push_back(res);
        s->stage = ResponderSession::Stage::Done;
        return;
    }

    const WalletEntry* cur = nullptr;
    try {
        cur = &wallet_.current(now);
    } catch (const DomainError&) {
    }
    if (cur == nullptr || cur->pid != s->own_pid) {
        SessionResult res;
        res.local_pid = s->own_pid;
        res.peer_pid = s->pid_a;
        res.reason = "pnym-expired";
        out.results.push_back(res);
        s->stage = ResponderSession::Stage::Done;
        return;
    }

    Bytes dl, dg, sig;
    {
        Timed t(cost_, Role::Responder);
        EncryptedCoordinate own =
            enc_coord(s->pnym_a.ppk, position_, config_.normalize_factor, rng_);
        EncryptedDiff diff = hec_diff(s->pnym_a.ppk, input, own);
        dl = mpz_to_bytes(diff.diff_lat.value);
        dg = mpz_to_bytes(diff.diff_lng.value);
        sig = ecdsa_sign(s->entry->sig_sk, auth_diff_digest(s->pid_a, s->own_pid, dl, dg));
    }
    out.sends.push_back({now, encode(MsgF{s->own_pid, s->pid_a, dl, dg, sig})});
    s->stage = ResponderSession::Stage::Done;
}

void PpsndEndpoint::on_f(const MsgF& m, SimTime now, EndpointOutputs& out) {
    (void)now;
    if (!init_ || m.dest_pid != init_->own_pid) return;
    auto it = init_->peers.find(m.sender_pid);
    if (it == init_->peers.end() || it->second.stage != PeerState::Stage::WaitF) return;
    PeerState& p = it->second;

    SessionResult res = result_shell(m.sender_pid);
    res.t1 = init_->t1;
    res.t2 = p.t2;
    res.d_tof_m = p.d_tof_m;

    bool ok;
    {
        Timed t(cost_, Role::Initiator);
        ok = ecdsa_verify(p.pnym_b.sig_pk,
                          auth_diff_digest(init_->own_pid, m.sender_pid, m.diff_lat_ct, m.diff_lng_ct),
                          m.auth_b);
    }
    if (!ok) {
        res.reason = "auth-fail";
        finish_peer(p, m.sender_pid, std::move(res), out);
        return;
    }

    const PaillierKeyPair& kp = init_->entry->paillier;
    mpz_class dlat, dlng;
    try {
        Timed t(cost_, Role::Initiator);
        PaillierCiphertext cl = kp.pub.ciphertext_from_bytes(m.diff_lat_ct);
        PaillierCiphertext cg = kp.pub.ciphertext_from_bytes(m.diff_lng_ct);
        dlat = decode_signed(kp.decrypt(cl), kp.pub.n());
        dlng = decode_signed(kp.decrypt(cg), kp.pub.n());
    } catch (const DomainError&) {
        res.reason = "malformed";
        finish_peer(p, m.sender_pid, std::move(res), out);
        return;
    }

    mpz_class lat_bound = mpz_class(180) * config_.normalize_factor;
    mpz_class lng_bound = mpz_class(360) * config_.normalize_factor;
    if (abs(dlat) > lat_bound || abs(dlng) > lng_bound) {
        res.reason = "malformed";  // difference outside any valid coordinate span
        finish_peer(p, m.sender_pid, std::move(res), out);
        return;
    }

    double d_he =
        euclid_distance_m(dlat.get_si(), dlng.get_si(), position_.lat, config_.normalize_factor);
    res.d_he_m = d_he;
    if (std::fabs(res.d_tof_m - d_he) < config_.epsilon_m) {
        res.outcome = Outcome::Neighbor;
        res.reason.clear();
    } else {
        res.outcome = Outcome::NotNeighbor;
        res.reason = "epsilon";
    }
    finish_peer(p, m.sender_pid, std::move(res), out);
}

EndpointOutputs PpsndEndpoint::on_timer(uint64_t timer_id, SimTime now) {
    (void)now;
    EndpointOutputs out;
    auto it = timers_.find(timer_id);
    if (it == timers_.end()) return out;
    TimerInfo info = it->second;
    timers_.erase(it);

    switch (info.kind) {
        case TimerKind::RangingDeadline: {
            if (!init_ || init_->gen != info.gen) break;
            init_->accepting = false;
            if (init_->peers.empty()) {
                SessionResult res = result_shell(0);
                res.t1 = init_->t1;
                res.reason = "timeout";
                out.results.push_back(res);
                init_.reset();
            }
            break;
        }
        case TimerKind::EchoDeadline:
        case TimerKind::DiffDeadline: {
            if (!init_ || init_->gen != info.gen) break;
            auto pit = init_->peers.find(info.peer);
            if (pit == init_->peers.end()) break;
            PeerState& p = pit->second;
            auto pending = info.kind == TimerKind::EchoDeadline ? PeerState::Stage::WaitD
                                                                : PeerState::Stage::WaitF;
            if (p.stage != pending) break;
            SessionResult res = result_shell(info.peer);
            res.t1 = init_->t1;
            res.t2 = p.t2;
            res.d_tof_m = p.d_tof_m;
            res.reason = "timeout";
            finish_peer(p, info.peer, std::move(res), out);
            break;
        }
        case TimerKind::ResponderGc:
            resp_.erase(info.rkey);
            break;
    }
    return out;
}

size_t PpsndEndpoint::responder_session_count() const {
    return resp_.size();
}

// --- challenge-response baseline -------------------------------------------

EndpointOutputs BaselineEndpoint::start_session(SimTime now) {
    EndpointOutputs out;
    if (!may_start(now)) return out;

    const WalletEntry* entry = nullptr;
    try {
        entry = &wallet_.current(now);
    } catch (const DomainError&) {
        SessionResult res;
        res.reason = "pnym-expired";
        out.results.push_back(res);
        return out;
    }
    note_start(now);

    InitiatorSession s;
    s.gen = ++session_gen_;
    rng_.fill(s.n1.data(), s.n1.size());
    s.own_pid = entry->pid;
    s.entry = entry;
    s.t1 = now;

    out.sends.push_back({now, encode(BaseChallenge{now, s.own_pid, s.n1, entry->pnym})});

    uint64_t id = next_timer_id();
    timers_[id] = {TimerKind::RangingDeadline, s.gen, 0, {}};
    out.timers.push_back({now + config_.ranging_deadline_ps(), id});

    init_ = std::move(s);
    return out;
}

SessionResult BaselineEndpoint::result_shell(Pid peer_pid) const {
    SessionResult res;
    res.local_pid = init_ ? init_->own_pid : 0;
    res.peer_pid = peer_pid;
    return res;
}

EndpointOutputs BaselineEndpoint::on_frame(const Bytes& frame, SimTime now) {
    EndpointOutputs out;
    ProtocolMessage msg;
    try {
        msg = decode(frame);
    } catch (const DecodeError&) {
        return out;
    }
    if (const auto* c = std::get_if<BaseChallenge>(&msg)) on_challenge(*c, now, out);
    else if (const auto* r = std::get_if<BaseResponse>(&msg)) on_response(*r, now, out);
    else if (const auto* a = std::get_if<BaseAuth>(&msg)) on_auth(*a, now, out);
    return out;
}

void BaselineEndpoint::on_challenge(const BaseChallenge& m, SimTime now, EndpointOutputs& out) {
    if (is_own_pid(m.sender_pid)) return;
    RespKey key{m.sender_pid, m.n1};
    if (resp_seen_.count(key)) return;
    if (!accept_session(now)) return;

    bool ok;
    {
        Timed t(cost_, Role::Responder);
        ok = verify_pnym(m.pnym_a, pca_anchor_, now) && m.pnym_a.pid() == m.sender_pid;
    }
    if (!ok) return;

    const WalletEntry* entry = nullptr;
    try {
        entry = &wallet_.current(now);
    } catch (const DomainError&) {
        SessionResult res;
        res.peer_pid = m.sender_pid;
        res.reason = "pnym-expired";
        out.results.push_back(res);
        return;
    }

    resp_seen_.insert(key);
    accepted_ = true;
    last_accept_ = now;

    Nonce n2;
    rng_.fill(n2.data(), n2.size());
    Bytes auth;
    {
        Timed t(cost_, Role::Responder);
        auth = ecdsa_sign(entry->sig_sk,
                          base_auth_digest(m.n1, n2, own_units_.lat_units, own_units_.lng_units));
    }

    SimTime reply_at = now + config_.delta_proc_ps;
    out.sends.push_back({reply_at, encode(BaseResponse{reply_at, entry->pid, m.sender_pid, n2})});
    out.sends.push_back({reply_at, encode(BaseAuth{reply_at, entry->pid, m.sender_pid, own_units_.lat_units,
                                                   own_units_.lng_units, auth, entry->pnym})});

    uint64_t id = next_timer_id();
    timers_[id] = {TimerKind::ResponderGc, 0, 0, key};
    out.timers.push_back({now + config_.responder_gc_ps, id});
}

void BaselineEndpoint::on_response(const BaseResponse& m, SimTime now, EndpointOutputs& out) {
    if (!init_ || !init_->accepting) return;
    if (m.dest_pid != init_->own_pid || is_own_pid(m.sender_pid)) return;
    auto [it, fresh] = init_->peers.try_emplace(m.sender_pid);
    if (!fresh) return;
    it->second.n2 = m.n2;
    it->second.t2 = now;

    uint64_t id = next_timer_id();
    timers_[id] = {TimerKind::AuthDeadline, init_->gen, m.sender_pid, {}};
    out.timers.push_back({now + config_.reply_timeout_ps, id});
}

void BaselineEndpoint::on_auth(const BaseAuth& m, SimTime now, EndpointOutputs& out) {
    if (!init_ || m.dest_pid != init_->own_pid) return;
    auto it = init_->peers.find(m.sender_pid);
    if (it == init_->peers.end() || it->second.stage != PeerState::Stage::WaitAuth) return;
    PeerState& p = it->second;

    SessionResult res = result_shell(m.sender_pid);
    res.t1 = init_->t1;
    res.t2 = p.t2;

    bool ok;
    {
        Timed t(cost_, Role::Initiator);
        ok = verify_pnym(m.pnym_b, pca_anchor_, now) && m.pnym_b.pid() == m.sender_pid &&
             ecdsa_verify(m.pnym_b.sig_pk,
                          base_auth_digest(init_->n1, p.n2, m.lat_units, m.lng_units), m.auth_b);
    }
    p.stage = PeerState::Stage::Done;
    if (!ok) {
        res.reason = "auth-fail";
        out.results.push_back(std::move(res));
        return;
    }

    uint64_t lat_bound = uint64_t(180) * uint64_t(config_.normalize_factor);
    uint64_t lng_bound = uint64_t(360) * uint64_t(config_.normalize_factor);
    if (m.lat_units > lat_bound || m.lng_units > lng_bound) {
        res.reason = "malformed";
        out.results.push_back(std::move(res));
        return;
    }

    double d;
    try {
        d = d_tof(init_->t1, p.t2, config_.delta_proc_ps);
    } catch (const DomainError&) {
        res.reason = "malformed";
        out.results.push_back(std::move(res));
        return;
    }
    res.d_tof_m = d;

    int64_t dlat = int64_t(own_units_.lat_units) - int64_t(m.lat_units);
    int64_t dlng = int64_t(own_units_.lng_units) - int64_t(m.lng_units);
    double d_loc = euclid_distance_m(dlat, dlng, position_.lat, config_.normalize_factor);
    res.d_he_m = d_loc;  // location-claim distance plays the comparison role here

    if (d >= config_.r_snd_m) {
        res.outcome = Outcome::NotNeighbor;
        res.reason = "tof-gate";
    } else if (std::fabs(d - d_loc) < config_.epsilon_m) {
        res.outcome = Outcome::Neighbor;
    } else {
        res.outcome = Outcome::NotNeighbor;
        res.reason = "epsilon";
    }
    out.results.push_back(std::move(res));
}

EndpointOutputs BaselineEndpoint::on_timer(uint64_t timer_id, SimTime now) {
    (void)now;
    EndpointOutputs out;
    auto it = timers_.find(timer_id);
    if (it == timers_.end()) return out;
    TimerInfo info = it->second;
    timers_.erase(it);

    switch (info.kind) {
        case TimerKind::RangingDeadline: {
            if (!init_ || init_->gen != info.gen) break;
            init_->accepting = false;
            if (init_->peers.empty()) {
                SessionResult res = result_shell(0);
                res.t1 = init_->t1;
                res.reason = "timeout";
                out.results.push_back(res);
                init_.reset();
            }
            break;
        }
        case TimerKind::AuthDeadline: {
            if (!init_ || init_->gen != info.gen) break;
            auto pit = init_->peers.find(info.peer);
            if (pit == init_->peers.end() || pit->second.stage != PeerState::Stage::WaitAuth) break;
            pit->second.stage = PeerState::Stage::Done;
            SessionResult res = result_shell(info.peer);
            res.t1 = init_->t1;
            res.t2 = pit->second.t2;
            res.reason = "timeout";
            out.results.push_back(res);
            break;
        }
        case TimerKind::ResponderGc:
            resp_seen_.erase(info.rkey);
            break;
    }
    return out;
}

size_t BaselineEndpoint::responder_session_count() const {
    return resp_seen_.size();
}

}  // namespace ppsnd
