#include "ppsnd/wire.hpp"

namespace ppsnd {

namespace {

Nonce read_nonce(ByteReader& r) {
    Bytes raw = r.raw(16);
    Nonce n;
    std::copy(raw.begin(), raw.end(), n.begin());
    return n;
}

void append_nonce(Bytes& out, const Nonce& n) {
    out.insert(out.end(), n.begin(), n.end());
}

void append_tag(Bytes& out, MsgTag tag) {
    out.push_back(static_cast<uint8_t>(tag));
}

}  // namespace

Nonce nonce_increment(const Nonce& n) {
    Nonce out = n;
    for (size_t i = out.size(); i-- > 0;) {
        if (++out[i] != 0) break;
    }
    return out;
}

const char* tag_name(uint8_t tag) {
    switch (static_cast<MsgTag>(tag)) {
        case MsgTag::MsgA: return "MsgA";
        case MsgTag::MsgB: return "MsgB";
        case MsgTag::MsgC: return "MsgC";
        case MsgTag::MsgD: return "MsgD";
        case MsgTag::MsgE: return "MsgE";
        case MsgTag::MsgF: return "MsgF";
        case MsgTag::BaseChallenge: return "BaseChallenge";
        case MsgTag::BaseResponse: return "BaseResponse";
        case MsgTag::BaseAuth: return "BaseAuth";
    }
    return "Unknown";
}

MsgTag tag_of(const ProtocolMessage& message) {
    return std::visit(
        [](const auto& m) -> MsgTag {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, MsgA>) return MsgTag::MsgA;
            if constexpr (std::is_same_v<T, MsgB>) return MsgTag::MsgB;
            if constexpr (std::is_same_v<T, MsgC>) return MsgTag::MsgC;
            if constexpr (std::is_same_v<T, MsgD>) return MsgTag::MsgD;
            if constexpr (std::is_same_v<T, MsgE>) return MsgTag::MsgE;
            if constexpr (std::is_same_v<T, MsgF>) return MsgTag::MsgF;
            if constexpr (std::is_same_v<T, BaseChallenge>) return MsgTag::BaseChallenge;
            if constexpr (std::is_same_v<T, BaseResponse>) return MsgTag::BaseResponse;
            if constexpr (std::is_same_v<T, BaseAuth>) return MsgTag::BaseAuth;
        },
        message);
}

Bytes encode(const ProtocolMessage& message) {
    Bytes out;
    switch (tag_of(message)) {
        case MsgTag::MsgA: {
            const auto& m = std::get<MsgA>(message);
            append_tag(out, MsgTag::MsgA);
            put_u64_be(out, m.sender_pid);
            out.insert(out.end(), m.h_n1.begin(), m.h_n1.end());
            put_var(out, m.auth_a);
            append(out, m.pnym_a.serialize());
            break;
        }
        case MsgTag::MsgB: {
            const auto& m = std::get<MsgB>(message);
            append_tag(out, MsgTag::MsgB);
            put_u64_be(out, m.sender_pid);
            append_nonce(out, m.n1);
            break;
        }
        case MsgTag::MsgC: {
            const auto& m = std::get<MsgC>(message);
            append_tag(out, MsgTag::MsgC);
            put_u64_be(out, m.sender_pid);
            put_u64_be(out, m.dest_pid);
            append_nonce(out, m.n2);
            break;
        }
        case MsgTag::MsgD: {
            const auto& m = std::get<MsgD>(message);
            append_tag(out, MsgTag::MsgD);
            put_u64_be(out, m.sender_pid);
            put_u64_be(out, m.dest_pid);
            append_nonce(out, m.n2_plus_1);
            put_var(out, m.auth_b);
            append(out, m.pnym_b.serialize());
            break;
        }
        case MsgTag::MsgE: {
            const auto& m = std::get<MsgE>(message);
            append_tag(out, MsgTag::MsgE);
            put_u64_be(out, m.sender_pid);
            put_u64_be(out, m.dest_pid);
            put_var(out, m.x_ct);
            put_var(out, m.y_ct);
            put_var(out, m.auth_a);
            break;
        }
        case MsgTag::MsgF: {
            const auto& m = std::get<MsgF>(message);
            append_tag(out, MsgTag::MsgF);
            put_u64_be(out, m.sender_pid);
            put_u64_be(out, m.dest_pid);
            put_var(out, m.diff_lat_ct);
            put_var(out, m.diff_lng_ct);
            put_var(out, m.auth_b);
            break;
        }
        case MsgTag::BaseChallenge: {
            const auto& m = std::get<BaseChallenge>(message);
            append_tag(out, MsgTag::BaseChallenge);
            put_u64_be(out, static_cast<uint64_t>(m.time));
            put_u64_be(out, m.sender_pid);
            append_nonce(out, m.n1);
            append(out, m.pnym_a.serialize());
            break;
        }
        case MsgTag::BaseResponse: {
            const auto& m = std::get<BaseResponse>(message);
            append_tag(out, MsgTag::BaseResponse);
            put_u64_be(out, static_cast<uint64_t>(m.time));
            put_u64_be(out, m.sender_pid);
            put_u64_be(out, m.dest_pid);
            append_nonce(out, m.n2);
            break;
        }
        case MsgTag::BaseAuth: {
            const auto& m = std::get<BaseAuth>(message);
            append_tag(out, MsgTag::BaseAuth);
            put_u64_be(out, static_cast<uint64_t>(m.time));
            put_u64_be(out, m.sender_pid);
            put_u64_be(out, m.dest_pid);
            put_u64_be(out, m.lat_units);
            put_u64_be(out, m.lng_units);
            put_var(out, m.auth_b);
            append(out, m.pnym_b.serialize());
            break;
        }
    }
    return out;
}

ProtocolMessage decode(const Bytes& bytes) {
    ByteReader r(bytes);
    uint8_t tag = r.u8();
    switch (static_cast<MsgTag>(tag)) {
        case MsgTag::MsgA: {
            MsgA m;
            m.sender_pid = r.u64();
            Bytes h = r.raw(32);
            std::copy(h.begin(), h.end(), m.h_n1.begin());
            m.auth_a = r.var();
            m.pnym_a = Pseudonym::read_from(r);
            r.expect_done();
            return m;
        }
        case MsgTag::MsgB: {
            MsgB m;
            m.sender_pid = r.u64();
            m.n1 = read_nonce(r);
            r.expect_done();
            return m;
        }
        case MsgTag::MsgC: {
            MsgC m;
            m.sender_pid = r.u64();
            m.dest_pid = r.u64();
            m.n2 = read_nonce(r);
            r.expect_done();
            return m;
        }
        case MsgTag::MsgD: {
            MsgD m;
            m.sender_pid = r.u64();
            m.dest_pid = r.u64();
            m.n2_plus_1 = read_nonce(r);
            m.auth_b = r.var();
            m.pnym_b = Pseudonym::read_from(r);
            r.expect_done();
            return m;
        }
        case MsgTag::MsgE: {
            MsgE m;
            m.sender_pid = r.u64();
            m.dest_pid = r.u64();
            m.x_ct = r.var();
            m.y_ct = r.var();
            m.auth_a = r.var();
            r.expect_done();
            return m;
        }
        case MsgTag::MsgF: {
            MsgF m;
            m.sender_pid = r.u64();
            m.dest_pid = r.u64();
            m.diff_lat_ct = r.var();
            m.diff_lng_ct = r.var();
            m.auth_b = r.var();
            r.expect_done();
            return m;
        }
        case MsgTag::BaseChallenge: {
            BaseChallenge m;
            m.time = static_cast<SimTime>(r.u64());
            m.sender_pid = r.u64();
            m.n1 = read_nonce(r);
            m.pnym_a = Pseudonym::read_from(r);
            r.expect_done();
            return m;
        }
        case MsgTag::BaseResponse: {
            BaseResponse m;
            m.time = static_cast<SimTime>(r.u64());
            m.sender_pid = r.u64();
            m.dest_pid = r.u64();
            m.n2 = read_nonce(r);
            r.expect_done();
            return m;
        }
        case MsgTag::BaseAuth: {
            BaseAuth m;
            m.time = static_cast<SimTime>(r.u64());
            m.sender_pid = r.u64();
            m.dest_pid = r.u64();
            m.lat_units = r.u64();
            m.lng_units = r.u64();
            m.auth_b = r.var();
            m.pnym_b = Pseudonym::read_from(r);
            r.expect_done();
            return m;
        }
    }
    throw DecodeError("unknown message tag");
}

}  // namespace ppsnd
