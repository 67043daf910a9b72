#pragma once

#include <array>
#include <variant>

#include "ppsnd/pseudonym.hpp"

namespace ppsnd {

using Nonce = std::array<uint8_t, 16>;

// Big-endian increment mod 2^128, the echo transform for the ranging nonce.
Nonce nonce_increment(const Nonce& n);

// One byte on the wire; discovery messages and the challenge-response
// baseline share the tag space.
enum class MsgTag : uint8_t {
    MsgA = 0x01,
    MsgB = 0x02,
    MsgC = 0x03,
    MsgD = 0x04,
    MsgE = 0x05,
    MsgF = 0x06,
    BaseChallenge = 0x11,
    BaseResponse = 0x12,
    BaseAuth = 0x13,
};

const char* tag_name(uint8_t tag);

// Advertisement: commitment to the ranging nonce plus the sender credential.
struct MsgA {
    Pid sender_pid = 0;
    Digest h_n1{};
    Bytes auth_a;  // signature over n1, checkable once MsgB reveals it
    Pseudonym pnym_a;
    bool operator==(const MsgA&) const = default;
};

// Ranging challenge; carries no signature so it can be timed precisely.
struct MsgB {
    Pid sender_pid = 0;
    Nonce n1{};
    bool operator==(const MsgB&) const = default;
};

// Ranging response, sent exactly delta_proc after MsgB reception.
struct MsgC {
    Pid sender_pid = 0;
    Pid dest_pid = 0;
    Nonce n2{};
    bool operator==(const MsgC&) const = default;
};

// Authenticates the ranging exchange: echoes n2+1 and binds both parties.
struct MsgD {
    Pid sender_pid = 0;
    Pid dest_pid = 0;
    Nonce n2_plus_1{};
    Bytes auth_b;
    Pseudonym pnym_b;
    bool operator==(const MsgD&) const = default;
};

// Initiator coordinates, encrypted under the initiator's own Paillier key.
struct MsgE {
    Pid sender_pid = 0;
    Pid dest_pid = 0;
    Bytes x_ct;  // ciphertext values, minimal big-endian
    Bytes y_ct;
    Bytes auth_a;
    bool operator==(const MsgE&) const = default;
};

// Encrypted coordinate differences computed by the responder.
struct MsgF {
    Pid sender_pid = 0;
    Pid dest_pid = 0;
    Bytes diff_lat_ct;
    Bytes diff_lng_ct;
    Bytes auth_b;
    bool operator==(const MsgF&) const = default;
};

// Challenge-response baseline with plaintext location in the auth message.
struct BaseChallenge {
    SimTime time = 0;
    Pid sender_pid = 0;
    Nonce n1{};
    Pseudonym pnym_a;
    bool operator==(const BaseChallenge&) const = default;
};

struct BaseResponse {
    SimTime time = 0;
    Pid sender_pid = 0;
    Pid dest_pid = 0;
    Nonce n2{};
    bool operator==(const BaseResponse&) const = default;
};

struct BaseAuth {
    SimTime time = 0;
    Pid sender_pid = 0;
    Pid dest_pid = 0;
    uint64_t lat_units = 0;  // plaintext normalized coordinates
    uint64_t lng_units = 0;
    Bytes auth_b;  // signature over (n1, n2, location)
    Pseudonym pnym_b;
    bool operator==(const BaseAuth&) const = default;
};

using ProtocolMessage =
    std::variant<MsgA, MsgB, MsgC, MsgD, MsgE, MsgF, BaseChallenge, BaseResponse, BaseAuth>;

MsgTag tag_of(const ProtocolMessage& message);

Bytes encode(const ProtocolMessage& message);
ProtocolMessage decode(const Bytes& bytes);

}  // namespace ppsnd
