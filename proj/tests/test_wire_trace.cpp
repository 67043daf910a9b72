#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "ppsnd/trace.hpp"
#include "ppsnd/wire.hpp"

using namespace ppsnd;
using json = nlohmann::json;

namespace {

Pseudonym sample_pnym(uint64_t seed) {
    DeterministicRng root(seed);
    Ltca ltca(root.fork("ltca"));
    Pca pca(SchnorrGroup::for_bits(1024), root.fork("pca"));
    LongTermCredential ltc = ltca.issue_ltc("identity-wire-sample-" + std::to_string(seed));
    AnonymousToken token = ltca.request_token(ltc);
    DeterministicRng krng = root.fork("km");
    KeyMaterial material = KeyMaterial::generate(1, 256, krng);
    return pca.issue_batch(token, ltca.anchor(), 1, 1'000'000, 0, material).entries[0].pnym;
}

Nonce make_nonce(uint8_t fill) {
    Nonce n;
    n.fill(fill);
    return n;
}

std::vector<ProtocolMessage> sample_messages() {
    static const Pseudonym pnym = sample_pnym(1);
    static const Pseudonym pnym2 = sample_pnym(2);

    MsgA a{0x1111222233334444ULL, sha256(Bytes{1, 2, 3}), Bytes{9, 8, 7, 6}, pnym};
    MsgB b{0x1111222233334444ULL, make_nonce(0xAB)};
    MsgC c{0x5555666677778888ULL, 0x1111222233334444ULL, make_nonce(0xCD)};
    MsgD d{0x5555666677778888ULL, 0x1111222233334444ULL, make_nonce(0xCE), Bytes(64, 0x42), pnym2};
    MsgE e{0x1111222233334444ULL, 0x5555666677778888ULL, Bytes{1, 0, 255}, Bytes{42}, Bytes(64, 0x24)};
    MsgF f{0x5555666677778888ULL, 0x1111222233334444ULL, Bytes{17, 18}, Bytes{19}, Bytes(64, 0x51)};
    BaseChallenge bc{123456789, 0xAAAABBBBCCCCDDDDULL, make_nonce(0x01), pnym};
    BaseResponse br{123456790, 0x9999000011112222ULL, 0xAAAABBBBCCCCDDDDULL, make_nonce(0x02)};
    BaseAuth ba{123456791, 0x9999000011112222ULL, 0xAAAABBBBCCCCDDDDULL,
                149329300,  198068600,             Bytes(64, 0x33),
                pnym2};
    return {a, b, c, d, e, f, bc, br, ba};
}

}  // namespace

TEST_CASE("nonce increment is big-endian with carries") {
    Nonce n{};
    Nonce one = nonce_increment(n);
    CHECK(one[15] == 1);
    CHECK(one[14] == 0);

    n.fill(0);
    n[15] = 0xFF;
    Nonce carried = nonce_increment(n);
    CHECK(carried[15] == 0);
    CHECK(carried[14] == 1);

    n.fill(0xFF);
    Nonce wrapped = nonce_increment(n);
    for (uint8_t byte : wrapped) CHECK(byte == 0);
}

TEST_CASE("every message round-trips byte-exactly") {
    for (const ProtocolMessage& m : sample_messages()) {
        Bytes wire = encode(m);
        REQUIRE_FALSE(wire.empty());
        CHECK(wire[0] == uint8_t(tag_of(m)));

        ProtocolMessage back = decode(wire);
        CHECK(tag_of(back) == tag_of(m));
        CHECK(encode(back) == wire);
        CHECK(back == m);
    }
}

TEST_CASE("decoder rejects truncation at every length") {
    for (const ProtocolMessage& m : sample_messages()) {
        Bytes wire = encode(m);
        for (size_t len = 0; len < wire.size(); ++len) {
            Bytes cut(wire.begin(), wire.begin() + ptrdiff_t(len));
            CHECK_THROWS_AS(decode(cut), DecodeError);
        }
    }
}

TEST_CASE("decoder rejects trailing bytes and unknown tags") {
    for (const ProtocolMessage& m : sample_messages()) {
        Bytes wire = encode(m);
        wire.push_back(0x00);
        CHECK_THROWS_AS(decode(wire), DecodeError);
    }
    CHECK_THROWS_AS(decode(Bytes{0x7F, 1, 2, 3}), DecodeError);
    CHECK_THROWS_AS(decode(Bytes{0x00}), DecodeError);
    CHECK_THROWS_AS(decode(Bytes{}), DecodeError);
}

TEST_CASE("tag names cover the message space") {
    CHECK(std::string(tag_name(0x01)) == "MsgA");
    CHECK(std::string(tag_name(0x06)) == "MsgF");
    CHECK(std::string(tag_name(0x11)) == "BaseChallenge");
    CHECK(std::string(tag_name(0x13)) == "BaseAuth");
    CHECK(std::string(tag_name(0x7F)) == "Unknown");
}

TEST_CASE("transcript serializes one json object per frame") {
    Transcript t;
    Bytes f1 = encode(sample_messages()[1]);  // MsgB
    Bytes f2 = encode(sample_messages()[2]);  // MsgC
    t.record(1000, TraceDir::Tx, "alice", f1);
    t.record(2000, TraceDir::Rx, "bob", f1);
    t.record(3000, TraceDir::Tx, "bob", f2);

    CHECK(t.size() == 3);
    CHECK(t.tx_bytes().size() == f1.size() + f2.size());
    CHECK(t.all_bytes().size() == 2 * f1.size() + f2.size());

    std::string jsonl = t.to_jsonl();
    std::istringstream lines(jsonl);
    std::string line;
    std::vector<json> parsed;
    while (std::getline(lines, line)) parsed.push_back(json::parse(line));
    REQUIRE(parsed.size() == 3);

    const json& j0 = parsed[0];
    CHECK(j0.size() == 6);
    CHECK(j0.at("t_ps") == 1000);
    CHECK(j0.at("dir") == "tx");
    CHECK(j0.at("node") == "alice");
    CHECK(j0.at("tag") == "MsgB");
    CHECK(j0.at("len") == f1.size());
    CHECK(j0.at("sha256") == to_hex(digest_bytes(sha256(f1))));
    CHECK(parsed[1].at("dir") == "rx");
    CHECK(parsed[1].at("sha256") == j0.at("sha256"));
    CHECK(parsed[2].at("tag") == "MsgC");
}

TEST_CASE("privacy scan finds embedded secrets at any alignment") {
    Bytes haystack(64, 0);
    Bytes secret = {10, 11, 12, 13, 14, 15, 16, 17, 18, 19};
    std::copy(secret.begin(), secret.end(), haystack.begin() + 23);

    auto findings = privacy_scan(haystack, {secret});
    REQUIRE_FALSE(findings.empty());
    // a 10-byte secret exposes three aligned 8-byte windows
    CHECK(findings.size() == 3);
    CHECK(findings[0].offset == 23);
    CHECK(findings[0].secret_index == 0);
    CHECK(findings[2].offset == 25);

    // partial overlap below window size is not a finding
    Bytes partial(64, 0);
    std::copy(secret.begin(), secret.begin() + 7, partial.begin() + 10);
    CHECK(privacy_scan(partial, {secret}).empty());
}

TEST_CASE("privacy scan attributes findings to the right secret") {
    Bytes s1 = {1, 2, 3, 4, 5, 6, 7, 8};
    Bytes s2 = {9, 10, 11, 12, 13, 14, 15, 16};
    Bytes haystack;
    append(haystack, Bytes(5, 0xEE));
    append(haystack, s2);
    append(haystack, Bytes(3, 0xEE));
    append(haystack, s1);

    auto findings = privacy_scan(haystack, {s1, s2});
    REQUIRE(findings.size() == 2);
    CHECK(findings[0].offset == 5);
    CHECK(findings[0].secret_index == 1);
    CHECK(findings[1].offset == 16);
    CHECK(findings[1].secret_index == 0);
}

TEST_CASE("privacy scan ignores sub-window secrets and empty input") {
    Bytes haystack = {1, 2, 3, 4, 5, 6, 7};
    CHECK(privacy_scan(haystack, {Bytes{1, 2, 3}}).empty());
    CHECK(privacy_scan(Bytes{}, {Bytes(16, 1)}).empty());
    CHECK(privacy_scan(haystack, {}).empty());
}
