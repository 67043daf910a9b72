#pragma once

#include <set>
#include <string>
#include <vector>

#include "ppsnd/ecdsa.hpp"
#include "ppsnd/paillier.hpp"
#include "ppsnd/schnorr.hpp"

namespace ppsnd {

using SimTime = int64_t;  // picoseconds

// Short on-wire identifier: first 8 bytes of a credential hash.
using Pid = uint64_t;

std::string pid_hex(Pid pid);

// Ephemeral credential. Carries only per-lifetime material: nothing in here
// derives from a long-term identity.
struct Pseudonym {
    Bytes provider_id;  // 8 bytes, hash of the issuer's anchor key
    SimTime valid_from = 0;
    SimTime valid_to = 0;
    PaillierPublicKey ppk;
    EcdsaPublicKey sig_pk;
    Bytes provider_sig;

    Bytes serialize() const;
    Bytes signing_input() const;  // serialization minus the trailing signature
    static Pseudonym deserialize(const Bytes& bytes);
    static Pseudonym read_from(ByteReader& reader);

    Pid pid() const;  // hash of the full serialization

    bool operator==(const Pseudonym& other) const { return serialize() == other.serialize(); }
};

bool verify_pnym(const Pseudonym& pnym, const SchnorrPublicKey& pca_anchor, SimTime now);

struct LongTermCredential {
    std::string identity;
    EcdsaKeyPair keys;
    Bytes issuer_sig;
};

struct AnonymousToken {
    Bytes nonce;  // 32 random bytes, the only payload
    Bytes issuer_sig;

    Bytes serialize() const;
};

struct WalletEntry {
    Pseudonym pnym;
    mpz_class sig_sk;
    PaillierKeyPair paillier;
    Pid pid = 0;
};

struct PseudonymWallet {
    std::vector<WalletEntry> entries;  // consecutive lifetimes, ascending

    const WalletEntry& current(SimTime now) const;  // throws if now outside span
    SimTime span_from() const;
    SimTime span_to() const;
};

// Fresh per-pseudonym key pairs, generated device-side and certified by the
// issuer.
struct KeyMaterial {
    struct Entry {
        EcdsaKeyPair sig;
        PaillierKeyPair paillier;
    };
    std::vector<Entry> entries;

    static KeyMaterial generate(size_t count, unsigned paillier_bits, DeterministicRng& rng);
};

// Identity registry: issues one long-term credential per identity and blind
// one-shot tokens that carry no identity-derived bytes.
class Ltca {
  public:
    explicit Ltca(DeterministicRng rng);

    LongTermCredential issue_ltc(const std::string& identity);
    AnonymousToken request_token(const LongTermCredential& ltc);

    const EcdsaPublicKey& anchor() const { return keys_.pk; }
    bool verify_ltc(const LongTermCredential& ltc) const;
    uint64_t tokens_issued() const { return tokens_issued_; }

  private:
    DeterministicRng rng_;
    EcdsaKeyPair keys_;
    std::set<std::string> registered_;
    uint64_t tokens_issued_ = 0;
};

Digest ltc_digest(const std::string& identity, const EcdsaPublicKey& pk);
Digest token_digest(const Bytes& nonce);

// Credential issuer: exchanges a valid unused token for a wallet of K
// pseudonyms with consecutive lifetimes. Holds no record linking a wallet to
// the token's origin; its entire mutable state is the used-token set.
class Pca {
  public:
    Pca(const SchnorrGroup& group, DeterministicRng rng);

    PseudonymWallet issue_batch(const AnonymousToken& token, const EcdsaPublicKey& ltca_anchor, size_t k,
                                SimTime tau, SimTime start, const KeyMaterial& material);

    const SchnorrPublicKey& anchor() const { return keys_.pk; }
    const Bytes& provider_id() const { return provider_id_; }
    const SchnorrGroup& group() const { return group_; }

    // Everything this object remembers across calls, serialized for
    // information-flow checks.
    Bytes stored_state_bytes() const;

  private:
    const SchnorrGroup& group_;
    SchnorrKeyPair keys_;
    Bytes provider_id_;
    std::set<Bytes> used_tokens_;
};

}  // namespace ppsnd
