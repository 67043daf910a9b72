#pragma once

#include <gmpxx.h>

#include "ppsnd/bytes.hpp"
#include "ppsnd/hash.hpp"
#include "ppsnd/rng.hpp"

namespace ppsnd {

// Credential-issuer signatures over published safe-prime groups (the
// 1024/2048/3072-bit MODP groups), g = 2 of prime order q = (p-1)/2.
// Verification costs two full-width exponentiations mod p, so it scales
// steeply with the group size; this is the component that ties credential
// verification cost to the configured security level.
//
// Signature layout: e (32 bytes) || s (group-width big-endian), where
// e = H(g^k mod p || digest) and s = k - sk*e mod q.
struct SchnorrGroup {
    mpz_class p, q;  // q = (p-1)/2, both prime; the generator is 2
    unsigned bits = 0;

    size_t byte_width() const { return size_t(bits) / 8; }
    size_t signature_size() const { return 32 + byte_width(); }

    // The published group whose modulus matches `bits` security-level sizing:
    // >= 3072 -> 3072, >= 2048 -> 2048, else 1024.
    static const SchnorrGroup& for_bits(unsigned bits);
};

struct SchnorrPublicKey {
    mpz_class y;  // g^sk mod p
    unsigned group_bits = 0;

    Bytes serialize() const;  // fixed group-width big-endian y
    bool operator==(const SchnorrPublicKey& other) const = default;
};

struct SchnorrKeyPair {
    mpz_class sk;
    SchnorrPublicKey pk;

    static SchnorrKeyPair generate(const SchnorrGroup& group, DeterministicRng& rng);
};

Bytes schnorr_sign(const SchnorrGroup& group, const mpz_class& sk, const Digest& digest);
bool schnorr_verify(const SchnorrGroup& group, const SchnorrPublicKey& pk, const Digest& digest,
                    const Bytes& signature);

}  // namespace ppsnd
