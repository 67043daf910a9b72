#pragma once

#include <gmpxx.h>

#include "ppsnd/bytes.hpp"
#include "ppsnd/hash.hpp"
#include "ppsnd/rng.hpp"

namespace ppsnd {

// 256-bit curve signatures for per-message node authentication. Signing is
// deterministic: the nonce is derived from (signing key, digest), so equal
// inputs give byte-identical signatures and simulation traces stay
// reproducible. Signatures are 64 bytes: r || s, fixed-width big-endian,
// with s normalized to the low half.
struct EcdsaPublicKey {
    mpz_class x, y;

    Bytes serialize() const;  // 64 bytes: x || y
    static EcdsaPublicKey deserialize(const Bytes& bytes);
    bool operator==(const EcdsaPublicKey& other) const = default;
};

struct EcdsaKeyPair {
    mpz_class sk;
    EcdsaPublicKey pk;

    static EcdsaKeyPair generate(DeterministicRng& rng);
};

Bytes ecdsa_sign(const mpz_class& sk, const Digest& digest);
bool ecdsa_verify(const EcdsaPublicKey& pk, const Digest& digest, const Bytes& signature);

}  // namespace ppsnd
