#pragma once

#include <gmpxx.h>

#include "ppsnd/bytes.hpp"
#include "ppsnd/rng.hpp"

namespace ppsnd {

class PaillierPublicKey;

// Ciphertext in Z*_{n^2}, tagged with the key it was produced under so
// cross-key operations fail loudly instead of producing garbage.
struct PaillierCiphertext {
    mpz_class value;
    uint64_t key_tag = 0;

    bool operator==(const PaillierCiphertext& other) const = default;
};

class PaillierPublicKey {
  public:
    PaillierPublicKey() = default;
    explicit PaillierPublicKey(mpz_class n);

    const mpz_class& n() const { return n_; }
    const mpz_class& n_squared() const { return n2_; }
    // Generator is fixed at n+1, so (n+1)^m = 1 + m*n mod n^2.
    mpz_class g() const { return n_ + 1; }
    uint64_t tag() const { return tag_; }
    size_t bit_length() const { return mpz_sizeinbase(n_.get_mpz_t(), 2); }

    PaillierCiphertext encrypt(const mpz_class& m, DeterministicRng& rng) const;
    PaillierCiphertext encrypt_with_r(const mpz_class& m, const mpz_class& r) const;

    PaillierCiphertext he_add(const PaillierCiphertext& c1, const PaillierCiphertext& c2) const;
    PaillierCiphertext he_sub(const PaillierCiphertext& c1, const PaillierCiphertext& c2) const;
    PaillierCiphertext he_scalar_mul(const PaillierCiphertext& c, const mpz_class& k) const;

    // Re-tag raw wire bytes as a ciphertext under this key, validating range
    // and invertibility.
    PaillierCiphertext ciphertext_from_bytes(const Bytes& bytes) const;

    Bytes serialize() const;
    static PaillierPublicKey deserialize(const Bytes& bytes);

    bool operator==(const PaillierPublicKey& other) const { return n_ == other.n_; }

  private:
    mpz_class n_, n2_;
    uint64_t tag_ = 0;

    void check_tag(const PaillierCiphertext& c, const char* op) const;
};

struct PaillierKeyPair {
    PaillierPublicKey pub;
    mpz_class lambda;  // lcm(p-1, q-1)
    mpz_class mu;      // (L(g^lambda mod n^2))^-1 mod n

    static PaillierKeyPair generate(unsigned bits, DeterministicRng& rng);
    // Test-oriented constructor accepting arbitrary valid primes, including
    // toy sizes below the generate() minimum.
    static PaillierKeyPair from_primes(const mpz_class& p, const mpz_class& q);

    mpz_class decrypt(const PaillierCiphertext& c) const;
};

// Map a residue mod n to the signed value it represents under the n/2 split.
mpz_class decode_signed(const mpz_class& m, const mpz_class& n);

}  // namespace ppsnd
