#include "ppsnd/paillier.hpp"

#include "ppsnd/hash.hpp"

namespace ppsnd {

namespace {

constexpr int kPrimalityRounds = 64;

mpz_class random_prime(unsigned bits, DeterministicRng& rng) {
    for (;;) {
        mpz_class cand = rng.uniform_bits(bits);
        // Top two bits set so the product of two such primes has exactly
        // 2*bits bits; low bit set for oddness.
        mpz_setbit(cand.get_mpz_t(), bits - 2);
        mpz_setbit(cand.get_mpz_t(), 0);
        while (mpz_sizeinbase(cand.get_mpz_t(), 2) == bits) {
            if (mpz_probab_prime_p(cand.get_mpz_t(), kPrimalityRounds) > 0) return cand;
            cand += 2;
        }
    }
}

mpz_class L(const mpz_class& u, const mpz_class& n) { return (u - 1) / n; }

}  // namespace

PaillierPublicKey::PaillierPublicKey(mpz_class n) : n_(std::move(n)) {
    if (sgn(n_) <= 0) throw DomainError("paillier: modulus must be positive");
    n2_ = n_ * n_;
    tag_ = sha256_prefix64(mpz_to_bytes(n_));
}

void PaillierPublicKey::check_tag(const PaillierCiphertext& c, const char* op) const {
    if (c.key_tag != tag_) throw DomainError(std::string(op) + ": ciphertext under a different key");
}

PaillierCiphertext PaillierPublicKey::encrypt(const mpz_class& m, DeterministicRng& rng) const {
    mpz_class r;
    do {
        r = rng.uniform_below(n_ - 1) + 1;
    } while (gcd(r, n_) != 1);
    return encrypt_with_r(m, r);
}

PaillierCiphertext PaillierPublicKey::encrypt_with_r(const mpz_class& m, const mpz_class& r) const {
    if (sgn(m) < 0 || m >= n_) throw DomainError("paillier encrypt: plaintext out of [0, n)");
    if (sgn(r) <= 0 || r >= n_ || gcd(r, n_) != 1) throw DomainError("paillier encrypt: bad randomness");
    mpz_class g_m = (1 + m * n_) % n2_;
    mpz_class r_n;
    mpz_powm(r_n.get_mpz_t(), r.get_mpz_t(), n_.get_mpz_t(), n2_.get_mpz_t());
    return {g_m * r_n % n2_, tag_};
}

PaillierCiphertext PaillierPublicKey::he_add(const PaillierCiphertext& c1, const PaillierCiphertext& c2) const {
    check_tag(c1, "he_add");
    check_tag(c2, "he_add");
    return {c1.value * c2.value % n2_, tag_};
}

PaillierCiphertext PaillierPublicKey::he_sub(const PaillierCiphertext& c1, const PaillierCiphertext& c2) const {
    check_tag(c1, "he_sub");
    check_tag(c2, "he_sub");
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), c2.value.get_mpz_t(), n2_.get_mpz_t()) == 0)
        throw DomainError("he_sub: ciphertext not invertible (malformed)");
    return {c1.value * inv % n2_, tag_};
}

PaillierCiphertext PaillierPublicKey::he_scalar_mul(const PaillierCiphertext& c, const mpz_class& k) const {
    check_tag(c, "he_scalar_mul");
    if (sgn(k) < 0 || k >= n_) throw DomainError("he_scalar_mul: scalar out of [0, n)");
    mpz_class out;
    mpz_powm(out.get_mpz_t(), c.value.get_mpz_t(), k.get_mpz_t(), n2_.get_mpz_t());
    return {out, tag_};
}

PaillierCiphertext PaillierPublicKey::ciphertext_from_bytes(const Bytes& bytes) const {
    mpz_class v = mpz_from_bytes(bytes);
    if (sgn(v) <= 0 || v >= n2_ || gcd(v, n_) != 1)
        throw DomainError("ciphertext_from_bytes: value outside Z*_{n^2}");
    return {v, tag_};
}

Bytes PaillierPublicKey::serialize() const {
    Bytes n_bytes = mpz_to_bytes(n_);
    Bytes out;
    put_u32_be(out, uint32_t(n_bytes.size()));
    append(out, n_bytes);
    return out;
}

PaillierPublicKey PaillierPublicKey::deserialize(const Bytes& bytes) {
    if (bytes.size() < 4) throw DecodeError("paillier key: truncated");
    uint32_t len = uint32_t(bytes[0]) << 24 | uint32_t(bytes[1]) << 16 | uint32_t(bytes[2]) << 8 | bytes[3];
    if (bytes.size() != 4 + size_t(len)) throw DecodeError("paillier key: length mismatch");
    return PaillierPublicKey(mpz_from_bytes(bytes.data() + 4, len));
}

PaillierKeyPair PaillierKeyPair::generate(unsigned bits, DeterministicRng& rng) {
    if (bits < 64 || bits % 2 != 0) throw ConfigError("paillier keygen: bits must be even and >= 64");
    mpz_class p = random_prime(bits / 2, rng);
    mpz_class q;
    do {
        q = random_prime(bits / 2, rng);
    } while (q == p);
    return from_primes(p, q);
}

PaillierKeyPair PaillierKeyPair::from_primes(const mpz_class& p, const mpz_class& q) {
    if (p == q) throw ConfigError("paillier: primes must be distinct");
    if (mpz_probab_prime_p(p.get_mpz_t(), kPrimalityRounds) == 0 ||
        mpz_probab_prime_p(q.get_mpz_t(), kPrimalityRounds) == 0)
        throw ConfigError("paillier: inputs must be prime");
    PaillierKeyPair kp;
    kp.pub = PaillierPublicKey(p * q);
    kp.lambda = lcm(p - 1, q - 1);
    mpz_class u;
    mpz_class g = kp.pub.g();
    mpz_powm(u.get_mpz_t(), g.get_mpz_t(), kp.lambda.get_mpz_t(), kp.pub.n_squared().get_mpz_t());
    mpz_class l = L(u, kp.pub.n());
    if (mpz_invert(kp.mu.get_mpz_t(), l.get_mpz_t(), kp.pub.n().get_mpz_t()) == 0)
        throw ConfigError("paillier: L(g^lambda) not invertible; bad primes");
    return kp;
}

mpz_class PaillierKeyPair::decrypt(const PaillierCiphertext& c) const {
    if (c.key_tag != pub.tag()) throw DomainError("paillier decrypt: ciphertext under a different key");
    if (sgn(c.value) <= 0 || c.value >= pub.n_squared() || gcd(c.value, pub.n()) != 1)
        throw DomainError("paillier decrypt: value outside Z*_{n^2}");
    mpz_class u;
    mpz_powm(u.get_mpz_t(), c.value.get_mpz_t(), lambda.get_mpz_t(), pub.n_squared().get_mpz_t());
    return L(u, pub.n()) * mu % pub.n();
}

mpz_class decode_signed(const mpz_class& m, const mpz_class& n) {
    if (sgn(m) < 0 || m >= n) throw DomainError("decode_signed: residue out of [0, n)");
    return 2 * m > n ? mpz_class(m - n) : m;
}

}  // namespace ppsnd
