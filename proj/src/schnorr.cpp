#include "ppsnd/schnorr.hpp"

#include <map>

namespace ppsnd {

namespace {

const char* kModp1024 =
    "ffffffffffffffffc90fdaa22168c234c4c6628b80dc1cd129024e088a67cc74"
    "020bbea63b139b22514a08798e3404ddef9519b3cd3a431b302b0a6df25f1437"
    "4fe1356d6d51c245e485b576625e7ec6f44c42e9a637ed6b0bff5cb6f406b7ed"
    "ee386bfb5a899fa5ae9f24117c4b1fe649286651ece65381ffffffffffffffff";

const char* kModp2048 =
    "ffffffffffffffffc90fdaa22168c234c4c6628b80dc1cd129024e088a67cc74"
    "020bbea63b139b22514a08798e3404ddef9519b3cd3a431b302b0a6df25f1437"
    "4fe1356d6d51c245e485b576625e7ec6f44c42e9a637ed6b0bff5cb6f406b7ed"
    "ee386bfb5a899fa5ae9f24117c4b1fe649286651ece45b3dc2007cb8a163bf05"
    "98da48361c55d39a69163fa8fd24cf5f83655d23dca3ad961c62f356208552bb"
    "9ed529077096966d670c354e4abc9804f1746c08ca18217c32905e462e36ce3b"
    "e39e772c180e86039b2783a2ec07a28fb5c55df06f4c52c9de2bcbf695581718"
    "3995497cea956ae515d2261898fa051015728e5a8aacaa68ffffffffffffffff";

const char* kModp3072 =
    "ffffffffffffffffc90fdaa22168c234c4c6628b80dc1cd129024e088a67cc74"
    "020bbea63b139b22514a08798e3404ddef9519b3cd3a431b302b0a6df25f1437"
    "4fe1356d6d51c245e485b576625e7ec6f44c42e9a637ed6b0bff5cb6f406b7ed"
    "ee386bfb5a899fa5ae9f24117c4b1fe649286651ece45b3dc2007cb8a163bf05"
    "98da48361c55d39a69163fa8fd24cf5f83655d23dca3ad961c62f356208552bb"
    "9ed529077096966d670c354e4abc9804f1746c08ca18217c32905e462e36ce3b"
    "e39e772c180e86039b2783a2ec07a28fb5c55df06f4c52c9de2bcbf695581718"
    "3995497cea956ae515d2261898fa051015728e5a8aaac42dad33170d04507a33"
    "a85521abdf1cba64ecfb850458dbef0a8aea71575d060c7db3970f85a6e1e4c7"
    "abf5ae8cdb0933d71e8c94e04a25619dcee3d2261ad2ee6bf12ffa06d98a0864"
    "d87602733ec86a64521f2b18177b200cbbe117577a615d6c770988c0bad946e2"
    "08e24fa074e5ab3143db5bfce0fd108e4b82d120a93ad2caffffffffffffffff";

SchnorrGroup make_group(const char* hex, unsigned bits) {
    SchnorrGroup g;
    g.p = mpz_class(hex, 16);
    g.q = (g.p - 1) / 2;
    g.bits = bits;
    return g;
}

mpz_class challenge_scalar(const SchnorrGroup& group, const mpz_class& commitment, const Digest& digest) {
    Bytes input = mpz_to_bytes_fixed(commitment, group.byte_width());
    append(input, digest_bytes(digest));
    return mpz_from_bytes(digest_bytes(sha256(input))) % group.q;
}

}  // namespace

const SchnorrGroup& SchnorrGroup::for_bits(unsigned bits) {
    static const SchnorrGroup g1024 = make_group(kModp1024, 1024);
    static const SchnorrGroup g2048 = make_group(kModp2048, 2048);
    static const SchnorrGroup g3072 = make_group(kModp3072, 3072);
    if (bits >= 3072) return g3072;
    if (bits >= 2048) return g2048;
    return g1024;
}

Bytes SchnorrPublicKey::serialize() const {
    return mpz_to_bytes_fixed(y, SchnorrGroup::for_bits(group_bits).byte_width());
}

SchnorrKeyPair SchnorrKeyPair::generate(const SchnorrGroup& group, DeterministicRng& rng) {
    SchnorrKeyPair kp;
    kp.sk = rng.uniform_below(group.q - 1) + 1;
    mpz_class g = 2;
    mpz_powm(kp.pk.y.get_mpz_t(), g.get_mpz_t(), kp.sk.get_mpz_t(), group.p.get_mpz_t());
    kp.pk.group_bits = group.bits;
    return kp;
}

Bytes schnorr_sign(const SchnorrGroup& group, const mpz_class& sk, const Digest& digest) {
    if (sgn(sk) <= 0 || sk >= group.q) throw DomainError("schnorr sign: bad key");
    // Nonce drawn full-width below q; a short (hash-width) nonce would be
    // recoverable from a few signatures at these group sizes.
    Bytes nonce_seed = mpz_to_bytes_fixed(sk, group.byte_width());
    append(nonce_seed, digest_bytes(digest));
    DeterministicRng nonce_rng(nonce_seed);
    mpz_class k = nonce_rng.uniform_below(group.q - 1) + 1;
    mpz_class g = 2, commitment;
    mpz_powm(commitment.get_mpz_t(), g.get_mpz_t(), k.get_mpz_t(), group.p.get_mpz_t());
    mpz_class e = challenge_scalar(group, commitment, digest);
    mpz_class s = (k - sk * e) % group.q;
    if (sgn(s) < 0) s += group.q;
    Bytes sig = mpz_to_bytes_fixed(e, 32);
    append(sig, mpz_to_bytes_fixed(s, group.byte_width()));
    return sig;
}

bool schnorr_verify(const SchnorrGroup& group, const SchnorrPublicKey& pk, const Digest& digest,
                    const Bytes& signature) {
    if (signature.size() != group.signature_size()) return false;
    if (pk.group_bits != group.bits) return false;
    if (sgn(pk.y) <= 0 || pk.y >= group.p) return false;
    mpz_class e = mpz_from_bytes(signature.data(), 32);
    mpz_class s = mpz_from_bytes(signature.data() + 32, group.byte_width());
    if (e >= group.q || s >= group.q) return false;
    // g^s * y^e = g^(k - sk*e) * g^(sk*e) = g^k
    mpz_class g = 2, g_s, y_e;
    mpz_powm(g_s.get_mpz_t(), g.get_mpz_t(), s.get_mpz_t(), group.p.get_mpz_t());
    mpz_powm(y_e.get_mpz_t(), pk.y.get_mpz_t(), e.get_mpz_t(), group.p.get_mpz_t());
    mpz_class commitment = g_s * y_e % group.p;
    return challenge_scalar(group, commitment, digest) == e;
}

}  // namespace ppsnd
