#include "ppsnd/ecdsa.hpp"

namespace ppsnd {

namespace {

// secp256k1: y^2 = x^3 + 7 over F_p.
struct Curve {
    mpz_class p, n, gx, gy;

    Curve() {
        p = mpz_class("fffffffffffffffffffffffffffffffffffffffffffffffffffffffefffffc2f", 16);
        n = mpz_class("fffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364141", 16);
        gx = mpz_class("79be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798", 16);
        gy = mpz_class("483ada7726a3c4655da4fbfc0e1108a8fd17b448a68554199c47d08ffb10d4b8", 16);
    }
};

const Curve& curve() {
    static const Curve c;
    return c;
}

struct Jacobian {
    mpz_class x, y, z;  // z == 0 encodes the point at infinity

    bool infinite() const { return sgn(z) == 0; }
};

mpz_class mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r = a % m;
    if (sgn(r) < 0) r += m;
    return r;
}

Jacobian dbl(const Jacobian& pt) {
    const mpz_class& p = curve().p;
    if (pt.infinite() || sgn(pt.y) == 0) return {0, 1, 0};
    mpz_class ysq = mod(pt.y * pt.y, p);
    mpz_class s = mod(4 * pt.x * ysq, p);
    // a = 0, so M = 3x^2
    mpz_class m = mod(3 * pt.x * pt.x, p);
    mpz_class nx = mod(m * m - 2 * s, p);
    mpz_class ny = mod(m * (s - nx) - 8 * ysq * ysq, p);
    mpz_class nz = mod(2 * pt.y * pt.z, p);
    return {nx, ny, nz};
}

Jacobian add(const Jacobian& a, const Jacobian& b) {
    const mpz_class& p = curve().p;
    if (a.infinite()) return b;
    if (b.infinite()) return a;
    mpz_class z1z1 = mod(a.z * a.z, p);
    mpz_class z2z2 = mod(b.z * b.z, p);
    mpz_class u1 = mod(a.x * z2z2, p);
    mpz_class u2 = mod(b.x * z1z1, p);
    mpz_class s1 = mod(a.y * b.z * z2z2, p);
    mpz_class s2 = mod(b.y * a.z * z1z1, p);
    if (u1 == u2) {
        if (s1 != s2) return {0, 1, 0};
        return dbl(a);
    }
    mpz_class h = mod(u2 - u1, p);
    mpz_class hh = mod(h * h, p);
    mpz_class hhh = mod(h * hh, p);
    mpz_class r = mod(s2 - s1, p);
    mpz_class v = mod(u1 * hh, p);
    mpz_class nx = mod(r * r - hhh - 2 * v, p);
    mpz_class ny = mod(r * (v - nx) - s1 * hhh, p);
    mpz_class nz = mod(a.z * b.z * h, p);
    return {nx, ny, nz};
}

Jacobian scalar_mul(const Jacobian& pt, const mpz_class& k) {
    Jacobian acc{0, 1, 0};
    long bits = long(mpz_sizeinbase(k.get_mpz_t(), 2));
    if (sgn(k) == 0) return acc;
    for (long i = bits - 1; i >= 0; --i) {
        acc = dbl(acc);
        if (mpz_tstbit(k.get_mpz_t(), mp_bitcnt_t(i))) acc = add(acc, pt);
    }
    return acc;
}

Jacobian base_point() { return {curve().gx, curve().gy, 1}; }

struct Affine {
    mpz_class x, y;
};

Affine to_affine(const Jacobian& pt) {
    const mpz_class& p = curve().p;
    if (pt.infinite()) throw DomainError("ecdsa: point at infinity");
    mpz_class zinv;
    mpz_invert(zinv.get_mpz_t(), pt.z.get_mpz_t(), p.get_mpz_t());
    mpz_class zinv2 = mod(zinv * zinv, p);
    return {mod(pt.x * zinv2, p), mod(pt.y * zinv2 * zinv, p)};
}

bool on_curve(const mpz_class& x, const mpz_class& y) {
    const mpz_class& p = curve().p;
    if (sgn(x) < 0 || x >= p || sgn(y) < 0 || y >= p) return false;
    return mod(y * y - x * x * x - 7, p) == 0;
}

mpz_class digest_to_scalar(const Digest& digest) {
    return mod(mpz_from_bytes(digest.data(), digest.size()), curve().n);
}

}  // namespace

Bytes EcdsaPublicKey::serialize() const {
    Bytes out = mpz_to_bytes_fixed(x, 32);
    append(out, mpz_to_bytes_fixed(y, 32));
    return out;
}

EcdsaPublicKey EcdsaPublicKey::deserialize(const Bytes& bytes) {
    if (bytes.size() != 64) throw DecodeError("ecdsa key: expected 64 bytes");
    EcdsaPublicKey pk;
    pk.x = mpz_from_bytes(bytes.data(), 32);
    pk.y = mpz_from_bytes(bytes.data() + 32, 32);
    return pk;
}

EcdsaKeyPair EcdsaKeyPair::generate(DeterministicRng& rng) {
    EcdsaKeyPair kp;
    kp.sk = rng.uniform_below(curve().n - 1) + 1;
    Affine q = to_affine(scalar_mul(base_point(), kp.sk));
    kp.pk = {q.x, q.y};
    return kp;
}

Bytes ecdsa_sign(const mpz_class& sk, const Digest& digest) {
    const mpz_class& n = curve().n;
    if (sgn(sk) <= 0 || sk >= n) throw DomainError("ecdsa sign: bad key");
    mpz_class z = digest_to_scalar(digest);
    Bytes nonce_seed = mpz_to_bytes_fixed(sk, 32);
    append(nonce_seed, digest_bytes(digest));
    DeterministicRng nonce_rng(nonce_seed);
    for (;;) {
        mpz_class k = nonce_rng.uniform_below(n - 1) + 1;
        Affine r_pt = to_affine(scalar_mul(base_point(), k));
        mpz_class r = mod(r_pt.x, n);
        if (sgn(r) == 0) continue;
        mpz_class kinv;
        mpz_invert(kinv.get_mpz_t(), k.get_mpz_t(), n.get_mpz_t());
        mpz_class s = mod(kinv * (z + r * sk), n);
        if (sgn(s) == 0) continue;
        if (2 * s > n) s = n - s;
        Bytes sig = mpz_to_bytes_fixed(r, 32);
        append(sig, mpz_to_bytes_fixed(s, 32));
        return sig;
    }
}

bool ecdsa_verify(const EcdsaPublicKey& pk, const Digest& digest, const Bytes& signature) {
    const mpz_class& n = curve().n;
    if (signature.size() != 64) return false;
    if (!on_curve(pk.x, pk.y)) return false;
    mpz_class r = mpz_from_bytes(signature.data(), 32);
    mpz_class s = mpz_from_bytes(signature.data() + 32, 32);
    if (sgn(r) <= 0 || r >= n || sgn(s) <= 0 || s >= n) return false;
    mpz_class z = digest_to_scalar(digest);
    mpz_class sinv;
    mpz_invert(sinv.get_mpz_t(), s.get_mpz_t(), n.get_mpz_t());
    mpz_class u1 = mod(z * sinv, n);
    mpz_class u2 = mod(r * sinv, n);
    Jacobian sum = add(scalar_mul(base_point(), u1), scalar_mul({pk.x, pk.y, 1}, u2));
    if (sum.infinite()) return false;
    Affine res = to_affine(sum);
    return mod(res.x, n) == r;
}

}  // namespace ppsnd
