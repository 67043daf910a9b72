#include "ppsnd/rng.hpp"

#include <cstring>

namespace ppsnd {

DeterministicRng::DeterministicRng(uint64_t seed) {
    Bytes material;
    append(material, std::string("seed:"));
    put_u64_be(material, seed);
    key_ = sha256(material);
}

DeterministicRng::DeterministicRng(const Bytes& seed_material) { key_ = sha256(seed_material); }

DeterministicRng DeterministicRng::fork(const std::string& label) const {
    Bytes material(key_.begin(), key_.end());
    material.push_back(0xFF);
    append(material, label);
    DeterministicRng child(material);
    return child;
}

void DeterministicRng::refill() {
    Bytes input(key_.begin(), key_.end());
    put_u64_be(input, counter_++);
    block_ = sha256(input);
    block_used_ = 0;
}

void DeterministicRng::fill(uint8_t* out, size_t len) {
    while (len > 0) {
        if (block_used_ == 32) refill();
        size_t take = std::min(len, 32 - block_used_);
        std::memcpy(out, block_.data() + block_used_, take);
        block_used_ += take;
        out += take;
        len -= take;
    }
}

Bytes DeterministicRng::bytes(size_t len) {
    Bytes out(len);
    fill(out.data(), len);
    return out;
}

uint64_t DeterministicRng::u64() {
    uint8_t buf[8];
    fill(buf, 8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = v << 8 | buf[i];
    return v;
}

mpz_class DeterministicRng::uniform_below(const mpz_class& bound) {
    if (sgn(bound) <= 0) throw DomainError("uniform_below: bound must be positive");
    size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    size_t byte_len = (bits + 7) / 8;
    unsigned top_mask = bits % 8 == 0 ? 0xFF : (1u << bits % 8) - 1;
    Bytes buf(byte_len);
    for (;;) {
        fill(buf.data(), byte_len);
        buf[0] &= uint8_t(top_mask);
        mpz_class x = mpz_from_bytes(buf);
        if (x < bound) return x;
    }
}

mpz_class DeterministicRng::uniform_bits(unsigned bits) {
    if (bits == 0) throw DomainError("uniform_bits: bits must be positive");
    size_t byte_len = (bits + 7) / 8;
    Bytes buf = bytes(byte_len);
    unsigned top_mask = bits % 8 == 0 ? 0xFF : (1u << bits % 8) - 1;
    buf[0] &= uint8_t(top_mask);
    mpz_class x = mpz_from_bytes(buf);
    mpz_setbit(x.get_mpz_t(), bits - 1);
    return x;
}

}  // namespace ppsnd
