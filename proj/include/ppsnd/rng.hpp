#pragma once

#include <gmpxx.h>

#include <string>

#include "ppsnd/bytes.hpp"
#include "ppsnd/hash.hpp"

namespace ppsnd {

// SHA-256 counter-mode generator. Every random choice in the library flows
// through one of these so a (seed, scenario) pair replays bit-for-bit.
// fork() derives an independent child stream; forks never share output.
class DeterministicRng {
  public:
    explicit DeterministicRng(uint64_t seed);
    explicit DeterministicRng(const Bytes& seed_material);

    DeterministicRng fork(const std::string& label) const;

    void fill(uint8_t* out, size_t len);
    Bytes bytes(size_t len);
    uint64_t u64();

    // Uniform in [0, bound), rejection-sampled. bound must be positive.
    mpz_class uniform_below(const mpz_class& bound);
    // Uniform with exactly `bits` bits (top bit set).
    mpz_class uniform_bits(unsigned bits);

  private:
    Digest key_{};
    uint64_t counter_ = 0;
    Digest block_{};
    size_t block_used_ = 32;

    void refill();
};

}  // namespace ppsnd
