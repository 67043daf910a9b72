#pragma once

#include <array>

#include "ppsnd/bytes.hpp"

namespace ppsnd {

using Digest = std::array<uint8_t, 32>;

Digest sha256(const uint8_t* data, size_t len);
Digest sha256(const Bytes& data);

inline Bytes digest_bytes(const Digest& d) { return Bytes(d.begin(), d.end()); }

// First 8 bytes of sha256, used for short identifiers and dedup keys.
uint64_t sha256_prefix64(const Bytes& data);

}  // namespace ppsnd
