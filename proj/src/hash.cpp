#include "ppsnd/hash.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace ppsnd {

Digest sha256(const uint8_t* data, size_t len) {
    Digest out{};
    unsigned int out_len = 0;
    if (EVP_Digest(data, len, out.data(), &out_len, EVP_sha256(), nullptr) != 1 || out_len != 32)
        throw std::runtime_error("sha256 failed");
    return out;
}

Digest sha256(const Bytes& data) { return sha256(data.data(), data.size()); }

uint64_t sha256_prefix64(const Bytes& data) {
    Digest d = sha256(data);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = v << 8 | d[size_t(i)];
    return v;
}

}  // namespace ppsnd
