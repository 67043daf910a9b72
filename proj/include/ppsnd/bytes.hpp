#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ppsnd {

using Bytes = std::vector<uint8_t>;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SimulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void put_u32_be(Bytes& out, uint32_t v) {
    out.push_back(uint8_t(v >> 24));
    out.push_back(uint8_t(v >> 16));
    out.push_back(uint8_t(v >> 8));
    out.push_back(uint8_t(v));
}

inline void put_u64_be(Bytes& out, uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) out.push_back(uint8_t(v >> shift));
}

inline Bytes u64_be(uint64_t v) {
    Bytes out;
    put_u64_be(out, v);
    return out;
}

inline uint64_t load_u64_be(const uint8_t* p) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
    return v;
}

inline void append(Bytes& out, const Bytes& more) { out.insert(out.end(), more.begin(), more.end()); }

inline void append(Bytes& out, const std::string& s) { out.insert(out.end(), s.begin(), s.end()); }

// Minimal big-endian magnitude; zero encodes as a single 0x00 byte.
inline Bytes mpz_to_bytes(const mpz_class& x) {
    if (sgn(x) < 0) throw DomainError("mpz_to_bytes: negative value");
    if (x == 0) return Bytes{0};
    size_t count = 0;
    Bytes out((mpz_sizeinbase(x.get_mpz_t(), 2) + 7) / 8);
    mpz_export(out.data(), &count, 1, 1, 1, 0, x.get_mpz_t());
    out.resize(count);
    return out;
}

inline Bytes mpz_to_bytes_fixed(const mpz_class& x, size_t width) {
    Bytes minimal = mpz_to_bytes(x);
    if (minimal.size() > width) throw DomainError("mpz_to_bytes_fixed: value too wide");
    Bytes out(width - minimal.size(), 0);
    append(out, minimal);
    return out;
}

inline mpz_class mpz_from_bytes(const uint8_t* data, size_t len) {
    mpz_class x;
    if (len > 0) mpz_import(x.get_mpz_t(), len, 1, 1, 1, 0, data);
    return x;
}

inline mpz_class mpz_from_bytes(const Bytes& b) { return mpz_from_bytes(b.data(), b.size()); }

class ByteReader {
  public:
    ByteReader(const uint8_t* data, size_t len) : data_(data), len_(len) {}
    explicit ByteReader(const Bytes& b) : ByteReader(b.data(), b.size()) {}

    size_t remaining() const { return len_ - off_; }

    uint8_t u8() {
        need(1);
        return data_[off_++];
    }

    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = v << 8 | data_[off_++];
        return v;
    }

    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = v << 8 | data_[off_++];
        return v;
    }

    Bytes raw(size_t n) {
        need(n);
        Bytes out(data_ + off_, data_ + off_ + n);
        off_ += n;
        return out;
    }

    // u32 length prefix followed by that many bytes.
    Bytes var() {
        uint32_t n = u32();
        return raw(n);
    }

    void expect_done() const {
        if (off_ != len_) throw DecodeError("decode: trailing bytes");
    }

  private:
    const uint8_t* data_;
    size_t len_;
    size_t off_ = 0;

    void need(size_t n) const {
        if (len_ - off_ < n) throw DecodeError("decode: truncated");
    }
};

inline void put_var(Bytes& out, const Bytes& field) {
    put_u32_be(out, uint32_t(field.size()));
    append(out, field);
}

inline std::string to_hex(const uint8_t* data, size_t len) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (size_t i = 0; i < len; ++i) {
        out.push_back(digits[data[i] >> 4]);
        out.push_back(digits[data[i] & 0xF]);
    }
    return out;
}

inline std::string to_hex(const Bytes& b) { return to_hex(b.data(), b.size()); }

inline Bytes from_hex(const std::string& hex) {
    if (hex.size() % 2 != 0) throw DomainError("from_hex: odd length");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw DomainError("from_hex: bad digit");
    };
    Bytes out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = uint8_t(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    return out;
}

}  // namespace ppsnd
