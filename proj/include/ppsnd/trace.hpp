#pragma once

#include <string>
#include <vector>

#include "ppsnd/hash.hpp"
#include "ppsnd/pseudonym.hpp"

namespace ppsnd {

enum class TraceDir : uint8_t { Tx, Rx };

struct TraceEntry {
    SimTime t_ps = 0;
    TraceDir dir = TraceDir::Tx;
    std::string node;
    uint8_t tag = 0;
    Bytes frame;
};

// Ordered log of every frame the medium carried. One tx entry per
// transmission, one rx entry per antenna that heard it.
class Transcript {
  public:
    void record(SimTime t_ps, TraceDir dir, const std::string& node, const Bytes& frame);

    const std::vector<TraceEntry>& entries() const { return entries_; }
    size_t size() const { return entries_.size(); }

    // Concatenation of transmitted frames, the byte string an observer of
    // the whole medium could assemble.
    Bytes tx_bytes() const;
    Bytes all_bytes() const;

    // One JSON object per line: t_ps, dir, node, tag, len, sha256.
    std::string to_jsonl() const;

  private:
    std::vector<TraceEntry> entries_;
};

struct ScanFinding {
    size_t offset = 0;        // byte offset into the scanned transcript
    size_t secret_index = 0;  // which secret matched
};

// Slides an 8-byte window over `haystack` and reports any position whose
// bytes also occur (at any alignment) inside one of the secrets. Secrets
// shorter than 8 bytes are ignored.
std::vector<ScanFinding> privacy_scan(const Bytes& haystack, const std::vector<Bytes>& secrets);

}  // namespace ppsnd
