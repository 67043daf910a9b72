#include "ppsnd/trace.hpp"

#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "ppsnd/wire.hpp"

namespace ppsnd {

void Transcript::record(SimTime t_ps, TraceDir dir, const std::string& node, const Bytes& frame) {
    TraceEntry e;
    e.t_ps = t_ps;
    e.dir = dir;
    e.node = node;
    e.tag = frame.empty() ? 0 : frame[0];
    e.frame = frame;
    entries_.push_back(std::move(e));
}

Bytes Transcript::tx_bytes() const {
    Bytes out;
    for (const auto& e : entries_) {
        if (e.dir == TraceDir::Tx) append(out, e.frame);
    }
    return out;
}

Bytes Transcript::all_bytes() const {
    Bytes out;
    for (const auto& e : entries_) append(out, e.frame);
    return out;
}

std::string Transcript::to_jsonl() const {
    std::ostringstream out;
    for (const auto& e : entries_) {
        nlohmann::json j;
        j["t_ps"] = e.t_ps;
        j["dir"] = e.dir == TraceDir::Tx ? "tx" : "rx";
        j["node"] = e.node;
        j["tag"] = tag_name(e.tag);
        j["len"] = e.frame.size();
        j["sha256"] = to_hex(digest_bytes(sha256(e.frame)));
        out << j.dump() << '\n';
    }
    return out.str();
}

std::vector<ScanFinding> privacy_scan(const Bytes& haystack, const std::vector<Bytes>& secrets) {
    constexpr size_t kWindow = 8;
    std::unordered_multimap<uint64_t, size_t> windows;
    for (size_t s = 0; s < secrets.size(); ++s) {
        const Bytes& secret = secrets[s];
        if (secret.size() < kWindow) continue;
        for (size_t i = 0; i + kWindow <= secret.size(); ++i) {
            windows.emplace(load_u64_be(secret.data() + i), s);
        }
    }

    std::vector<ScanFinding> findings;
    if (haystack.size() < kWindow || windows.empty()) return findings;
    for (size_t i = 0; i + kWindow <= haystack.size(); ++i) {
        auto [lo, hi] = windows.equal_range(load_u64_be(haystack.data() + i));
        for (auto it = lo; it != hi; ++it) findings.push_back({i, it->second});
    }
    return findings;
}

}  // namespace ppsnd
