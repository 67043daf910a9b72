#include "ppsnd/pseudonym.hpp"

namespace ppsnd {

namespace {

Digest pnym_digest(const Bytes& signing_input) {
    Bytes input;
    append(input, std::string("pnym-v1"));
    append(input, signing_input);
    return sha256(input);
}

}  // namespace

std::string pid_hex(Pid pid) { return to_hex(u64_be(pid)); }

Bytes Pseudonym::signing_input() const {
    Bytes out;
    if (provider_id.size() != 8) throw DomainError("pseudonym: provider_id must be 8 bytes");
    append(out, provider_id);
    put_u64_be(out, uint64_t(valid_from));
    put_u64_be(out, uint64_t(valid_to));
    put_var(out, mpz_to_bytes(ppk.n()));
    put_var(out, sig_pk.serialize());
    return out;
}

Bytes Pseudonym::serialize() const {
    Bytes out = signing_input();
    put_var(out, provider_sig);
    return out;
}

Pseudonym Pseudonym::read_from(ByteReader& reader) {
    Pseudonym p;
    p.provider_id = reader.raw(8);
    p.valid_from = SimTime(reader.u64());
    p.valid_to = SimTime(reader.u64());
    p.ppk = PaillierPublicKey(mpz_from_bytes(reader.var()));
    p.sig_pk = EcdsaPublicKey::deserialize(reader.var());
    p.provider_sig = reader.var();
    return p;
}

Pseudonym Pseudonym::deserialize(const Bytes& bytes) {
    ByteReader reader(bytes);
    Pseudonym p = read_from(reader);
    reader.expect_done();
    return p;
}

Pid Pseudonym::pid() const { return sha256_prefix64(serialize()); }

bool verify_pnym(const Pseudonym& pnym, const SchnorrPublicKey& pca_anchor, SimTime now) {
    if (pnym.valid_from >= pnym.valid_to) return false;
    if (now < pnym.valid_from || now >= pnym.valid_to) return false;
    const SchnorrGroup& group = SchnorrGroup::for_bits(pca_anchor.group_bits);
    try {
        return schnorr_verify(group, pca_anchor, pnym_digest(pnym.signing_input()), pnym.provider_sig);
    } catch (const DomainError&) {
        return false;
    }
}

Bytes AnonymousToken::serialize() const {
    Bytes out;
    put_var(out, nonce);
    put_var(out, issuer_sig);
    return out;
}

const WalletEntry& PseudonymWallet::current(SimTime now) const {
    for (const WalletEntry& entry : entries)
        if (now >= entry.pnym.valid_from && now < entry.pnym.valid_to) return entry;
    throw DomainError("wallet exhausted: no pseudonym valid now");
}

SimTime PseudonymWallet::span_from() const {
    if (entries.empty()) throw DomainError("wallet empty");
    return entries.front().pnym.valid_from;
}

SimTime PseudonymWallet::span_to() const {
    if (entries.empty()) throw DomainError("wallet empty");
    return entries.back().pnym.valid_to;
}

KeyMaterial KeyMaterial::generate(size_t count, unsigned paillier_bits, DeterministicRng& rng) {
    KeyMaterial material;
    material.entries.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        DeterministicRng entry_rng = rng.fork("key-material-" + std::to_string(i));
        Entry entry{EcdsaKeyPair::generate(entry_rng), PaillierKeyPair::generate(paillier_bits, entry_rng)};
        material.entries.push_back(std::move(entry));
    }
    return material;
}

Digest ltc_digest(const std::string& identity, const EcdsaPublicKey& pk) {
    Bytes input;
    append(input, std::string("ltc-v1"));
    append(input, identity);
    append(input, pk.serialize());
    return sha256(input);
}

Digest token_digest(const Bytes& nonce) {
    Bytes input;
    append(input, std::string("token-v1"));
    append(input, nonce);
    return sha256(input);
}

Ltca::Ltca(DeterministicRng rng) : rng_(std::move(rng)), keys_(EcdsaKeyPair::generate(rng_)) {}

LongTermCredential Ltca::issue_ltc(const std::string& identity) {
    if (!registered_.insert(identity).second) throw DomainError("ltca: identity already registered");
    LongTermCredential ltc;
    ltc.identity = identity;
    ltc.keys = EcdsaKeyPair::generate(rng_);
    ltc.issuer_sig = ecdsa_sign(keys_.sk, ltc_digest(identity, ltc.keys.pk));
    return ltc;
}

bool Ltca::verify_ltc(const LongTermCredential& ltc) const {
    return ecdsa_verify(keys_.pk, ltc_digest(ltc.identity, ltc.keys.pk), ltc.issuer_sig);
}

AnonymousToken Ltca::request_token(const LongTermCredential& ltc) {
    if (!verify_ltc(ltc)) throw DomainError("ltca: invalid credential");
    // Only the count is recorded; the token itself is fresh randomness.
    ++tokens_issued_;
    AnonymousToken token;
    token.nonce = rng_.bytes(32);
    token.issuer_sig = ecdsa_sign(keys_.sk, token_digest(token.nonce));
    return token;
}

Pca::Pca(const SchnorrGroup& group, DeterministicRng rng)
    : group_(group), keys_(SchnorrKeyPair::generate(group, rng)) {
    Bytes input;
    append(input, std::string("pca-id"));
    append(input, keys_.pk.serialize());
    Digest digest = sha256(input);
    provider_id_.assign(digest.begin(), digest.begin() + 8);
}

PseudonymWallet Pca::issue_batch(const AnonymousToken& token, const EcdsaPublicKey& ltca_anchor, size_t k,
                                 SimTime tau, SimTime start, const KeyMaterial& material) {
    if (k < 1) throw ConfigError("pca: batch size must be at least 1");
    if (tau <= 0) throw ConfigError("pca: lifetime must be positive");
    if (material.entries.size() != k) throw ConfigError("pca: key material count mismatch");
    if (!ecdsa_verify(ltca_anchor, token_digest(token.nonce), token.issuer_sig))
        throw DomainError("pca: token not issued by the trusted registry");
    if (!used_tokens_.insert(token.nonce).second) throw DomainError("pca: token already spent");

    PseudonymWallet wallet;
    wallet.entries.reserve(k);
    for (size_t i = 0; i < k; ++i) {
        WalletEntry entry;
        entry.pnym.provider_id = provider_id_;
        entry.pnym.valid_from = start + SimTime(i) * tau;
        entry.pnym.valid_to = start + SimTime(i + 1) * tau;
        entry.pnym.ppk = material.entries[i].paillier.pub;
        entry.pnym.sig_pk = material.entries[i].sig.pk;
        entry.pnym.provider_sig = schnorr_sign(group_, keys_.sk, pnym_digest(entry.pnym.signing_input()));
        entry.sig_sk = material.entries[i].sig.sk;
        entry.paillier = material.entries[i].paillier;
        entry.pid = entry.pnym.pid();
        wallet.entries.push_back(std::move(entry));
    }
    return wallet;
}

Bytes Pca::stored_state_bytes() const {
    Bytes out;
    for (const Bytes& nonce : used_tokens_) append(out, nonce);
    return out;
}

}  // namespace ppsnd
