#pragma once

// The group K(G,A,H) generated by shifts S:g and conditional multipliers
// M:h:b acting on X_A x H, and the reductions between its word problem and A.
//
// Words act right to left: the rightmost letter is applied first. S:g shifts
// the window (x -> g.x with (g.x)_k = x_{g^-1 k}); M:h:b left-multiplies the
// H-coordinate by h exactly when the cell at the origin holds b.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "torsionlab/group.hpp"
#include "torsionlab/subshift.hpp"

namespace torsionlab {

struct KGenerator {
    enum class Kind : std::uint8_t { Shift, Mult };
    Kind kind = Kind::Shift;
    std::uint32_t gen = 0;  // G generator for Shift, H generator for Mult
    std::uint8_t bit = 0;   // Mult only

    static KGenerator shift(std::uint32_t g) { return {Kind::Shift, g, 0}; }
    static KGenerator mult(std::uint32_t h, std::uint8_t b) { return {Kind::Mult, h, b}; }
    friend bool operator==(const KGenerator&, const KGenerator&) = default;
};

struct KWord {
    std::vector<KGenerator> letters;

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    friend bool operator==(const KWord&, const KWord&) = default;
};

/// G, H and a prefix of the characteristic sequence of A.
struct KContext {
    GroupCtx g;
    GroupCtx h;
    OraclePrefix oracle;

    KContext(GroupCtx g_ctx, GroupCtx h_ctx, OraclePrefix prefix = {})
        : g(std::move(g_ctx)), h(std::move(h_ctx)), oracle(std::move(prefix)) {}
    KContext with_oracle(OraclePrefix prefix) const { return KContext(g, h, std::move(prefix)); }
};

// ---------------------------------------------------------------- alphabet

/// K generators in fixed order: S:g for each G generator, then M:h:0, M:h:1
/// for each H generator.
std::uint32_t k_alphabet_size(const GroupCtx& g, const GroupCtx& h);
std::uint32_t k_symbol(const GroupCtx& g, const KGenerator& x);
KGenerator k_generator(const GroupCtx& g, const GroupCtx& h, std::uint32_t symbol);

KWord k_inverse(const GroupCtx& g, const GroupCtx& h, const KWord& w);
KWord k_concat(const KWord& a, const KWord& b);
KWord k_power(const KWord& w, std::uint64_t k);

/// Tokens "S:g" and "M:h:b" separated by spaces.
std::string format_kword(const GroupCtx& g, const GroupCtx& h, const KWord& w);
KWord parse_kword(const GroupCtx& g, const GroupCtx& h, std::string_view tokens);
/// "kword G=<id> H=<id> | <tokens>"
std::string format_kword_record(const GroupCtx& g, const GroupCtx& h, const KWord& w);
struct KWordRecord {
    GroupCtx g;
    GroupCtx h;
    KWord word;
};
KWordRecord parse_kword_record(std::string_view text);

KWord k_enumerate(const GroupCtx& g, const GroupCtx& h, const BigNat& index);
BigNat k_index(const GroupCtx& g, const GroupCtx& h, const KWord& w);

// ---------------------------------------------------------------- structure

/// The natural epimorphism K -> G: erase multipliers, keep shifts.
GeneratorWord gamma(const KWord& w);
/// g -> S:g, a section of gamma.
KWord section(const GeneratorWord& v);

/// Applies w to (P, h). Reads outside P's domain leave H unchanged. The
/// returned window is P translated by gamma(w).
std::pair<Pattern, GroupElement> act(const KContext& ctx, const KWord& w, const Pattern& p, const GroupElement& h);

/// Cells a word reads, relative to the origin at the start of the action.
struct ReadSites {
    std::vector<GroupElement> positions;  // distinct, in first-read order
    struct Site {
        std::size_t position;
        std::uint32_t h_gen;
        std::uint8_t bit;
    };
    std::vector<Site> sites;  // word order (leftmost first)
};
ReadSites read_sites(const GroupCtx& g, const KWord& w);

// ---------------------------------------------------------------- word problem

struct WpResult {
    enum class Status { Identity, NonIdentity, NeedsOracle };
    Status status = Status::Identity;
    std::uint64_t needed = 0;                   // NeedsOracle: required prefix length
    std::optional<GroupElement> gamma_image;    // NonIdentity because gamma(w) != e
    std::optional<Pattern> witness;             // NonIdentity on a legal window
    std::optional<GroupElement> h_witness;      // image of e_H on that window
};

/// Decides w = e in K(G,A,H) from the oracle prefix. Needs |prefix| >= 2|w|+1.
WpResult wp_K(const KContext& ctx, const KWord& w);

/// g'_n = [h'_1, h_1^{g_n}] with g_n the first shortlex word of norm n.
KWord embed_element(const GroupCtx& g, const GroupCtx& h, std::uint64_t n);
/// Designated noncommuting H generators (h, h'); throws DomainError if none.
std::pair<std::uint32_t, std::uint32_t> noncommuting_pair(const GroupCtx& h);
BigNat many_one_index(const GroupCtx& g, const GroupCtx& h, std::uint64_t n);

// ---------------------------------------------------------------- conjunctive reduction

/// Number of K-words decidable from an A-prefix of length m: all words of
/// length <= floor((m-1)/2).
std::uint64_t conj_rate(const GroupCtx& g, const GroupCtx& h, std::uint64_t m);

struct ConjWitness {
    bool always_zero = false;
    std::set<std::uint64_t> bad_distances;  // all must lie in A for the bit to be 1
    friend bool operator==(const ConjWitness&, const ConjWitness&) = default;
};

ConjWitness conj_witness_of(const GroupCtx& g, const GroupCtx& h, const KWord& w);
/// Query for the i-th K-word; requires that word to be decidable at length m.
ConjWitness conj_witness(const GroupCtx& g, const GroupCtx& h, const BigNat& i, std::uint64_t m);
/// The reduced prefix g(u) of WP(K), of length conj_rate(|u|).
OraclePrefix conj_reduction(const GroupCtx& g, const GroupCtx& h, const OraclePrefix& u);
/// Single bit i of the reduction evaluated against A's prefix; nullopt when a
/// queried distance lies beyond the prefix.
std::optional<bool> conj_bit(const GroupCtx& g, const GroupCtx& h, const BigNat& i, const OraclePrefix& a);

// ---------------------------------------------------------------- torsion and quotients

/// Order of w in K: k * l with k = ord(gamma(w)) and l the lcm of the orders
/// of the multipliers w^k applies on legal windows of radius k|w|.
/// Throws OracleShortage / CapExceeded.
std::uint64_t order_K(const KContext& ctx, const KWord& w, std::uint64_t cap);

/// False exactly when w is trivial under the smaller set A' but not under A.
bool quotient_check(const KContext& smaller, const KContext& larger, const KWord& w);

}  // namespace torsionlab
