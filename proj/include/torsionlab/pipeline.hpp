#pragma once

// Moving an impredictable set A onto the word problem of K(G,A,H): the
// embedding n -> index of embed_element(n) as the many-one map, and the
// conjunctive reduction as the prefix translation.

#include <cstdint>
#include <optional>
#include <vector>

#include "torsionlab/impred.hpp"
#include "torsionlab/kgroup.hpp"

namespace torsionlab {

/// n -> many_one_index(n); 0 (never in A) goes to index 1, a shift, never in WP(K).
ManyOneMap wp_many_one(const GroupCtx& g, const GroupCtx& h);
/// conj_reduction at rate conj_rate.
WttReducer wp_reducer(const GroupCtx& g, const GroupCtx& h);

struct TransportedWitness {
    std::uint64_t p = 0;
    std::uint64_t position = 0;    // psi(p)
    BigNat word_index;             // psi'(p)
    bool set_bit = false;          // psi(p) in A
    std::optional<bool> wp_bit;    // psi'(p) in WP(K), from the queried distances only
};

/// For each p: the bit of the translated prefix at psi'(p), computed via
/// conj_bit against `a`, next to the bit of `a` at psi(p).
std::vector<TransportedWitness> transport_witnesses(const GroupCtx& g, const GroupCtx& h, const PsiHandle& psi_handle,
                                                    const PsiHandle& transported, const OraclePrefix& a,
                                                    const std::vector<std::uint64_t>& ps);

}  // namespace torsionlab
