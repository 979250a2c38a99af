#include "torsionlab/pipeline.hpp"

namespace torsionlab {

ManyOneMap wp_many_one(const GroupCtx& g, const GroupCtx& h) {
    return {"embed", [g, h](const BigNat& n) -> BigNat {
                if (n == 0) return 1;
                return many_one_index(g, h, static_cast<std::uint64_t>(n));
            }};
}

WttReducer wp_reducer(const GroupCtx& g, const GroupCtx& h) {
    return {"conj_reduction", [g, h](const OraclePrefix& u) { return conj_reduction(g, h, u); },
            RateFunction("conj_rate", [g, h](std::uint64_t m) { return conj_rate(g, h, m); })};
}

std::vector<TransportedWitness> transport_witnesses(const GroupCtx& g, const GroupCtx& h, const PsiHandle& psi_handle,
                                                    const PsiHandle& transported, const OraclePrefix& a,
                                                    const std::vector<std::uint64_t>& ps) {
    std::vector<TransportedWitness> out;
    for (auto p : ps) {
        TransportedWitness w;
        w.p = p;
        w.position = static_cast<std::uint64_t>(psi_handle(p));
        w.word_index = transported(p);
        w.set_bit = w.position < a.size() && a.bit(w.position);
        w.wp_bit = conj_bit(g, h, w.word_index, a);
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace torsionlab
