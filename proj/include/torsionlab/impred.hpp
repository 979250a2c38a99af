#pragma once

// Staged construction of an r.e. set A together with a total map psi such
// that every machine chi guesses membership of psi(p) correctly for some p
// per stage in which it is considered, plus the combinators that move such a
// psi along rate changes and reductions.
//
// Stage t (with m positions already determined) considers chi_t and every
// m-bit word w_i (binary of i, most significant bit first). It picks the 2^m
// least fresh p with phi(p) >= m, sets [m, M] out of A for M = max phi(p_i),
// assigns psi(p_i) = M + 1 + i with the rule
//   psi(p_i) in A  iff  chi_t(p_i, w_i 0^(phi(p_i) - m)) halts,
// and moves on with m = M + 2^m + 1.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "torsionlab/machine.hpp"
#include "torsionlab/rate.hpp"
#include "torsionlab/subshift.hpp"
#include "torsionlab/words.hpp"

namespace torsionlab {

struct SkeletonBudget {
    std::uint64_t max_words = 1u << 16;    // 2^m per stage
    std::uint64_t max_length = 1u << 26;   // determined positions and padded oracle lengths
    std::uint64_t max_search = 1u << 24;   // candidates tried when looking for p with phi(p) >= m
};

struct StageRule {
    std::uint64_t word = 0;           // i, so w_i = binary(i) on m bits
    std::uint64_t p = 0;
    std::uint64_t position = 0;       // psi(p)
    std::uint64_t oracle_length = 0;  // phi(p)
};

struct Stage {
    std::uint64_t index = 0;  // t, also the machine index of chi_t
    std::uint64_t m = 0;
    std::uint64_t max_phi = 0;  // M
    std::uint64_t last = 0;     // M' = M + 2^m
    std::vector<StageRule> rules;

    std::string word(const StageRule& r) const;
    /// w_i followed by zeros up to phi(p_i).
    OraclePrefix padded_prefix(const StageRule& r) const;
};

class Skeleton {
public:
    Skeleton(RateFunction phi, std::vector<Stage> stages);

    const RateFunction& rate() const { return phi_; }
    const std::vector<Stage>& stages() const { return stages_; }
    /// Number of determined positions, M' of the last stage + 1.
    std::uint64_t length() const;
    std::optional<std::uint64_t> assigned(std::uint64_t p) const;
    /// Assigned psi(p), or default_nonmember() for every other p.
    std::uint64_t psi(std::uint64_t p) const;
    /// Position 0, which stage 0 determines out of A.
    std::uint64_t default_nonmember() const { return 0; }

    /// Line records; equal skeletons serialize identically.
    std::string serialize() const;

private:
    RateFunction phi_;
    std::vector<Stage> stages_;
    std::map<std::uint64_t, std::uint64_t> psi_;
};

/// Throws CapacityError (attained = completed stages) when a stage would
/// exceed the budget.
Skeleton build_skeleton(const RateFunction& phi, std::uint64_t stages, const SkeletonBudget& budget = {});

std::uint64_t psi(const RateFunction& phi, std::uint64_t p, std::uint64_t stages);

/// Characteristic prefix of A as far as rule programs halt within step_cap.
OraclePrefix approx_A(const Skeleton& sk, const MachineEnumeration& machines, std::uint64_t step_cap);
OraclePrefix approx_A(const RateFunction& phi, std::uint64_t stages, const MachineEnumeration& machines,
                      std::uint64_t step_cap);

// ---------------------------------------------------------------- handles

using ManyOneFn = std::function<BigNat(const BigNat&)>;

/// psi together with the rate it is claimed for and any maps composed after it.
struct PsiHandle {
    std::shared_ptr<const Skeleton> skeleton;
    RateFunction rate;
    ManyOneFn post;
    std::string description;

    BigNat operator()(std::uint64_t p) const;
};

PsiHandle make_psi_handle(std::shared_ptr<const Skeleton> sk);

/// Same psi, claimed for the smaller rate phi <= phi' (checked on [0, range]).
PsiHandle restrict_rate(const PsiHandle& h, const RateFunction& phi_prime, const RateFunction& phi,
                        std::uint64_t range);

struct ManyOneMap {
    std::string name;
    ManyOneFn f;
};

/// Prefix translation g with |g(w)| >= beta(|w|).
struct WttReducer {
    std::string name;
    std::function<OraclePrefix(const OraclePrefix&)> g;
    RateFunction beta;
};

/// psi' = f o psi at rate beta o phi. g is probed on `probes` (RateViolation
/// if an output is short); a beta that is constant on [0, range] is rejected.
PsiHandle transport_impredictability(const ManyOneMap& f, const WttReducer& g, const PsiHandle& h,
                                     std::span<const OraclePrefix> probes, std::uint64_t range);

// ---------------------------------------------------------------- witness search

struct Witness {
    std::uint64_t p = 0;
    BigNat position;
    bool member = false;    // position in the set (= chi halted)
    bool assigned = false;  // p was assigned by some stage
};

struct WitnessEntry {
    std::string program;
    std::uint64_t tested = 0;
    std::uint64_t undecided = 0;  // psi(p) beyond the set prefix
    bool tainted = false;         // some run read past its oracle
    std::vector<Witness> witnesses;

    std::size_t member_count() const;
    std::size_t assigned_nonmember_count() const;
};

struct WitnessReport {
    std::uint64_t step_cap = 0;
    std::vector<WitnessEntry> entries;
};

/// For each chi and p <= max_p: p is a witness when (psi(p) in set) equals
/// (chi halts on p with oracle set_prefix restricted to rate(p)).
WitnessReport check_witnesses(const PsiHandle& h, const OraclePrefix& set_prefix, const std::vector<ToyProgram>& roster,
                              std::uint64_t step_cap, std::uint64_t max_p);

/// Builds the skeleton with the roster cycled as the machine list, then runs
/// check_witnesses against approx_A.
WitnessReport check_impredictability(const RateFunction& phi, const std::vector<ToyProgram>& roster,
                                     std::uint64_t stages, std::uint64_t step_cap, std::uint64_t max_p);

}  // namespace torsionlab
