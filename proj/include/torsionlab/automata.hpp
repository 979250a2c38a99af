#pragma once

// k-headed group-walking automata on G x Z, in head-local normal form: every
// head reads the symbols within radius r of itself and the heads near it,
// then moves by one generator (or stays) and changes state. The symbol layer
// never changes and heads never appear or vanish.
//
// Positions are pairs (freely reduced G-word, z). All G equalities go through
// a GroupOracle, so a run can be driven either by groups-core directly or by
// a finite prefix of the linearized word problem of G.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torsionlab/group.hpp"
#include "torsionlab/impred.hpp"
#include "torsionlab/subshift.hpp"

namespace torsionlab {

/// Offset in G x Z relative to a head: the head at (u, z) refers to (u g, z + dz).
struct Offset {
    GeneratorWord g;
    std::int64_t dz = 0;
    friend bool operator==(const Offset&, const Offset&) = default;
};

struct Move {
    enum class Kind { Stay, Gen, ZPlus, ZMinus };
    Kind kind = Kind::Stay;
    std::uint32_t gen = 0;
    friend bool operator==(const Move&, const Move&) = default;
};

/// One table entry; unset fields match anything. Entries are tried in order.
struct RuleEntry {
    std::optional<std::uint32_t> head;
    std::optional<std::uint32_t> state;
    struct Cell {
        Offset at;
        std::uint8_t bit = 0;
    };
    std::vector<Cell> patch;
    struct Near {
        Offset at;
        std::optional<std::uint32_t> state;
    };
    std::vector<Near> near;        // some other head sits there (in that state)
    std::optional<bool> alone;     // no other head within the radius
    Move move;
    std::uint32_t next = 0;
};

/// Head placements relative to an anchor: the start cell for I, head 0 for F.
struct Arrangement {
    struct Slot {
        std::uint32_t head = 0;
        std::optional<Offset> at;  // omitted: anywhere (F only)
        std::uint32_t state = 0;
    };
    std::vector<Slot> slots;
};

struct AutomatonSpec {
    GroupCtx g = GroupCtx::integers();
    std::uint32_t heads = 1;
    std::vector<std::vector<std::uint32_t>> states;  // Q_i, per head, never containing 0
    std::uint32_t radius = 1;
    std::vector<RuleEntry> rules;
    std::vector<Arrangement> initial;
    std::vector<Arrangement> reject;
};

/// JSON text; see the README for the layout. Throws ParseError / SpecError.
AutomatonSpec parse_automaton(std::string_view json_text);
std::string format_automaton(const AutomatonSpec& spec);

/// 1-head automaton rejecting when its cell and the cell one step up in Z both hold 1.
AutomatonSpec eleven_detector(const GroupCtx& g);
/// The same detector with two extra idle heads placed on the start cell; F
/// also asks head 1 to sit on head 0's cell.
AutomatonSpec eleven_detector_3(const GroupCtx& g);

// ---------------------------------------------------------------- configurations

class GroupOracle {
public:
    virtual ~GroupOracle() = default;
    virtual const GroupCtx& ctx() const = 0;
    /// Whether the word evaluates to e_G.
    virtual bool is_identity(const GeneratorWord& w) const = 0;
    bool equal(const GeneratorWord& u, const GeneratorWord& v) const;
    std::uint64_t queries() const { return queries_; }

protected:
    mutable std::uint64_t queries_ = 0;
};

class DirectOracle final : public GroupOracle {
public:
    explicit DirectOracle(GroupCtx ctx) : ctx_(std::move(ctx)) {}
    const GroupCtx& ctx() const override { return ctx_; }
    bool is_identity(const GeneratorWord& w) const override;

private:
    GroupCtx ctx_;
};

/// Answers from a prefix of WP(G); throws OracleExhausted past its end.
class PrefixOracle final : public GroupOracle {
public:
    PrefixOracle(GroupCtx ctx, OraclePrefix prefix) : ctx_(std::move(ctx)), prefix_(std::move(prefix)) {}
    const GroupCtx& ctx() const override { return ctx_; }
    bool is_identity(const GeneratorWord& w) const override;

private:
    GroupCtx ctx_;
    OraclePrefix prefix_;
};

struct Cell {
    GeneratorWord g;
    std::int64_t z = 0;
};

class Configuration {
public:
    static Configuration periodic(std::uint64_t p);
    static Configuration finite(std::vector<Cell> ones);

    bool is_periodic() const { return period_ != 0; }
    std::uint64_t period() const { return period_; }
    const std::vector<Cell>& ones() const { return ones_; }
    std::uint8_t at(const GroupOracle& o, const GeneratorWord& g, std::int64_t z) const;

private:
    std::uint64_t period_ = 0;
    std::vector<Cell> ones_;
};

Configuration make_xp(std::uint64_t p);

// ---------------------------------------------------------------- runs

struct HeadState {
    GeneratorWord g;  // freely reduced
    std::int64_t z = 0;
    std::uint32_t state = 0;
    friend bool operator==(const HeadState&, const HeadState&) = default;
};

struct RunState {
    std::vector<HeadState> heads;
    std::uint64_t step = 0;
    friend bool operator==(const RunState&, const RunState&) = default;
};

RunState place(const AutomatonSpec& spec, const Arrangement& init, const Cell& start);
RunState step(const AutomatonSpec& spec, const Configuration& x, const RunState& rs, const GroupOracle& o);
/// Index of the first F-arrangement the heads form, if any.
std::optional<std::size_t> in_reject(const AutomatonSpec& spec, const RunState& rs, const GroupOracle& o);

struct RunOutcome {
    bool rejected = false;
    std::uint64_t step = 0;           // rejection step, or steps run
    std::size_t initial = 0;          // which I-arrangement
    std::size_t arrangement = 0;      // which F-arrangement matched
    RunState final_state;
};

/// Runs every I-arrangement placed at `start` in lockstep for `steps` steps;
/// reports the earliest rejection (least initial index on ties).
RunOutcome run(const AutomatonSpec& spec, const Configuration& x, const Cell& start, std::uint64_t steps,
               const GroupOracle& o);
RunOutcome run(const AutomatonSpec& spec, const Configuration& x, const Cell& start, std::uint64_t steps);

struct Membership {
    bool in_s = true;
    std::uint64_t phase = 0;
    std::uint64_t step = 0;
    std::size_t initial = 0;
};

/// Runs all Z-phases 0..p-1 of x^p; the reported witness is the least phase.
Membership membership_test(const AutomatonSpec& spec, std::uint64_t p, std::uint64_t step_cap, const GroupOracle& o);
Membership membership_test(const AutomatonSpec& spec, std::uint64_t p, std::uint64_t step_cap);

/// Max pairwise G-distance of the heads at steps 0..steps (first I-arrangement).
std::vector<std::uint64_t> separation_trace(const AutomatonSpec& spec, const Configuration& x, const Cell& start,
                                            std::uint64_t steps);

/// "step head g z state separation" per head and step.
std::vector<std::string> trace_records(const AutomatonSpec& spec, const Configuration& x, const Cell& start,
                                       std::uint64_t steps);

enum class Prediction { Halted, Running };

/// membership_test on x^p with G answered from a WP(G) prefix; Halted iff
/// some run rejects. Needs a 3-headed spec. Throws OracleExhausted.
Prediction predictor(const AutomatonSpec& spec, std::uint64_t p, const OraclePrefix& wp_prefix, std::uint64_t step_cap);

/// Whether the psi(p)-th length-lex word of G is the identity.
bool yB_membership(const PsiHandle& psi, std::uint64_t p, const GroupCtx& g);

}  // namespace torsionlab
