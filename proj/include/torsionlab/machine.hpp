#pragma once

// Counter machines with a fixed-prefix oracle, and an infinite-to-one
// enumeration of them.
//
// Instructions: INC r | DECJZ r l (jump to l if r = 0, else decrement and
// fall through) | ORACLE r (r := oracle bit at address r0) | HALT.
// Input goes in r0, every other register starts at 0, execution starts at
// instruction 0 and each executed instruction is one step. Running past the
// last instruction never halts.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torsionlab/subshift.hpp"

namespace torsionlab {

struct Instruction {
    enum class Op : std::uint8_t { Inc, DecJz, Oracle, Halt };
    Op op = Op::Halt;
    std::uint32_t reg = 0;
    std::uint32_t label = 0;  // DecJz only
    friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct ToyProgram {
    std::vector<Instruction> code;

    /// Lines (or ';'-separated statements) like "INC 0", "DECJZ 1 4",
    /// "ORACLE 2", "HALT". Blank lines and '#' comments are ignored.
    static ToyProgram parse(std::string_view text);
    /// One instruction per line.
    std::string format() const;
    /// Same as format() but ';'-separated on one line.
    std::string format_inline() const;
    /// 1 + the largest register mentioned (at least 1, for r0).
    std::uint32_t registers() const;

    static ToyProgram halt();
    static ToyProgram loop();
    /// Halts iff the oracle bit at the input position is 1.
    static ToyProgram oracle_echo();

    friend bool operator==(const ToyProgram&, const ToyProgram&) = default;
};

struct RunResult {
    enum class Status { Halted, Running };
    Status status = Status::Running;
    std::uint64_t steps = 0;
    /// An ORACLE read fell outside the supplied prefix (and returned 0).
    bool tainted = false;

    bool halted() const { return status == Status::Halted; }
};

RunResult run_program(const ToyProgram& prog, std::uint64_t input, const OraclePrefix& oracle, std::uint64_t step_cap);

/// Index n -> program. Cantor mode unpairs n = <i, j> and decodes i, so every
/// decodable program recurs for every j; Roster mode cycles a fixed list.
class MachineEnumeration {
public:
    static MachineEnumeration cantor();
    static MachineEnumeration roster(std::vector<ToyProgram> programs);

    ToyProgram program(std::uint64_t n) const;
    bool is_roster() const { return !roster_.empty(); }
    const std::vector<ToyProgram>& roster_programs() const { return roster_; }
    std::string name() const;

    /// Program with code number i; undecodable numbers give loop().
    static ToyProgram decode(std::uint64_t i);
    /// Code number of a program when it is in the decodable range.
    static std::optional<std::uint64_t> encode(const ToyProgram& prog);

    static std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t n);
    static std::uint64_t pair(std::uint64_t i, std::uint64_t j);

private:
    std::vector<ToyProgram> roster_;
};

}  // namespace torsionlab
