#include "torsionlab/machine.hpp"

#include <cmath>
#include <sstream>

#include "torsionlab/errors.hpp"

namespace torsionlab {

namespace {

constexpr std::uint64_t kMaxLength = 8;
constexpr std::uint32_t kCodedRegisters = 4;

std::uint32_t parse_number(const std::string& tok, std::size_t line) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("line " + std::to_string(line) + ": expected a number, got '" + tok + "'");
    return static_cast<std::uint32_t>(std::stoul(tok));
}

}  // namespace

ToyProgram ToyProgram::parse(std::string_view text) {
    ToyProgram prog;
    std::string src(text);
    for (char& c : src)
        if (c == ';') c = '\n';
    std::istringstream in(src);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream words(line);
        std::vector<std::string> tok;
        for (std::string w; words >> w;) tok.push_back(w);
        if (tok.empty()) continue;
        for (char& c : tok[0]) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        Instruction ins;
        auto want = [&](std::size_t n) {
            if (tok.size() != n)
                throw ParseError("line " + std::to_string(lineno) + ": " + tok[0] + " takes " + std::to_string(n - 1) +
                                 " operand(s)");
        };
        if (tok[0] == "INC") {
            want(2);
            ins = {Instruction::Op::Inc, parse_number(tok[1], lineno), 0};
        } else if (tok[0] == "DECJZ") {
            want(3);
            ins = {Instruction::Op::DecJz, parse_number(tok[1], lineno), parse_number(tok[2], lineno)};
        } else if (tok[0] == "ORACLE") {
            want(2);
            ins = {Instruction::Op::Oracle, parse_number(tok[1], lineno), 0};
        } else if (tok[0] == "HALT") {
            want(1);
            ins = {Instruction::Op::Halt, 0, 0};
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown instruction '" + tok[0] + "'");
        }
        prog.code.push_back(ins);
    }
    for (const auto& ins : prog.code)
        if (ins.op == Instruction::Op::DecJz && ins.label >= prog.code.size())
            throw ParseError("jump label " + std::to_string(ins.label) + " out of range");
    return prog;
}

std::string ToyProgram::format() const {
    std::string out;
    for (const auto& ins : code) {
        switch (ins.op) {
            case Instruction::Op::Inc: out += "INC " + std::to_string(ins.reg); break;
            case Instruction::Op::DecJz: out += "DECJZ " + std::to_string(ins.reg) + " " + std::to_string(ins.label); break;
            case Instruction::Op::Oracle: out += "ORACLE " + std::to_string(ins.reg); break;
            case Instruction::Op::Halt: out += "HALT"; break;
        }
        out += '\n';
    }
    return out;
}

std::string ToyProgram::format_inline() const {
    std::string s = format();
    if (!s.empty()) s.pop_back();
    for (std::size_t pos; (pos = s.find('\n')) != std::string::npos;) s.replace(pos, 1, "; ");
    return s;
}

std::uint32_t ToyProgram::registers() const {
    std::uint32_t k = 1;
    for (const auto& ins : code)
        if (ins.op != Instruction::Op::Halt) k = std::max(k, ins.reg + 1);
    return k;
}

ToyProgram ToyProgram::halt() { return parse("HALT"); }
ToyProgram ToyProgram::loop() { return parse("DECJZ 0 0"); }
ToyProgram ToyProgram::oracle_echo() { return parse("ORACLE 1\nDECJZ 1 3\nHALT\nDECJZ 2 3"); }

RunResult run_program(const ToyProgram& prog, std::uint64_t input, const OraclePrefix& oracle, std::uint64_t step_cap) {
    RunResult r;
    std::vector<std::uint64_t> reg(prog.registers(), 0);
    reg[0] = input;
    std::size_t pc = 0;
    while (r.steps < step_cap) {
        if (pc >= prog.code.size()) {
            // fell off the end: no HALT will ever execute
            return r;
        }
        const Instruction& ins = prog.code[pc];
        ++r.steps;
        switch (ins.op) {
            case Instruction::Op::Inc:
                ++reg[ins.reg];
                ++pc;
                break;
            case Instruction::Op::DecJz:
                if (reg[ins.reg] == 0) {
                    pc = ins.label;
                } else {
                    --reg[ins.reg];
                    ++pc;
                }
                break;
            case Instruction::Op::Oracle:
                if (reg[0] < oracle.size()) {
                    reg[ins.reg] = oracle.bit(reg[0]) ? 1 : 0;
                } else {
                    reg[ins.reg] = 0;
                    r.tainted = true;
                }
                ++pc;
                break;
            case Instruction::Op::Halt:
                r.status = RunResult::Status::Halted;
                return r;
        }
    }
    return r;
}

// ---------------------------------------------------------------- enumeration

MachineEnumeration MachineEnumeration::cantor() { return {}; }

MachineEnumeration MachineEnumeration::roster(std::vector<ToyProgram> programs) {
    if (programs.empty()) throw DomainError("roster enumeration needs at least one program");
    MachineEnumeration e;
    e.roster_ = std::move(programs);
    return e;
}

std::string MachineEnumeration::name() const {
    return is_roster() ? "roster(" + std::to_string(roster_.size()) + ")" : "cantor";
}

ToyProgram MachineEnumeration::program(std::uint64_t n) const {
    if (is_roster()) return roster_[n % roster_.size()];
    return decode(unpair(n).first);
}

std::pair<std::uint64_t, std::uint64_t> MachineEnumeration::unpair(std::uint64_t n) {
    auto w = static_cast<std::uint64_t>((std::sqrt(8.0L * static_cast<long double>(n) + 1) - 1) / 2);
    auto tri = [](std::uint64_t x) { return x * (x + 1) / 2; };
    while (tri(w) > n) --w;
    while (tri(w + 1) <= n) ++w;
    const std::uint64_t j = n - tri(w);
    return {w - j, j};
}

std::uint64_t MachineEnumeration::pair(std::uint64_t i, std::uint64_t j) {
    const std::uint64_t w = i + j;
    return w * (w + 1) / 2 + j;
}

// Mixed radix: length L = i % 8 + 1, then per instruction an opcode digit
// (base 4), a register digit (base 4, except HALT) and for DECJZ a label
// digit (base L).
ToyProgram MachineEnumeration::decode(std::uint64_t i) {
    const std::uint64_t len = i % kMaxLength + 1;
    std::uint64_t rest = i / kMaxLength;
    ToyProgram prog;
    for (std::uint64_t k = 0; k < len; ++k) {
        Instruction ins;
        ins.op = static_cast<Instruction::Op>(rest % 4);
        rest /= 4;
        if (ins.op != Instruction::Op::Halt) {
            ins.reg = static_cast<std::uint32_t>(rest % kCodedRegisters);
            rest /= kCodedRegisters;
        }
        if (ins.op == Instruction::Op::DecJz) {
            ins.label = static_cast<std::uint32_t>(rest % len);
            rest /= len;
        }
        prog.code.push_back(ins);
    }
    if (rest != 0) return ToyProgram::loop();
    return prog;
}

std::optional<std::uint64_t> MachineEnumeration::encode(const ToyProgram& prog) {
    const std::uint64_t len = prog.code.size();
    if (len == 0 || len > kMaxLength) return std::nullopt;
    // digits are read least significant first, so build from the last one
    unsigned __int128 value = 0;
    for (std::size_t k = prog.code.size(); k-- > 0;) {
        const auto& ins = prog.code[k];
        if (ins.op != Instruction::Op::Halt && ins.reg >= kCodedRegisters) return std::nullopt;
        if (ins.op == Instruction::Op::DecJz) value = value * len + ins.label;
        if (ins.op != Instruction::Op::Halt) value = value * kCodedRegisters + ins.reg;
        value = value * 4 + static_cast<unsigned>(ins.op);
    }
    value = value * kMaxLength + (len - 1);
    if (value > UINT64_MAX) return std::nullopt;
    return static_cast<std::uint64_t>(value);
}

}  // namespace torsionlab
