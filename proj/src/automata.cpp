#include "torsionlab/automata.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "torsionlab/errors.hpp"

namespace torsionlab {

using Json = nlohmann::ordered_json;

namespace {

GeneratorWord times(const GroupCtx& g, const GeneratorWord& u, const GeneratorWord& v) {
    return free_reduce(g, concat(u, v));
}

std::int64_t abs64(std::int64_t x) { return x < 0 ? -x : x; }

// ---------------------------------------------------------------- json

Offset offset_from(const GroupCtx& g, const Json& j) {
    Offset o;
    o.g = free_reduce(g, parse_word(g, j.value("g", std::string())));
    o.dz = j.value("dz", std::int64_t{0});
    return o;
}

void offset_to(const GroupCtx& g, const Offset& o, Json& j) {
    j["g"] = format_word(g, o.g);
    j["dz"] = o.dz;
}

Move move_from(const GroupCtx& g, const std::string& s) {
    if (s == "stay") return {Move::Kind::Stay, 0};
    if (s == "z+") return {Move::Kind::ZPlus, 0};
    if (s == "z-") return {Move::Kind::ZMinus, 0};
    return {Move::Kind::Gen, g.symbol_index(s)};
}

std::string move_to(const GroupCtx& g, const Move& m) {
    switch (m.kind) {
        case Move::Kind::Stay: return "stay";
        case Move::Kind::ZPlus: return "z+";
        case Move::Kind::ZMinus: return "z-";
        case Move::Kind::Gen: return g.generator(m.gen);
    }
    return "stay";
}

Arrangement arrangement_from(const GroupCtx& g, const Json& j) {
    Arrangement a;
    for (const auto& s : j) {
        Arrangement::Slot slot;
        slot.head = s.at("head").get<std::uint32_t>();
        slot.state = s.at("state").get<std::uint32_t>();
        if (s.contains("g") || s.contains("dz")) slot.at = offset_from(g, s);
        a.slots.push_back(std::move(slot));
    }
    return a;
}

Json arrangement_to(const GroupCtx& g, const Arrangement& a) {
    Json out = Json::array();
    for (const auto& s : a.slots) {
        Json j;
        j["head"] = s.head;
        if (s.at) offset_to(g, *s.at, j);
        j["state"] = s.state;
        out.push_back(std::move(j));
    }
    return out;
}

bool has_state(const AutomatonSpec& spec, std::uint32_t head, std::uint32_t state) {
    const auto& q = spec.states[head];
    return std::find(q.begin(), q.end(), state) != q.end();
}

void validate(const AutomatonSpec& spec) {
    if (spec.heads == 0) throw SpecError("automaton needs at least one head");
    if (spec.states.size() != spec.heads) throw SpecError("state sets must be given per head (or once for all)");
    for (const auto& q : spec.states) {
        if (q.empty()) throw SpecError("empty state set");
        if (std::find(q.begin(), q.end(), 0u) != q.end()) throw SpecError("state 0 is reserved for 'no head'");
    }
    auto within = [&](const Offset& o, const char* what) {
        if (o.g.size() + static_cast<std::uint64_t>(abs64(o.dz)) > spec.radius)
            throw SpecError(std::string(what) + " offset lies outside radius " + std::to_string(spec.radius));
    };
    for (std::size_t i = 0; i < spec.rules.size(); ++i) {
        const auto& r = spec.rules[i];
        const std::string where = "rule " + std::to_string(i);
        if (r.head && *r.head >= spec.heads) throw SpecError(where + ": head out of range");
        if (r.next == 0) throw SpecError(where + ": next state 0 would remove the head");
        for (std::uint32_t h = 0; h < spec.heads; ++h) {
            if (r.head && *r.head != h) continue;
            if (r.state && !has_state(spec, h, *r.state)) continue;
            if (!has_state(spec, h, r.next))
                throw SpecError(where + ": next state " + std::to_string(r.next) + " not in Q_" + std::to_string(h));
        }
        for (const auto& c : r.patch) within(c.at, "patch");
        for (const auto& n : r.near) within(n.at, "near");
    }
    if (spec.initial.empty()) throw SpecError("I must contain at least one arrangement");
    for (const auto& a : spec.initial) {
        std::set<std::uint32_t> seen;
        for (const auto& s : a.slots) {
            if (s.head >= spec.heads || !seen.insert(s.head).second) throw SpecError("I-arrangement repeats a head");
            if (!s.at) throw SpecError("I-arrangement slots need an offset");
            within(*s.at, "I-arrangement");
            if (!has_state(spec, s.head, s.state)) throw SpecError("I-arrangement uses a state outside Q");
        }
        if (seen.size() != spec.heads) throw SpecError("I-arrangement must place every head");
    }
    for (const auto& a : spec.reject)
        for (const auto& s : a.slots)
            if (s.head >= spec.heads) throw SpecError("F-arrangement names a missing head");
}

}  // namespace

AutomatonSpec parse_automaton(std::string_view json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("automaton spec: ") + e.what());
    }
    try {
        AutomatonSpec spec;
        spec.g = GroupCtx::parse(j.value("group", std::string("Z")));
        spec.heads = j.value("heads", 1u);
        spec.radius = j.value("radius", 1u);
        const Json& st = j.at("states");
        if (!st.empty() && st.front().is_array()) {
            spec.states = st.get<std::vector<std::vector<std::uint32_t>>>();
        } else {
            spec.states.assign(spec.heads, st.get<std::vector<std::uint32_t>>());
        }
        for (const auto& r : j.at("rules")) {
            RuleEntry e;
            if (r.contains("head")) e.head = r["head"].get<std::uint32_t>();
            if (r.contains("state")) e.state = r["state"].get<std::uint32_t>();
            for (const auto& c : r.value("patch", Json::array()))
                e.patch.push_back({offset_from(spec.g, c), c.at("bit").get<std::uint8_t>()});
            for (const auto& n : r.value("near", Json::array())) {
                RuleEntry::Near near{offset_from(spec.g, n), std::nullopt};
                if (n.contains("state")) near.state = n["state"].get<std::uint32_t>();
                e.near.push_back(std::move(near));
            }
            if (r.contains("alone")) e.alone = r["alone"].get<bool>();
            e.move = move_from(spec.g, r.value("move", std::string("stay")));
            e.next = r.at("next").get<std::uint32_t>();
            spec.rules.push_back(std::move(e));
        }
        for (const auto& a : j.at("initial")) spec.initial.push_back(arrangement_from(spec.g, a));
        for (const auto& a : j.value("reject", Json::array())) spec.reject.push_back(arrangement_from(spec.g, a));
        validate(spec);
        return spec;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("automaton spec: ") + e.what());
    }
}

std::string format_automaton(const AutomatonSpec& spec) {
    Json j;
    j["group"] = spec.g.name();
    j["heads"] = spec.heads;
    j["radius"] = spec.radius;
    j["states"] = spec.states;
    j["rules"] = Json::array();
    for (const auto& r : spec.rules) {
        Json e;
        if (r.head) e["head"] = *r.head;
        if (r.state) e["state"] = *r.state;
        if (!r.patch.empty()) {
            e["patch"] = Json::array();
            for (const auto& c : r.patch) {
                Json cj;
                offset_to(spec.g, c.at, cj);
                cj["bit"] = c.bit;
                e["patch"].push_back(std::move(cj));
            }
        }
        if (!r.near.empty()) {
            e["near"] = Json::array();
            for (const auto& n : r.near) {
                Json nj;
                offset_to(spec.g, n.at, nj);
                if (n.state) nj["state"] = *n.state;
                e["near"].push_back(std::move(nj));
            }
        }
        if (r.alone) e["alone"] = *r.alone;
        e["move"] = move_to(spec.g, r.move);
        e["next"] = r.next;
        j["rules"].push_back(std::move(e));
    }
    j["initial"] = Json::array();
    for (const auto& a : spec.initial) j["initial"].push_back(arrangement_to(spec.g, a));
    j["reject"] = Json::array();
    for (const auto& a : spec.reject) j["reject"].push_back(arrangement_to(spec.g, a));
    return j.dump(2);
}

AutomatonSpec eleven_detector(const GroupCtx& g) {
    AutomatonSpec spec;
    spec.g = g;
    spec.heads = 1;
    spec.states = {{1, 2}};
    spec.radius = 1;
    RuleEntry seen;
    seen.state = 1;
    seen.patch = {{Offset{{}, 0}, 1}, {Offset{{}, 1}, 1}};
    seen.next = 2;
    RuleEntry idle;
    idle.state = 1;
    idle.next = 1;
    RuleEntry stuck;
    stuck.state = 2;
    stuck.next = 2;
    spec.rules = {seen, idle, stuck};
    spec.initial = {Arrangement{{{0, Offset{}, 1}}}};
    spec.reject = {Arrangement{{{0, std::nullopt, 2}}}};
    validate(spec);
    return spec;
}

AutomatonSpec eleven_detector_3(const GroupCtx& g) {
    AutomatonSpec spec = eleven_detector(g);
    spec.heads = 3;
    spec.states = {{1, 2}, {1}, {1}};
    for (auto& r : spec.rules) r.head = 0;
    RuleEntry idle;
    idle.state = 1;
    idle.next = 1;
    spec.rules.push_back(idle);
    spec.initial = {Arrangement{{{0, Offset{}, 1}, {1, Offset{}, 1}, {2, Offset{}, 1}}}};
    spec.reject = {Arrangement{{{0, std::nullopt, 2}, {1, Offset{}, 1}}}};
    validate(spec);
    return spec;
}

// ---------------------------------------------------------------- oracles and configurations

bool GroupOracle::equal(const GeneratorWord& u, const GeneratorWord& v) const {
    ++queries_;
    return is_identity(free_reduce(ctx(), concat(inverse_word(ctx(), u), v)));
}

bool DirectOracle::is_identity(const GeneratorWord& w) const { return ::torsionlab::is_identity(ctx_, w); }

bool PrefixOracle::is_identity(const GeneratorWord& w) const {
    const BigNat idx = word_index(ctx_, free_reduce(ctx_, w));
    if (idx >= prefix_.size()) {
        const std::uint64_t at = idx > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(idx);
        throw OracleExhausted("word problem query " + idx.str() + " beyond prefix of length " +
                                  std::to_string(prefix_.size()),
                              at);
    }
    return prefix_.bit(static_cast<std::size_t>(idx));
}

Configuration Configuration::periodic(std::uint64_t p) {
    if (p == 0) throw DomainError("x^p needs p >= 1");
    Configuration c;
    c.period_ = p;
    return c;
}

Configuration Configuration::finite(std::vector<Cell> ones) {
    Configuration c;
    c.ones_ = std::move(ones);
    return c;
}

std::uint8_t Configuration::at(const GroupOracle& o, const GeneratorWord& g, std::int64_t z) const {
    if (period_) {
        const auto p = static_cast<std::int64_t>(period_);
        return ((z % p) + p) % p == 0 ? 1 : 0;
    }
    for (const auto& c : ones_)
        if (c.z == z && o.equal(c.g, g)) return 1;
    return 0;
}

Configuration make_xp(std::uint64_t p) { return Configuration::periodic(p); }

// ---------------------------------------------------------------- runs

RunState place(const AutomatonSpec& spec, const Arrangement& init, const Cell& start) {
    RunState rs;
    rs.heads.resize(spec.heads);
    for (const auto& s : init.slots)
        rs.heads[s.head] = HeadState{times(spec.g, start.g, s.at->g), start.z + s.at->dz, s.state};
    return rs;
}

namespace {

bool at_offset(const GroupOracle& o, const HeadState& from, const Offset& off, const HeadState& to) {
    return to.z == from.z + off.dz && o.equal(concat(from.g, off.g), to.g);
}

// Whether v lies within distance r of u in G x Z.
bool within_radius(const AutomatonSpec& spec, const GroupOracle& o, const HeadState& u, const HeadState& v) {
    const std::int64_t dz = abs64(v.z - u.z);
    if (dz > static_cast<std::int64_t>(spec.radius)) return false;
    auto b = ball(spec.g, spec.radius - static_cast<std::uint64_t>(dz));
    for (std::size_t i = 0; i < b->size(); ++i)
        if (o.equal(concat(u.g, b->word(i)), v.g)) return true;
    return false;
}

bool matches(const AutomatonSpec& spec, const RuleEntry& r, std::uint32_t head, const RunState& rs,
             const Configuration& x, const GroupOracle& o) {
    const HeadState& me = rs.heads[head];
    if (r.head && *r.head != head) return false;
    if (r.state && *r.state != me.state) return false;
    for (const auto& c : r.patch)
        if (x.at(o, concat(me.g, c.at.g), me.z + c.at.dz) != c.bit) return false;
    for (const auto& n : r.near) {
        bool found = false;
        for (std::uint32_t k = 0; k < rs.heads.size() && !found; ++k) {
            if (k == head || (n.state && *n.state != rs.heads[k].state)) continue;
            found = at_offset(o, me, n.at, rs.heads[k]);
        }
        if (!found) return false;
    }
    if (r.alone) {
        bool lonely = true;
        for (std::uint32_t k = 0; k < rs.heads.size() && lonely; ++k)
            if (k != head && within_radius(spec, o, me, rs.heads[k])) lonely = false;
        if (lonely != *r.alone) return false;
    }
    return true;
}

}  // namespace

RunState step(const AutomatonSpec& spec, const Configuration& x, const RunState& rs, const GroupOracle& o) {
    if (rs.heads.size() != spec.heads) throw PreconditionError("run state has the wrong number of heads");
    RunState next;
    next.step = rs.step + 1;
    next.heads.reserve(rs.heads.size());
    for (std::uint32_t h = 0; h < rs.heads.size(); ++h) {
        const RuleEntry* rule = nullptr;
        for (const auto& r : spec.rules)
            if (matches(spec, r, h, rs, x, o)) {
                rule = &r;
                break;
            }
        const HeadState& me = rs.heads[h];
        if (!rule)
            throw SpecError("no rule for head " + std::to_string(h) + " in state " + std::to_string(me.state) +
                            " at (" + format_word(spec.g, me.g) + ", " + std::to_string(me.z) + ")");
        if (!has_state(spec, h, rule->next))
            throw SpecError("rule sends head " + std::to_string(h) + " to state " + std::to_string(rule->next) +
                            " outside its state set");
        HeadState moved = me;
        moved.state = rule->next;
        switch (rule->move.kind) {
            case Move::Kind::Stay: break;
            case Move::Kind::ZPlus: ++moved.z; break;
            case Move::Kind::ZMinus: --moved.z; break;
            case Move::Kind::Gen: moved.g = times(spec.g, me.g, GeneratorWord{{rule->move.gen}}); break;
        }
        next.heads.push_back(std::move(moved));
    }
    return next;
}

std::optional<std::size_t> in_reject(const AutomatonSpec& spec, const RunState& rs, const GroupOracle& o) {
    for (std::size_t i = 0; i < spec.reject.size(); ++i) {
        bool all = true;
        for (const auto& s : spec.reject[i].slots) {
            const HeadState& h = rs.heads[s.head];
            if (h.state != s.state || (s.at && !at_offset(o, rs.heads[0], *s.at, h))) {
                all = false;
                break;
            }
        }
        if (all) return i;
    }
    return std::nullopt;
}

RunOutcome run(const AutomatonSpec& spec, const Configuration& x, const Cell& start, std::uint64_t steps,
               const GroupOracle& o) {
    std::vector<RunState> states;
    for (const auto& init : spec.initial) states.push_back(place(spec, init, start));
    RunOutcome out;
    for (std::uint64_t n = 0;; ++n) {
        for (std::size_t i = 0; i < states.size(); ++i)
            if (auto f = in_reject(spec, states[i], o)) {
                out.rejected = true;
                out.step = n;
                out.initial = i;
                out.arrangement = *f;
                out.final_state = states[i];
                return out;
            }
        if (n == steps) break;
        for (auto& s : states) s = step(spec, x, s, o);
    }
    out.step = steps;
    out.final_state = states.front();
    return out;
}

RunOutcome run(const AutomatonSpec& spec, const Configuration& x, const Cell& start, std::uint64_t steps) {
    return run(spec, x, start, steps, DirectOracle(spec.g));
}

Membership membership_test(const AutomatonSpec& spec, std::uint64_t p, std::uint64_t step_cap, const GroupOracle& o) {
    const Configuration x = make_xp(p);
    for (std::uint64_t phase = 0; phase < p; ++phase) {
        auto r = run(spec, x, Cell{{}, static_cast<std::int64_t>(phase)}, step_cap, o);
        if (r.rejected) return Membership{false, phase, r.step, r.initial};
    }
    return Membership{};
}

Membership membership_test(const AutomatonSpec& spec, std::uint64_t p, std::uint64_t step_cap) {
    return membership_test(spec, p, step_cap, DirectOracle(spec.g));
}

namespace {

std::uint64_t separation(const AutomatonSpec& spec, const RunState& rs) {
    std::uint64_t best = 0;
    for (std::size_t i = 0; i < rs.heads.size(); ++i)
        for (std::size_t j = i + 1; j < rs.heads.size(); ++j) {
            const auto rel = evaluate(spec.g, times(spec.g, inverse_word(spec.g, rs.heads[i].g), rs.heads[j].g));
            best = std::max(best, word_norm(spec.g, rel));
        }
    return best;
}

}  // namespace

std::vector<std::uint64_t> separation_trace(const AutomatonSpec& spec, const Configuration& x, const Cell& start,
                                            std::uint64_t steps) {
    const DirectOracle o(spec.g);
    RunState rs = place(spec, spec.initial.front(), start);
    std::vector<std::uint64_t> out{separation(spec, rs)};
    for (std::uint64_t n = 0; n < steps; ++n) {
        rs = step(spec, x, rs, o);
        out.push_back(separation(spec, rs));
    }
    return out;
}

std::vector<std::string> trace_records(const AutomatonSpec& spec, const Configuration& x, const Cell& start,
                                       std::uint64_t steps) {
    const DirectOracle o(spec.g);
    RunState rs = place(spec, spec.initial.front(), start);
    std::vector<std::string> out;
    for (std::uint64_t n = 0;; ++n) {
        const auto sep = separation(spec, rs);
        for (std::size_t h = 0; h < rs.heads.size(); ++h) {
            std::ostringstream line;
            const std::string g = format_word(spec.g, rs.heads[h].g);
            line << n << ' ' << h << ' ' << (g.empty() ? "e" : g) << ' ' << rs.heads[h].z << ' '
                 << rs.heads[h].state << ' ' << sep;
            out.push_back(line.str());
        }
        if (n == steps) break;
        rs = step(spec, x, rs, o);
    }
    return out;
}

Prediction predictor(const AutomatonSpec& spec, std::uint64_t p, const OraclePrefix& wp_prefix,
                     std::uint64_t step_cap) {
    if (spec.heads != 3) throw PreconditionError("predictor expects a 3-headed automaton");
    const PrefixOracle o(spec.g, wp_prefix);
    return membership_test(spec, p, step_cap, o).in_s ? Prediction::Running : Prediction::Halted;
}

bool yB_membership(const PsiHandle& psi, std::uint64_t p, const GroupCtx& g) {
    return is_identity(g, enumerate_words(g, psi(p)));
}

}  // namespace torsionlab
