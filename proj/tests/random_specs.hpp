#pragma once

#include <random>

#include "torsionlab/automata.hpp"

namespace torsionlab::testing {

// Random total spec: a few random guarded entries, then a catch-all per state.
inline AutomatonSpec random_spec(std::mt19937& rng, const GroupCtx& g) {
    AutomatonSpec spec;
    spec.g = g;
    spec.heads = 1 + rng() % 3;
    const std::uint32_t nstates = 1 + rng() % 3;
    std::vector<std::uint32_t> q;
    for (std::uint32_t s = 1; s <= nstates; ++s) q.push_back(s);
    spec.states.assign(spec.heads, q);
    spec.radius = 1;
    auto random_move = [&]() {
        const auto k = rng() % (g.generator_count() + 3);
        if (k < g.generator_count()) return Move{Move::Kind::Gen, static_cast<std::uint32_t>(k)};
        return Move{static_cast<Move::Kind>(k - g.generator_count() == 0 ? 0 : k - g.generator_count() + 1), 0};
    };
    auto random_offset = [&]() {
        Offset o;
        if (rng() % 2) {
            o.g.symbols.push_back(static_cast<std::uint32_t>(rng() % g.generator_count()));
        } else {
            o.dz = static_cast<std::int64_t>(rng() % 3) - 1;
        }
        return o;
    };
    for (int i = 0; i < 4; ++i) {
        RuleEntry r;
        if (rng() % 2) r.head = static_cast<std::uint32_t>(rng() % spec.heads);
        r.state = 1 + static_cast<std::uint32_t>(rng() % nstates);
        if (rng() % 2) r.patch.push_back({random_offset(), static_cast<std::uint8_t>(rng() % 2)});
        if (rng() % 3 == 0) r.near.push_back({random_offset(), std::nullopt});
        if (rng() % 4 == 0) r.alone = rng() % 2 == 0;
        r.move = random_move();
        r.next = 1 + static_cast<std::uint32_t>(rng() % nstates);
        spec.rules.push_back(r);
    }
    for (std::uint32_t s = 1; s <= nstates; ++s) {
        RuleEntry r;
        r.state = s;
        r.move = random_move();
        r.next = 1 + static_cast<std::uint32_t>(rng() % nstates);
        spec.rules.push_back(r);
    }
    Arrangement init;
    for (std::uint32_t h = 0; h < spec.heads; ++h) init.slots.push_back({h, random_offset(), 1});
    spec.initial = {init};
    Arrangement rej;
    rej.slots.push_back({0, std::nullopt, nstates});
    spec.reject = {rej};
    return parse_automaton(format_automaton(spec));  // validates
}

}  // namespace torsionlab::testing
