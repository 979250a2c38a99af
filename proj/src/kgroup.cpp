#include "torsionlab/kgroup.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "torsionlab/errors.hpp"
#include "torsionlab/finite_group.hpp"
#include "torsionlab/simd/pattern_kernel.hpp"

namespace torsionlab {

// ---------------------------------------------------------------- alphabet

std::uint32_t k_alphabet_size(const GroupCtx& g, const GroupCtx& h) {
    return g.generator_count() + 2 * h.generator_count();
}

std::uint32_t k_symbol(const GroupCtx& g, const KGenerator& x) {
    if (x.kind == KGenerator::Kind::Shift) return x.gen;
    return g.generator_count() + 2 * x.gen + x.bit;
}

KGenerator k_generator(const GroupCtx& g, const GroupCtx& h, std::uint32_t symbol) {
    if (symbol >= k_alphabet_size(g, h)) throw DomainError("K symbol out of range");
    if (symbol < g.generator_count()) return KGenerator::shift(symbol);
    const std::uint32_t m = symbol - g.generator_count();
    return KGenerator::mult(m / 2, static_cast<std::uint8_t>(m % 2));
}

KWord k_inverse(const GroupCtx& g, const GroupCtx& h, const KWord& w) {
    KWord out;
    out.letters.reserve(w.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        if (it->kind == KGenerator::Kind::Shift)
            out.letters.push_back(KGenerator::shift(g.inverse_of(it->gen)));
        else
            out.letters.push_back(KGenerator::mult(h.inverse_of(it->gen), it->bit));
    }
    return out;
}

KWord k_concat(const KWord& a, const KWord& b) {
    KWord out = a;
    out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
    return out;
}

KWord k_power(const KWord& w, std::uint64_t k) {
    KWord out;
    out.letters.reserve(w.size() * k);
    for (std::uint64_t i = 0; i < k; ++i) out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
    return out;
}

std::string format_kword(const GroupCtx& g, const GroupCtx& h, const KWord& w) {
    std::string out;
    for (const auto& x : w.letters) {
        if (!out.empty()) out += ' ';
        if (x.kind == KGenerator::Kind::Shift)
            out += "S:" + g.generator(x.gen);
        else
            out += "M:" + h.generator(x.gen) + ":" + std::to_string(x.bit);
    }
    return out;
}

KWord parse_kword(const GroupCtx& g, const GroupCtx& h, std::string_view tokens) {
    KWord w;
    std::istringstream in{std::string(tokens)};
    std::string tok;
    while (in >> tok) {
        if (tok.starts_with("S:")) {
            w.letters.push_back(KGenerator::shift(g.symbol_index(tok.substr(2))));
        } else if (tok.starts_with("M:")) {
            const auto colon = tok.rfind(':');
            if (colon <= 2) throw ParseError("bad multiplier token '" + tok + "'");
            const std::string bit = tok.substr(colon + 1);
            if (bit != "0" && bit != "1") throw ParseError("multiplier bit must be 0 or 1 in '" + tok + "'");
            w.letters.push_back(KGenerator::mult(h.symbol_index(tok.substr(2, colon - 2)),
                                                 static_cast<std::uint8_t>(bit[0] - '0')));
        } else {
            throw ParseError("unknown K token '" + tok + "'");
        }
    }
    return w;
}

std::string format_kword_record(const GroupCtx& g, const GroupCtx& h, const KWord& w) {
    return "kword G=" + g.name() + " H=" + h.name() + " | " + format_kword(g, h, w);
}

KWordRecord parse_kword_record(std::string_view text) {
    const auto bar = text.find('|');
    if (!text.starts_with("kword ") || bar == std::string_view::npos) throw ParseError("expected 'kword G=.. H=.. | ..'");
    const std::string_view header = text.substr(6, bar - 6);
    const auto gpos = header.find("G=");
    const auto hpos = header.find(" H=");
    if (gpos == std::string_view::npos || hpos == std::string_view::npos || hpos < gpos)
        throw ParseError("kword header needs G= and H=");
    auto strip = [](std::string_view s) {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        return std::string(s);
    };
    GroupCtx g = GroupCtx::parse(strip(header.substr(gpos + 2, hpos - gpos - 2)));
    GroupCtx h = GroupCtx::parse(strip(header.substr(hpos + 3)));
    KWord w = parse_kword(g, h, text.substr(bar + 1));
    return {g, h, std::move(w)};
}

KWord k_enumerate(const GroupCtx& g, const GroupCtx& h, const BigNat& index) {
    const std::uint32_t s = k_alphabet_size(g, h);
    KWord w;
    for (auto sym : lenlex_decode(index, s)) w.letters.push_back(k_generator(g, h, sym));
    return w;
}

BigNat k_index(const GroupCtx& g, const GroupCtx& h, const KWord& w) {
    std::vector<std::uint32_t> syms;
    syms.reserve(w.size());
    for (const auto& x : w.letters) syms.push_back(k_symbol(g, x));
    return lenlex_encode(syms, k_alphabet_size(g, h));
}

// ---------------------------------------------------------------- structure

GeneratorWord gamma(const KWord& w) {
    GeneratorWord out;
    for (const auto& x : w.letters)
        if (x.kind == KGenerator::Kind::Shift) out.symbols.push_back(x.gen);
    return out;
}

KWord section(const GeneratorWord& v) {
    KWord out;
    for (auto s : v.symbols) out.letters.push_back(KGenerator::shift(s));
    return out;
}

std::pair<Pattern, GroupElement> act(const KContext& ctx, const KWord& w, const Pattern& p, const GroupElement& h) {
    const GroupCtx& g = ctx.g;
    GroupElement shift = identity(g);
    GroupElement acc = h;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        if (it->kind == KGenerator::Kind::Shift) {
            shift = multiply(g, generator_element(g, it->gen), shift);
            continue;
        }
        // the shifted window c.P holds P(c^-1) at the origin
        const auto idx = p.domain->index_of(inverse(g, shift));
        if (!idx) continue;
        if (p.values[*idx] == it->bit) acc = multiply(ctx.h, generator_element(ctx.h, it->gen), acc);
    }
    if (is_identity(g, shift)) return {p, acc};
    std::vector<GroupElement> moved;
    moved.reserve(p.domain->size());
    for (std::size_t i = 0; i < p.domain->size(); ++i) moved.push_back(multiply(g, shift, p.domain->element(i)));
    Pattern q{Domain::of_elements(g, std::move(moved), "shifted"), p.values};
    return {std::move(q), acc};
}

ReadSites read_sites(const GroupCtx& g, const KWord& w) {
    ReadSites rs;
    std::unordered_map<std::string, std::size_t> seen;
    GroupElement shift = identity(g);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        if (it->kind == KGenerator::Kind::Shift) {
            shift = multiply(g, generator_element(g, it->gen), shift);
            continue;
        }
        GroupElement cell = inverse(g, shift);
        auto [pos, fresh] = seen.emplace(element_key(g, cell), rs.positions.size());
        if (fresh) rs.positions.push_back(std::move(cell));
        rs.sites.push_back({pos->second, it->gen, it->bit});
    }
    std::reverse(rs.sites.begin(), rs.sites.end());
    return rs;
}

namespace {

constexpr std::int32_t kNone = -1;

// A pattern restricted to the read set: the read-set indices of its 1s.
struct Window {
    std::int32_t a = kNone;
    std::int32_t b = kNone;
};

// Zero window, then every single, then every pair i < j accepted by `keep`.
template <class Keep>
std::vector<Window> reduced_windows(std::size_t n, Keep keep) {
    std::vector<Window> out;
    out.push_back({});
    for (std::size_t i = 0; i < n; ++i) out.push_back({static_cast<std::int32_t>(i), kNone});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (keep(i, j)) out.push_back({static_cast<std::int32_t>(i), static_cast<std::int32_t>(j)});
    return out;
}

// Left multipliers h_P of the sites on each window, starting from e_H.
struct Images {
    std::shared_ptr<const FiniteGroupTable> table;  // set when H is finite
    std::vector<std::int32_t> index;
    std::vector<GroupElement> element;              // used when H is infinite

    bool trivial(std::size_t w) const { return table ? index[w] == 0 : trivial_[w]; }
    GroupElement value(std::size_t w) const { return table ? table->elements[static_cast<std::size_t>(index[w])] : element[w]; }

    std::vector<char> trivial_;
};

Images window_images(const GroupCtx& h, const ReadSites& rs, const std::vector<Window>& windows) {
    Images out;
    out.table = finite_table(h);
    if (out.table) {
        simd::SiteList sites;
        for (const auto& s : rs.sites)
            sites.push(static_cast<std::int32_t>(s.position), out.table->generator[s.h_gen], s.bit);
        simd::WindowBatch batch;
        for (const auto& w : windows) batch.push(w.a, w.b);
        out.index.assign(windows.size(), 0);
        simd::apply_sites(sites, out.table->cayley, batch, out.index);
        return out;
    }
    for (const auto& w : windows) {
        GroupElement acc = identity(h);
        for (std::size_t j = rs.sites.size(); j-- > 0;) {
            const auto& s = rs.sites[j];
            const auto pos = static_cast<std::int32_t>(s.position);
            const std::uint8_t value = (pos == w.a || pos == w.b) ? 1 : 0;
            if (value == s.bit) acc = multiply(h, generator_element(h, s.h_gen), acc);
        }
        out.trivial_.push_back(is_identity(h, acc));
        out.element.push_back(std::move(acc));
    }
    return out;
}

std::uint64_t pair_distance(const GroupCtx& g, const ReadSites& rs, std::size_t i, std::size_t j) {
    return distance(g, rs.positions[i], rs.positions[j]);
}

// Windows that are legal for the oracle (every distance is below its length).
std::vector<Window> legal_windows(const GroupCtx& g, const ReadSites& rs, const OraclePrefix& oracle) {
    const bool free = !oracle.any_one_below(oracle.size());
    return reduced_windows(rs.positions.size(), [&](std::size_t i, std::size_t j) {
        return free || !oracle.bit(pair_distance(g, rs, i, j));
    });
}

// Dense pattern over the smallest canonical ball containing the read set.
Pattern witness_pattern(const GroupCtx& g, const ReadSites& rs, const Window& w) {
    std::uint64_t radius = 0;
    for (const auto& pos : rs.positions) radius = std::max(radius, word_norm(g, pos));
    auto b = ball(g, radius);
    Pattern p = zero_pattern(Domain::of_ball(b));
    for (auto c : {w.a, w.b})
        if (c != kNone) p.values[*b->index_of(g, rs.positions[static_cast<std::size_t>(c)])] = 1;
    return p;
}

// Canonical ball order of a window: zero, singles, pairs; each by ball index.
std::tuple<int, std::size_t, std::size_t> canonical_rank(const std::vector<std::size_t>& ball_index, const Window& w) {
    if (w.a == kNone) return {0, 0, 0};
    std::size_t x = ball_index[static_cast<std::size_t>(w.a)];
    if (w.b == kNone) return {1, x, 0};
    std::size_t y = ball_index[static_cast<std::size_t>(w.b)];
    if (x > y) std::swap(x, y);
    return {2, x, y};
}

}  // namespace

// ---------------------------------------------------------------- word problem

WpResult wp_K(const KContext& ctx, const KWord& w) {
    WpResult r;
    const std::uint64_t needed = 2 * w.size() + 1;
    if (ctx.oracle.size() < needed) {
        r.status = WpResult::Status::NeedsOracle;
        r.needed = needed;
        return r;
    }
    const GroupElement image = evaluate(ctx.g, gamma(w));
    if (!is_identity(ctx.g, image)) {
        r.status = WpResult::Status::NonIdentity;
        r.gamma_image = image;
        return r;
    }
    const ReadSites rs = read_sites(ctx.g, w);
    const auto windows = legal_windows(ctx.g, rs, ctx.oracle);
    const Images img = window_images(ctx.h, rs, windows);
    std::vector<std::size_t> moving;
    for (std::size_t i = 0; i < windows.size(); ++i)
        if (!img.trivial(i)) moving.push_back(i);
    if (moving.empty()) return r;

    std::uint64_t radius = 0;
    for (const auto& pos : rs.positions) radius = std::max(radius, word_norm(ctx.g, pos));
    auto b = ball(ctx.g, radius);
    std::vector<std::size_t> ball_index;
    for (const auto& pos : rs.positions) ball_index.push_back(*b->index_of(ctx.g, pos));
    const std::size_t first = *std::min_element(moving.begin(), moving.end(), [&](std::size_t x, std::size_t y) {
        return canonical_rank(ball_index, windows[x]) < canonical_rank(ball_index, windows[y]);
    });
    r.status = WpResult::Status::NonIdentity;
    r.witness = witness_pattern(ctx.g, rs, windows[first]);
    r.h_witness = img.value(first);
    return r;
}

std::pair<std::uint32_t, std::uint32_t> noncommuting_pair(const GroupCtx& h) {
    for (std::uint32_t i = 0; i < h.generator_count(); ++i)
        for (std::uint32_t j = i + 1; j < h.generator_count(); ++j) {
            const auto x = generator_element(h, i);
            const auto y = generator_element(h, j);
            if (!equal(h, multiply(h, x, y), multiply(h, y, x))) return {i, j};
        }
    throw DomainError("H = " + h.name() + " has no noncommuting generator pair");
}

KWord embed_element(const GroupCtx& g, const GroupCtx& h, std::uint64_t n) {
    if (n == 0) throw DomainError("embed_element needs n >= 1");
    const auto [hi, hj] = noncommuting_pair(h);
    const auto first = first_of_norm(g, n);
    if (!first) throw DomainError(g.name() + " has no element of norm " + std::to_string(n));
    const KWord s = section(*first);
    const KWord s_inv = k_inverse(g, h, s);

    const KWord a{{KGenerator::mult(hj, 1)}};
    const KWord conj = k_concat(k_concat(s, KWord{{KGenerator::mult(hi, 1)}}), s_inv);
    return k_concat(k_concat(a, conj), k_concat(k_inverse(g, h, a), k_inverse(g, h, conj)));
}

BigNat many_one_index(const GroupCtx& g, const GroupCtx& h, std::uint64_t n) {
    return k_index(g, h, embed_element(g, h, n));
}

// ---------------------------------------------------------------- conjunctive reduction

std::uint64_t conj_rate(const GroupCtx& g, const GroupCtx& h, std::uint64_t m) {
    if (m == 0) return 0;
    return lenlex_count_upto((m - 1) / 2, k_alphabet_size(g, h));
}

ConjWitness conj_witness_of(const GroupCtx& g, const GroupCtx& h, const KWord& w) {
    ConjWitness out;
    if (!is_identity(g, evaluate(g, gamma(w)))) {
        out.always_zero = true;
        return out;
    }
    const ReadSites rs = read_sites(g, w);
    const auto windows = reduced_windows(rs.positions.size(), [](std::size_t, std::size_t) { return true; });
    const Images img = window_images(h, rs, windows);
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (img.trivial(i)) continue;
        if (windows[i].b == kNone) {
            out.always_zero = true;
            out.bad_distances.clear();
            return out;
        }
        out.bad_distances.insert(pair_distance(g, rs, static_cast<std::size_t>(windows[i].a),
                                               static_cast<std::size_t>(windows[i].b)));
    }
    return out;
}

ConjWitness conj_witness(const GroupCtx& g, const GroupCtx& h, const BigNat& i, std::uint64_t m) {
    const KWord w = k_enumerate(g, h, i);
    if (m == 0 || w.size() > (m - 1) / 2)
        throw PreconditionError("word " + i.str() + " (length " + std::to_string(w.size()) +
                                ") is not decidable from a prefix of length " + std::to_string(m));
    return conj_witness_of(g, h, w);
}

namespace {

std::optional<bool> evaluate_witness(const ConjWitness& q, const OraclePrefix& a) {
    if (q.always_zero) return false;
    for (auto d : q.bad_distances) {
        if (d >= a.size()) return std::nullopt;
        if (!a.bit(d)) return false;
    }
    return true;
}

}  // namespace

OraclePrefix conj_reduction(const GroupCtx& g, const GroupCtx& h, const OraclePrefix& u) {
    const std::uint64_t beta = conj_rate(g, h, u.size());
    constexpr std::uint64_t kLimit = 1u << 24;
    if (beta > kLimit) throw CapExceeded("conj_reduction output length " + std::to_string(beta) + " exceeds limit");
    const std::uint32_t s = k_alphabet_size(g, h);
    std::string bits;
    bits.reserve(beta);
    std::vector<std::uint32_t> syms;
    for (std::uint64_t i = 0; i < beta; ++i, lenlex_next(syms, s)) {
        KWord w;
        for (auto x : syms) w.letters.push_back(k_generator(g, h, x));
        bits += *evaluate_witness(conj_witness_of(g, h, w), u) ? '1' : '0';
    }
    return OraclePrefix(std::move(bits));
}

std::optional<bool> conj_bit(const GroupCtx& g, const GroupCtx& h, const BigNat& i, const OraclePrefix& a) {
    return evaluate_witness(conj_witness_of(g, h, k_enumerate(g, h, i)), a);
}

// ---------------------------------------------------------------- torsion and quotients

std::uint64_t order_K(const KContext& ctx, const KWord& w, std::uint64_t cap) {
    const GroupElement image = evaluate(ctx.g, gamma(w));
    std::uint64_t k = 1;
    if (!is_identity(ctx.g, image)) {
        const Order o = element_order(ctx.g, image, cap);
        if (o.infinite) throw DomainError("gamma image has infinite order in " + ctx.g.name());
        k = o.value;
    }
    const std::uint64_t needed = 2 * k * w.size() + 1;
    if (ctx.oracle.size() < needed)
        throw OracleShortage("order_K needs an oracle prefix of length " + std::to_string(needed), needed);

    const ReadSites rs = read_sites(ctx.g, k_power(w, k));
    const auto windows = legal_windows(ctx.g, rs, ctx.oracle);
    const Images img = window_images(ctx.h, rs, windows);
    std::uint64_t l = 1;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        std::uint64_t o;
        if (img.table) {
            o = img.table->order[static_cast<std::size_t>(img.index[i])];
        } else {
            const Order oh = element_order(ctx.h, img.element[i], cap);
            if (oh.infinite) throw CapExceeded("multiplier of infinite order in " + ctx.h.name());
            o = oh.value;
        }
        l = std::lcm(l, o);
        if (l > cap / k) throw CapExceeded("order of w exceeds cap " + std::to_string(cap));
    }
    return k * l;
}

bool quotient_check(const KContext& smaller, const KContext& larger, const KWord& w) {
    const WpResult a = wp_K(smaller, w);
    const WpResult b = wp_K(larger, w);
    for (const auto* r : {&a, &b})
        if (r->status == WpResult::Status::NeedsOracle)
            throw OracleShortage("quotient_check needs oracle prefixes of length " + std::to_string(r->needed),
                                 r->needed);
    return !(a.status == WpResult::Status::Identity && b.status == WpResult::Status::NonIdentity);
}

}  // namespace torsionlab
