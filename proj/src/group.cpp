#include "torsionlab/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "torsionlab/errors.hpp"
#include "torsionlab/grigorchuk.hpp"

namespace torsionlab {

// Grows one BFS ball per context and hands out immutable radius snapshots.
class BallCache {
public:
    explicit BallCache(GroupCtx ctx) : ctx_(std::move(ctx)) {}

    std::shared_ptr<const Ball> snapshot(std::uint64_t n, std::size_t cap) {
        std::lock_guard lock(mu_);
        if (auto it = snapshots_.find(n); it != snapshots_.end())
            if (auto live = it->second.lock()) return live;
        grow_to(n, cap);
        const std::size_t count = layer_ends_[n];
        auto b = std::shared_ptr<Ball>(new Ball(ctx_));
        b->radius_ = n;
        b->elements_.assign(elements_.begin(), elements_.begin() + count);
        b->words_.assign(words_.begin(), words_.begin() + count);
        b->norms_.assign(norms_.begin(), norms_.begin() + count);
        b->keys_.assign(keys_.begin(), keys_.begin() + count);
        b->index_.reserve(count);
        for (std::size_t i = 0; i < count; ++i) b->index_.emplace(keys_[i], i);
        snapshots_[n] = b;
        recent_.push_back(b);
        if (recent_.size() > kRecent) recent_.pop_front();
        return b;
    }

    std::optional<GeneratorWord> first_of_norm(std::uint64_t n, std::size_t cap) {
        std::lock_guard lock(mu_);
        grow_to(n, cap);
        const std::size_t begin = n == 0 ? 0 : layer_ends_[n - 1];
        if (begin == layer_ends_[n]) return std::nullopt;
        return words_[begin];
    }

    std::uint64_t norm_of(const std::string& key, std::size_t cap) {
        std::lock_guard lock(mu_);
        if (elements_.empty()) grow_to(0, cap);
        for (;;) {
            if (auto it = index_.find(key); it != index_.end()) return norms_[it->second];
            grow_to(layer_ends_.size(), cap);
        }
    }

private:
    void grow_to(std::uint64_t n, std::size_t cap) {
        if (elements_.empty()) {
            elements_.push_back(identity(ctx_));
            words_.emplace_back();
            norms_.push_back(0);
            keys_.push_back(element_key(ctx_, elements_[0]));
            index_.emplace(keys_[0], 0);
            layer_ends_.push_back(1);
        }
        const std::uint32_t s = ctx_.generator_count();
        while (layer_ends_.size() <= n) {
            const std::size_t r = layer_ends_.size();
            const std::size_t begin = r >= 2 ? layer_ends_[r - 2] : 0;
            const std::size_t end = layer_ends_[r - 1];
            if (begin == end) {  // finite group exhausted
                layer_ends_.push_back(end);
                continue;
            }
            for (std::size_t i = begin; i < end; ++i) {
                for (std::uint32_t g = 0; g < s; ++g) {
                    GroupElement next = multiply(ctx_, elements_[i], generator_element(ctx_, g));
                    std::string key = element_key(ctx_, next);
                    if (index_.contains(key)) continue;
                    if (elements_.size() >= cap)
                        throw CapacityError("ball of " + ctx_.name() + " exceeds capacity " + std::to_string(cap),
                                            r - 1);
                    GeneratorWord w = words_[i];
                    w.symbols.push_back(g);
                    index_.emplace(key, elements_.size());
                    elements_.push_back(std::move(next));
                    words_.push_back(std::move(w));
                    norms_.push_back(static_cast<std::uint32_t>(r));
                    keys_.push_back(std::move(key));
                }
            }
            layer_ends_.push_back(elements_.size());
        }
    }

    GroupCtx ctx_;
    std::mutex mu_;
    std::vector<GroupElement> elements_;
    std::vector<GeneratorWord> words_;
    std::vector<std::uint32_t> norms_;
    std::vector<std::string> keys_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::size_t> layer_ends_;
    // snapshots live as long as a caller holds them, plus the last few handed out
    static constexpr std::size_t kRecent = 4;
    std::map<std::uint64_t, std::weak_ptr<const Ball>> snapshots_;
    std::deque<std::shared_ptr<const Ball>> recent_;
};

struct GroupCtx::Impl {
    GroupKind kind;
    std::string name;
    std::vector<std::string> gens;
    std::vector<std::uint32_t> inv;
    std::vector<GroupCtx> factors;
    std::vector<std::pair<int, std::uint32_t>> factor_gen;
    mutable std::shared_ptr<BallCache> cache;
    mutable std::once_flag cache_once;
};

namespace {

using Perm = std::array<std::uint8_t, 3>;

constexpr Perm kPermId{0, 1, 2};
constexpr std::array<Perm, 3> kS3Gens{Perm{1, 0, 2}, Perm{0, 2, 1}, Perm{2, 1, 0}};

Perm perm_mul(const Perm& a, const Perm& b) {
    // (a*b)(x) = a(b(x))
    return Perm{a[b[0]], a[b[1]], a[b[2]]};
}

Perm perm_inv(const Perm& a) {
    Perm r{};
    for (std::uint8_t i = 0; i < 3; ++i) r[a[i]] = i;
    return r;
}

std::string perm_string(const Perm& p) {
    if (p == kPermId) return "()";
    std::string out;
    std::array<bool, 3> seen{};
    for (std::uint8_t i = 0; i < 3; ++i) {
        if (seen[i] || p[i] == i) continue;
        out += '(';
        for (std::uint8_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            out += static_cast<char>('1' + j);
        }
        out += ')';
    }
    return out;
}

Perm parse_perm(std::string_view text) {
    Perm p = kPermId;
    if (text == "e" || text == "()" || text.empty()) return p;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '(') throw ParseError("bad permutation: " + std::string(text));
        const std::size_t close = text.find(')', i);
        if (close == std::string_view::npos) throw ParseError("bad permutation: " + std::string(text));
        std::vector<std::uint8_t> cyc;
        for (std::size_t j = i + 1; j < close; ++j) {
            if (text[j] < '1' || text[j] > '3') throw ParseError("bad permutation: " + std::string(text));
            cyc.push_back(static_cast<std::uint8_t>(text[j] - '1'));
        }
        Perm c = kPermId;
        for (std::size_t j = 0; j < cyc.size(); ++j) c[cyc[j]] = cyc[(j + 1) % cyc.size()];
        p = perm_mul(p, c);
        i = close + 1;
    }
    return p;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

const std::string kUnicodeMinus = "−";

std::string normalize_symbol(std::string s) {
    // accept the typographic minus sign for Z generators
    for (std::size_t pos; (pos = s.find(kUnicodeMinus)) != std::string::npos;) s.replace(pos, kUnicodeMinus.size(), "-");
    return s;
}

}  // namespace

GroupCtx GroupCtx::integers() {
    static const GroupCtx ctx = [] {
        auto impl = std::make_shared<Impl>();
        impl->kind = GroupKind::Z;
        impl->name = "Z";
        impl->gens = {"+1", "-1"};
        impl->inv = {1, 0};
        return GroupCtx(impl);
    }();
    return ctx;
}

GroupCtx GroupCtx::s3() {
    static const GroupCtx ctx = [] {
        auto impl = std::make_shared<Impl>();
        impl->kind = GroupKind::S3;
        impl->name = "S3";
        impl->gens = {"(12)", "(23)", "(13)"};
        impl->inv = {0, 1, 2};
        return GroupCtx(impl);
    }();
    return ctx;
}

GroupCtx GroupCtx::grigorchuk() {
    static const GroupCtx ctx = [] {
        auto impl = std::make_shared<Impl>();
        impl->kind = GroupKind::Grigorchuk;
        impl->name = "grigorchuk";
        impl->gens = {"a", "b", "c", "d"};
        impl->inv = {0, 1, 2, 3};
        return GroupCtx(impl);
    }();
    return ctx;
}

GroupCtx GroupCtx::product(const GroupCtx& left, const GroupCtx& right) {
    // products are interned by name so that copies share one ball cache
    static std::mutex mu;
    static std::map<std::string, GroupCtx> interned;
    const std::string name = left.name() + " x " + right.name();
    std::lock_guard lock(mu);
    if (auto it = interned.find(name); it != interned.end()) return it->second;

    auto impl = std::make_shared<Impl>();
    impl->kind = GroupKind::Product;
    impl->name = name;
    impl->factors = {left, right};
    bool clash = false;
    for (const auto& a : left.generators())
        for (const auto& b : right.generators())
            if (a == b) clash = true;
    const std::uint32_t nl = left.generator_count();
    for (std::uint32_t i = 0; i < nl; ++i) {
        impl->gens.push_back(clash ? "l" + left.generator(i) : left.generator(i));
        impl->inv.push_back(left.inverse_of(i));
        impl->factor_gen.emplace_back(0, i);
    }
    for (std::uint32_t i = 0; i < right.generator_count(); ++i) {
        impl->gens.push_back(clash ? "r" + right.generator(i) : right.generator(i));
        impl->inv.push_back(nl + right.inverse_of(i));
        impl->factor_gen.emplace_back(1, i);
    }
    GroupCtx ctx(impl);
    interned.emplace(name, ctx);
    return ctx;
}

GroupCtx GroupCtx::parse(std::string_view id) {
    const std::string s = trim(id);
    // split at the last top-level " x " for left associativity
    const std::size_t pos = s.rfind(" x ");
    if (pos != std::string::npos) return product(parse(s.substr(0, pos)), parse(s.substr(pos + 3)));
    const std::string l = lower(s);
    if (l == "z") return integers();
    if (l == "s3") return s3();
    if (l == "grigorchuk") return grigorchuk();
    throw ParseError("unknown group id: '" + s + "'");
}

GroupKind GroupCtx::kind() const { return impl_->kind; }
const std::string& GroupCtx::name() const { return impl_->name; }
std::uint32_t GroupCtx::generator_count() const { return static_cast<std::uint32_t>(impl_->gens.size()); }
const std::string& GroupCtx::generator(std::uint32_t i) const { return impl_->gens.at(i); }
std::span<const std::string> GroupCtx::generators() const { return impl_->gens; }
std::uint32_t GroupCtx::inverse_of(std::uint32_t gen) const { return impl_->inv.at(gen); }

std::uint32_t GroupCtx::symbol_index(std::string_view symbol) const {
    const std::string sym = normalize_symbol(std::string(symbol));
    for (std::uint32_t i = 0; i < impl_->gens.size(); ++i)
        if (impl_->gens[i] == sym) return i;
    throw ParseError("unknown generator '" + std::string(symbol) + "' for group " + name());
}

const GroupCtx& GroupCtx::left() const {
    if (kind() != GroupKind::Product) throw ContextError(name() + " is not a product");
    return impl_->factors[0];
}

const GroupCtx& GroupCtx::right() const {
    if (kind() != GroupKind::Product) throw ContextError(name() + " is not a product");
    return impl_->factors[1];
}

std::pair<int, std::uint32_t> GroupCtx::factor_generator(std::uint32_t gen) const {
    if (kind() != GroupKind::Product) throw ContextError(name() + " is not a product");
    return impl_->factor_gen.at(gen);
}

bool GroupCtx::is_torsion() const {
    switch (kind()) {
        case GroupKind::Z: return false;
        case GroupKind::S3:
        case GroupKind::Grigorchuk: return true;
        case GroupKind::Product: return left().is_torsion() && right().is_torsion();
    }
    return false;
}

bool GroupCtx::is_finite() const {
    switch (kind()) {
        case GroupKind::S3: return true;
        case GroupKind::Product: return left().is_finite() && right().is_finite();
        default: return false;
    }
}

BallCache& GroupCtx::ball_cache() const {
    std::call_once(impl_->cache_once, [this] { impl_->cache = std::make_shared<BallCache>(*this); });
    return *impl_->cache;
}

// ---------------------------------------------------------------- words

GeneratorWord parse_word(const GroupCtx& ctx, std::string_view text) {
    GeneratorWord w;
    std::istringstream in{std::string(text)};
    std::string tok;
    bool single_char = std::all_of(ctx.generators().begin(), ctx.generators().end(),
                                   [](const std::string& g) { return g.size() == 1; });
    while (in >> tok) {
        if (tok == "e" || tok == "ε") continue;
        if (single_char && tok.size() > 1) {
            for (char c : tok) w.symbols.push_back(ctx.symbol_index(std::string(1, c)));
            continue;
        }
        w.symbols.push_back(ctx.symbol_index(tok));
    }
    return w;
}

std::string format_word(const GroupCtx& ctx, const GeneratorWord& w) {
    std::string out;
    for (std::size_t i = 0; i < w.symbols.size(); ++i) {
        if (i) out += ' ';
        out += ctx.generator(w.symbols[i]);
    }
    return out;
}

GeneratorWord inverse_word(const GroupCtx& ctx, const GeneratorWord& w) {
    GeneratorWord r;
    r.symbols.reserve(w.size());
    for (auto it = w.symbols.rbegin(); it != w.symbols.rend(); ++it) r.symbols.push_back(ctx.inverse_of(*it));
    return r;
}

GeneratorWord concat(const GeneratorWord& a, const GeneratorWord& b) {
    GeneratorWord r = a;
    r.symbols.insert(r.symbols.end(), b.symbols.begin(), b.symbols.end());
    return r;
}

GeneratorWord free_reduce(const GroupCtx& ctx, GeneratorWord w) {
    std::vector<std::uint32_t> out;
    out.reserve(w.size());
    for (auto s : w.symbols) {
        if (!out.empty() && ctx.inverse_of(out.back()) == s) {
            out.pop_back();
        } else {
            out.push_back(s);
        }
    }
    w.symbols = std::move(out);
    return w;
}

// ---------------------------------------------------------------- elements

GroupElement identity(const GroupCtx& ctx) {
    GroupElement e;
    e.kind = ctx.kind();
    if (ctx.kind() == GroupKind::Product) e.parts = {identity(ctx.left()), identity(ctx.right())};
    return e;
}

GroupElement generator_element(const GroupCtx& ctx, std::uint32_t gen) {
    if (gen >= ctx.generator_count()) throw DomainError("generator index out of range");
    GroupElement g = identity(ctx);
    switch (ctx.kind()) {
        case GroupKind::Z: g.z = gen == 0 ? 1 : -1; break;
        case GroupKind::S3: g.perm = kS3Gens[gen]; break;
        case GroupKind::Grigorchuk: g.grig = std::string(1, static_cast<char>('a' + gen)); break;
        case GroupKind::Product: {
            const auto [side, idx] = ctx.factor_generator(gen);
            const GroupCtx& f = side == 0 ? ctx.left() : ctx.right();
            g.parts[static_cast<std::size_t>(side)] = generator_element(f, idx);
            break;
        }
    }
    return g;
}

namespace {

void check_kind(const GroupCtx& ctx, const GroupElement& a) {
    if (a.kind != ctx.kind() || (ctx.kind() == GroupKind::Product && a.parts.size() != 2))
        throw ContextError("element does not belong to " + ctx.name());
}

}  // namespace

GroupElement multiply(const GroupCtx& ctx, const GroupElement& a, const GroupElement& b) {
    check_kind(ctx, a);
    check_kind(ctx, b);
    GroupElement r;
    r.kind = ctx.kind();
    switch (ctx.kind()) {
        case GroupKind::Z: r.z = a.z + b.z; break;
        case GroupKind::S3: r.perm = perm_mul(a.perm, b.perm); break;
        case GroupKind::Grigorchuk: r.grig = grigorchuk::reduce(a.grig + b.grig); break;
        case GroupKind::Product:
            r.parts = {multiply(ctx.left(), a.parts[0], b.parts[0]), multiply(ctx.right(), a.parts[1], b.parts[1])};
            break;
    }
    return r;
}

GroupElement inverse(const GroupCtx& ctx, const GroupElement& a) {
    check_kind(ctx, a);
    GroupElement r;
    r.kind = ctx.kind();
    switch (ctx.kind()) {
        case GroupKind::Z: r.z = -a.z; break;
        case GroupKind::S3: r.perm = perm_inv(a.perm); break;
        case GroupKind::Grigorchuk: r.grig = grigorchuk::inverse(a.grig); break;
        case GroupKind::Product: r.parts = {inverse(ctx.left(), a.parts[0]), inverse(ctx.right(), a.parts[1])}; break;
    }
    return r;
}

GroupElement evaluate(const GroupCtx& ctx, const GeneratorWord& w) {
    switch (ctx.kind()) {
        case GroupKind::Z: {
            GroupElement r = identity(ctx);
            for (auto s : w.symbols) r.z += s == 0 ? 1 : -1;
            return r;
        }
        case GroupKind::Grigorchuk: {
            std::string letters;
            letters.reserve(w.size());
            for (auto s : w.symbols) {
                if (s >= 4) throw DomainError("generator index out of range");
                letters.push_back(static_cast<char>('a' + s));
            }
            GroupElement r = identity(ctx);
            r.grig = grigorchuk::reduce(letters);
            return r;
        }
        default: {
            GroupElement r = identity(ctx);
            for (auto s : w.symbols) r = multiply(ctx, r, generator_element(ctx, s));
            return r;
        }
    }
}

GroupElement power(const GroupCtx& ctx, const GroupElement& a, std::uint64_t k) {
    GroupElement result = identity(ctx);
    GroupElement base = a;
    while (k) {
        if (k & 1) result = multiply(ctx, result, base);
        k >>= 1;
        if (k) base = multiply(ctx, base, base);
    }
    return result;
}

bool is_identity(const GroupCtx& ctx, const GroupElement& g) {
    check_kind(ctx, g);
    switch (ctx.kind()) {
        case GroupKind::Z: return g.z == 0;
        case GroupKind::S3: return g.perm == kPermId;
        case GroupKind::Grigorchuk: return grigorchuk::is_identity(g.grig);
        case GroupKind::Product: return is_identity(ctx.left(), g.parts[0]) && is_identity(ctx.right(), g.parts[1]);
    }
    return false;
}

bool is_identity(const GroupCtx& ctx, const GeneratorWord& w) {
    for (auto s : w.symbols)
        if (s >= ctx.generator_count()) throw ParseError("generator index out of range for " + ctx.name());
    return is_identity(ctx, evaluate(ctx, w));
}

bool equal(const GroupCtx& ctx, const GroupElement& a, const GroupElement& b) {
    return is_identity(ctx, multiply(ctx, inverse(ctx, a), b));
}

std::string element_key(const GroupCtx& ctx, const GroupElement& g) {
    check_kind(ctx, g);
    switch (ctx.kind()) {
        case GroupKind::Z: return std::to_string(g.z);
        case GroupKind::S3: return perm_string(g.perm);
        case GroupKind::Grigorchuk: return grigorchuk::canonical_key(g.grig);
        case GroupKind::Product:
            return "<" + element_key(ctx.left(), g.parts[0]) + "|" + element_key(ctx.right(), g.parts[1]) + ">";
    }
    return {};
}

GeneratorWord to_word(const GroupCtx& ctx, const GroupElement& g) {
    check_kind(ctx, g);
    GeneratorWord w;
    switch (ctx.kind()) {
        case GroupKind::Z:
            w.symbols.assign(static_cast<std::size_t>(g.z < 0 ? -g.z : g.z), g.z < 0 ? 1u : 0u);
            return w;
        case GroupKind::S3: {
            auto b = ball(ctx, 3);
            auto idx = b->index_of(ctx, g);
            return b->word(*idx);
        }
        case GroupKind::Grigorchuk:
            for (char c : g.grig) w.symbols.push_back(static_cast<std::uint32_t>(c - 'a'));
            return w;
        case GroupKind::Product: {
            const GeneratorWord l = to_word(ctx.left(), g.parts[0]);
            const GeneratorWord r = to_word(ctx.right(), g.parts[1]);
            const std::uint32_t nl = ctx.left().generator_count();
            w.symbols = l.symbols;
            for (auto s : r.symbols) w.symbols.push_back(nl + s);
            return w;
        }
    }
    return w;
}

std::string format_element(const GroupCtx& ctx, const GroupElement& g) {
    check_kind(ctx, g);
    switch (ctx.kind()) {
        case GroupKind::Z: return std::to_string(g.z);
        case GroupKind::S3: return perm_string(g.perm);
        case GroupKind::Grigorchuk: return g.grig.empty() ? std::string("e") : g.grig;
        case GroupKind::Product:
            return "<" + format_element(ctx.left(), g.parts[0]) + "," + format_element(ctx.right(), g.parts[1]) + ">";
    }
    return {};
}

GroupElement parse_element(const GroupCtx& ctx, std::string_view text) {
    const std::string s = trim(text);
    GroupElement g = identity(ctx);
    switch (ctx.kind()) {
        case GroupKind::Z:
            try {
                std::size_t used = 0;
                g.z = std::stoll(normalize_symbol(s), &used);
                if (used != normalize_symbol(s).size()) throw ParseError("bad integer: " + s);
            } catch (const std::logic_error&) {
                throw ParseError("bad integer: " + s);
            }
            return g;
        case GroupKind::S3: g.perm = parse_perm(s); return g;
        case GroupKind::Grigorchuk: g.grig = grigorchuk::reduce(s == "e" ? std::string() : s); return g;
        case GroupKind::Product: {
            if (s.size() < 2 || s.front() != '<' || s.back() != '>') throw ParseError("bad product element: " + s);
            int depth = 0;
            for (std::size_t i = 1; i + 1 < s.size(); ++i) {
                if (s[i] == '<') ++depth;
                if (s[i] == '>') --depth;
                if (s[i] == ',' && depth == 0) {
                    g.parts = {parse_element(ctx.left(), s.substr(1, i - 1)),
                               parse_element(ctx.right(), s.substr(i + 1, s.size() - i - 2))};
                    return g;
                }
            }
            throw ParseError("bad product element: " + s);
        }
    }
    return g;
}

// ---------------------------------------------------------------- metric

std::uint64_t word_norm(const GroupCtx& ctx, const GroupElement& g, std::size_t cap) {
    check_kind(ctx, g);
    switch (ctx.kind()) {
        case GroupKind::Z: return static_cast<std::uint64_t>(g.z < 0 ? -g.z : g.z);
        case GroupKind::Product:
            // the generating set is the disjoint union of the factors' sets
            return word_norm(ctx.left(), g.parts[0], cap) + word_norm(ctx.right(), g.parts[1], cap);
        default: return ctx.ball_cache().norm_of(element_key(ctx, g), cap);
    }
}

std::uint64_t distance(const GroupCtx& ctx, const GroupElement& g, const GroupElement& h, std::size_t cap) {
    return word_norm(ctx, multiply(ctx, inverse(ctx, g), h), cap);
}

std::shared_ptr<const Ball> ball(const GroupCtx& ctx, std::uint64_t n, std::size_t cap) {
    return ctx.ball_cache().snapshot(n, cap);
}

std::optional<GeneratorWord> first_of_norm(const GroupCtx& ctx, std::uint64_t n, std::size_t cap) {
    return ctx.ball_cache().first_of_norm(n, cap);
}

std::optional<std::size_t> Ball::index_of(const GroupCtx& ctx, const GroupElement& g) const {
    return index_of_key(element_key(ctx, g));
}

std::optional<std::size_t> Ball::index_of_key(const std::string& key) const {
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    return std::nullopt;
}

// ---------------------------------------------------------------- torsion

Order element_order(const GroupCtx& ctx, const GroupElement& g, std::uint64_t cap) {
    if (cap < 1) throw DomainError("element_order: cap must be >= 1");
    check_kind(ctx, g);
    switch (ctx.kind()) {
        case GroupKind::Z: return g.z == 0 ? Order{1, false} : Order{0, true};
        case GroupKind::Product: {
            const Order l = element_order(ctx.left(), g.parts[0], cap);
            const Order r = element_order(ctx.right(), g.parts[1], cap);
            if (l.infinite || r.infinite) return Order{0, true};
            const std::uint64_t m = std::lcm(l.value, r.value);
            if (m > cap) throw CapExceeded("order of " + format_element(ctx, g) + " exceeds cap " + std::to_string(cap));
            return Order{m, false};
        }
        default: {
            GroupElement x = g;
            for (std::uint64_t k = 1; k <= cap; ++k) {
                if (is_identity(ctx, x)) return Order{k, false};
                x = multiply(ctx, x, g);
            }
            throw CapExceeded("order of " + format_element(ctx, g) + " exceeds cap " + std::to_string(cap));
        }
    }
}

std::uint64_t torsion_function(const GroupCtx& ctx, std::uint64_t n, std::uint64_t cap) {
    if (!ctx.is_torsion()) throw PreconditionError("torsion_function: " + ctx.name() + " is not a torsion group");
    auto b = ball(ctx, n);
    std::uint64_t best = 1;
    for (const auto& g : b->elements()) best = std::max(best, element_order(ctx, g, cap).value);
    return best;
}

// ---------------------------------------------------------------- linearization

GeneratorWord enumerate_words(const GroupCtx& ctx, const BigNat& index) {
    GeneratorWord w;
    w.symbols = lenlex_decode(index, ctx.generator_count());
    return w;
}

BigNat word_index(const GroupCtx& ctx, const GeneratorWord& w) {
    return lenlex_encode(w.symbols, ctx.generator_count());
}

std::string wp_prefix(const GroupCtx& ctx, std::uint64_t length) {
    std::string bits;
    bits.reserve(length);
    std::vector<std::uint32_t> cur;
    for (std::uint64_t i = 0; i < length; ++i) {
        GeneratorWord w{cur};
        bits.push_back(is_identity(ctx, w) ? '1' : '0');
        lenlex_next(cur, ctx.generator_count());
    }
    return bits;
}

}  // namespace torsionlab
