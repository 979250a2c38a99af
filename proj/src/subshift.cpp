#include "torsionlab/subshift.hpp"

#include <algorithm>
#include <sstream>

#include "torsionlab/errors.hpp"

namespace torsionlab {

OraclePrefix::OraclePrefix(std::string bits) : bits_(std::move(bits)) {
    for (char c : bits_)
        if (c != '0' && c != '1') throw ParseError("oracle prefix must be a 0/1 string");
}

OraclePrefix OraclePrefix::from_set(const std::set<std::uint64_t>& members, std::size_t n) {
    std::string bits(n, '0');
    for (auto m : members)
        if (m < n) bits[m] = '1';
    return OraclePrefix(std::move(bits));
}

OraclePrefix OraclePrefix::truncated(std::size_t n) const {
    return OraclePrefix(bits_.substr(0, std::min(n, bits_.size())));
}

OraclePrefix OraclePrefix::padded(std::size_t n) const {
    std::string b = bits_;
    if (b.size() < n) b.resize(n, '0');
    return OraclePrefix(std::move(b));
}

bool OraclePrefix::any_one_below(std::size_t n) const {
    const std::size_t end = std::min(n, bits_.size());
    return bits_.find('1') < end;
}

bool letterwise_leq(const OraclePrefix& u, const OraclePrefix& v) {
    if (u.size() != v.size()) throw PreconditionError("letterwise comparison needs equal lengths");
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u.bit(i) && !v.bit(i)) return false;
    return true;
}

// ---------------------------------------------------------------- domains

std::shared_ptr<const Domain> Domain::of_ball(std::shared_ptr<const Ball> ball) {
    auto d = std::shared_ptr<Domain>(new Domain(ball->ctx()));
    d->name_ = "ball(" + ball->ctx().name() + "," + std::to_string(ball->radius()) + ")";
    d->ball_ = std::move(ball);
    return d;
}

std::shared_ptr<const Domain> Domain::of_elements(GroupCtx ctx, std::vector<GroupElement> elements, std::string name) {
    auto d = std::shared_ptr<Domain>(new Domain(ctx));
    d->name_ = std::move(name);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (!d->index_.emplace(element_key(ctx, elements[i]), i).second)
            throw DomainError("pattern domain lists an element twice");
    }
    d->elements_ = std::move(elements);
    return d;
}

std::size_t Domain::size() const { return ball_ ? ball_->size() : elements_.size(); }

const GroupElement& Domain::element(std::size_t i) const { return ball_ ? ball_->element(i) : elements_.at(i); }

std::optional<std::size_t> Domain::index_of(const GroupElement& g) const {
    const std::string key = element_key(ctx_, g);
    if (ball_) return ball_->index_of_key(key);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    return std::nullopt;
}

std::optional<std::uint64_t> Domain::radius() const {
    if (ball_) return ball_->radius();
    return std::nullopt;
}

// ---------------------------------------------------------------- patterns

std::vector<std::size_t> Pattern::ones() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i]) out.push_back(i);
    return out;
}

std::size_t Pattern::count_ones() const {
    return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](auto v) { return v != 0; }));
}

Pattern zero_pattern(std::shared_ptr<const Domain> domain) {
    Pattern p;
    p.values.assign(domain->size(), 0);
    p.domain = std::move(domain);
    return p;
}

Pattern pattern_with_ones(std::shared_ptr<const Domain> domain, std::initializer_list<std::size_t> ones) {
    Pattern p = zero_pattern(std::move(domain));
    for (auto i : ones) p.values.at(i) = 1;
    return p;
}

std::string format_pattern(const Pattern& p) {
    std::ostringstream out;
    out << p.domain->name() << ":";
    for (std::size_t i = 0; i < p.values.size(); ++i) out << " (" << i << "," << int(p.values[i]) << ")";
    return out.str();
}

Pattern parse_pattern(const GroupCtx& ctx, std::string_view text) {
    const std::string s(text);
    const std::string head = "ball(";
    if (s.rfind(head, 0) != 0) throw ParseError("pattern must start with ball(<group>,<radius>):");
    const std::size_t colon = s.find("):");
    const std::size_t comma = s.rfind(',', colon);
    if (colon == std::string::npos || comma == std::string::npos || comma < head.size())
        throw ParseError("bad pattern header");
    if (s.substr(head.size(), comma - head.size()) != ctx.name()) throw ContextError("pattern names another group");
    const std::uint64_t radius = std::stoull(s.substr(comma + 1, colon - comma - 1));
    Pattern p = zero_pattern(Domain::of_ball(ball(ctx, radius)));
    std::istringstream in(s.substr(colon + 2));
    std::string tok;
    while (in >> tok) {
        std::size_t idx = 0;
        int bit = 0;
        if (std::sscanf(tok.c_str(), "(%zu,%d)", &idx, &bit) != 2 || idx >= p.values.size() || (bit != 0 && bit != 1))
            throw ParseError("bad pattern entry: " + tok);
        p.values[idx] = static_cast<std::uint8_t>(bit);
    }
    return p;
}

// ---------------------------------------------------------------- legality

LegalityResult pattern_legal(const GroupCtx& ctx, const OraclePrefix& prefix, const Pattern& p) {
    if (!(p.domain->ctx() == ctx)) throw ContextError("pattern belongs to another group");
    const auto ones = p.ones();
    if (ones.size() > 2) return {Legality::Illegal, 0};
    if (ones.size() < 2) return {Legality::Legal, 0};
    // No 1 can be at distance < 2r+1 when the domain is B_r.
    if (auto r = p.domain->radius(); r && prefix.size() >= 2 * *r + 1 && !prefix.any_one_below(2 * *r + 1))
        return {Legality::Legal, 0};
    const std::uint64_t d = distance(ctx, p.domain->element(ones[0]), p.domain->element(ones[1]));
    if (d >= prefix.size()) return {Legality::Unknown, d};
    return {prefix.bit(d) ? Legality::Illegal : Legality::Legal, d};
}

std::vector<Pattern> enumerate_language(const GroupCtx& ctx, const OraclePrefix& prefix, std::uint64_t n) {
    if (prefix.size() < 2 * n + 1)
        throw PreconditionError("enumerate_language: radius " + std::to_string(n) + " needs an oracle prefix of length " +
                                std::to_string(2 * n + 1) + " (distances up to " + std::to_string(2 * n) + ")");
    auto dom = Domain::of_ball(ball(ctx, n));
    const std::size_t m = dom->size();
    std::vector<Pattern> out;
    out.push_back(zero_pattern(dom));
    for (std::size_t i = 0; i < m; ++i) out.push_back(pattern_with_ones(dom, {i}));
    const bool any_one = prefix.any_one_below(2 * n + 1);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            if (any_one && prefix.bit(distance(ctx, dom->element(i), dom->element(j)))) continue;
            out.push_back(pattern_with_ones(dom, {i, j}));
        }
    return out;
}

// ---------------------------------------------------------------- forbidden stream

ForbiddenPatternStream::ForbiddenPatternStream(GroupCtx ctx, Enumerator members, std::optional<std::uint64_t> max_radius)
    : ctx_(std::move(ctx)), members_(std::move(members)), max_radius_(max_radius) {}

ForbiddenPatternStream::Enumerator ForbiddenPatternStream::from_list(std::vector<std::uint64_t> members) {
    auto state = std::make_shared<std::pair<std::vector<std::uint64_t>, std::size_t>>(std::move(members), 0);
    return [state]() -> std::optional<std::uint64_t> {
        if (state->second >= state->first.size()) return std::nullopt;
        return state->first[state->second++];
    };
}

void ForbiddenPatternStream::advance_stage() {
    if (started_ && (!max_radius_ || radius_ < *max_radius_)) ++radius_;
    started_ = true;
    if (!enumerator_done_) {
        if (auto a = members_()) {
            known_.push_back(*a);
        } else {
            enumerator_done_ = true;
        }
    }
    if (known_.empty()) return;
    auto dom = Domain::of_ball(ball(ctx_, radius_));
    const std::set<std::uint64_t> wanted(known_.begin(), known_.end());
    const auto* b = ball(ctx_, radius_).get();
    for (std::size_t i = 0; i < dom->size(); ++i)
        for (std::size_t j = i + 1; j < dom->size(); ++j) {
            auto key = std::make_pair(b->key(i), b->key(j));
            if (emitted_.contains(key)) continue;
            if (!wanted.contains(distance(ctx_, dom->element(i), dom->element(j)))) continue;
            emitted_.insert(std::move(key));
            queue_.push_back(pattern_with_ones(dom, {i, j}));
        }
}

std::optional<Pattern> ForbiddenPatternStream::next() {
    while (queue_.empty()) {
        if (enumerator_done_ && (known_.empty() || (started_ && max_radius_ && radius_ >= *max_radius_)))
            return std::nullopt;
        advance_stage();
    }
    Pattern p = std::move(queue_.front());
    queue_.pop_front();
    return p;
}

}  // namespace torsionlab
