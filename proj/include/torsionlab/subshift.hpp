#pragma once

// The subshift X_A on a group G: configurations with at most two 1s whose
// mutual distance avoids A. Everything here works from a finite prefix of
// the characteristic sequence of A.

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "torsionlab/group.hpp"

namespace torsionlab {

/// Finite 0/1 prefix of a characteristic sequence; bit i = 1 iff i in A.
class OraclePrefix {
public:
    OraclePrefix() = default;
    explicit OraclePrefix(std::string bits);
    static OraclePrefix zeros(std::size_t n) { return OraclePrefix(std::string(n, '0')); }
    /// Characteristic prefix of length n of a finite set.
    static OraclePrefix from_set(const std::set<std::uint64_t>& members, std::size_t n);

    std::size_t size() const { return bits_.size(); }
    bool bit(std::size_t i) const { return bits_.at(i) == '1'; }
    const std::string& bits() const { return bits_; }
    OraclePrefix truncated(std::size_t n) const;
    /// Right-pads with zeros up to length n.
    OraclePrefix padded(std::size_t n) const;
    bool any_one_below(std::size_t n) const;

    friend bool operator==(const OraclePrefix&, const OraclePrefix&) = default;

private:
    std::string bits_;
};

/// Letterwise u <= v on prefixes of equal length.
bool letterwise_leq(const OraclePrefix& u, const OraclePrefix& v);

/// Ordered list of group elements a pattern is defined on: either a canonical
/// ball or an explicit list (shifted windows, partial patterns).
class Domain {
public:
    static std::shared_ptr<const Domain> of_ball(std::shared_ptr<const Ball> ball);
    static std::shared_ptr<const Domain> of_elements(GroupCtx ctx, std::vector<GroupElement> elements,
                                                     std::string name = "explicit");

    const GroupCtx& ctx() const { return ctx_; }
    std::size_t size() const;
    const GroupElement& element(std::size_t i) const;
    std::optional<std::size_t> index_of(const GroupElement& g) const;
    /// Radius when the domain is a canonical ball.
    std::optional<std::uint64_t> radius() const;
    const std::string& name() const { return name_; }

private:
    explicit Domain(GroupCtx ctx) : ctx_(std::move(ctx)) {}
    GroupCtx ctx_;
    std::shared_ptr<const Ball> ball_;
    std::vector<GroupElement> elements_;
    std::unordered_map<std::string, std::size_t> index_;
    std::string name_;
};

/// Dense 0/1 assignment over a domain.
struct Pattern {
    std::shared_ptr<const Domain> domain;
    std::vector<std::uint8_t> values;

    std::vector<std::size_t> ones() const;
    std::size_t count_ones() const;
};

Pattern zero_pattern(std::shared_ptr<const Domain> domain);
Pattern pattern_with_ones(std::shared_ptr<const Domain> domain, std::initializer_list<std::size_t> ones);

/// Text form "ball(<group>,<radius>): (0,0) (1,1) ..." against a named ball.
std::string format_pattern(const Pattern& p);
Pattern parse_pattern(const GroupCtx& ctx, std::string_view text);

enum class Legality { Legal, Illegal, Unknown };

struct LegalityResult {
    Legality status = Legality::Legal;
    /// For Unknown: the distance the prefix was too short to decide.
    std::uint64_t distance = 0;
};

LegalityResult pattern_legal(const GroupCtx& ctx, const OraclePrefix& prefix, const Pattern& p);

/// All X_A-legal patterns over ball(ctx, n): zero pattern, then single 1s by
/// position, then pairs in lexicographic order. Needs |prefix| >= 2n+1.
std::vector<Pattern> enumerate_language(const GroupCtx& ctx, const OraclePrefix& prefix, std::uint64_t n);

/// Enumerates forbidden two-ones windows of X_A by dovetailing an enumeration
/// of A against growing balls. Each pair {g,h} is emitted once, as a pattern
/// over the ball current at the time it was found.
class ForbiddenPatternStream {
public:
    using Enumerator = std::function<std::optional<std::uint64_t>()>;

    ForbiddenPatternStream(GroupCtx ctx, Enumerator members, std::optional<std::uint64_t> max_radius = {});
    /// Enumerator over a fixed list.
    static Enumerator from_list(std::vector<std::uint64_t> members);

    /// Next forbidden window; nullopt once the stream is provably exhausted
    /// (finite enumerator and either A empty or the radius bound reached).
    std::optional<Pattern> next();

private:
    void advance_stage();

    GroupCtx ctx_;
    Enumerator members_;
    std::optional<std::uint64_t> max_radius_;
    bool enumerator_done_ = false;
    std::vector<std::uint64_t> known_;
    std::uint64_t radius_ = 0;
    bool started_ = false;
    std::set<std::pair<std::string, std::string>> emitted_;
    std::deque<Pattern> queue_;
};

}  // namespace torsionlab
