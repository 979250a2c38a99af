#pragma once

// Finitely generated groups with decidable word problem: Z, S3, the
// Grigorchuk group, and direct products of these.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "torsionlab/words.hpp"

namespace torsionlab {

enum class GroupKind { Z, S3, Grigorchuk, Product };

class BallCache;

/// A group together with its ordered symmetric generating set.
///
/// Copies share the same immutable description and the same internal ball
/// cache. Two contexts are interchangeable iff their names agree.
class GroupCtx {
public:
    static GroupCtx integers();
    static GroupCtx s3();
    static GroupCtx grigorchuk();
    static GroupCtx product(const GroupCtx& left, const GroupCtx& right);

    /// "Z", "S3", "grigorchuk", or factors joined by " x " (left associative).
    static GroupCtx parse(std::string_view id);

    GroupKind kind() const;
    const std::string& name() const;

    std::uint32_t generator_count() const;
    const std::string& generator(std::uint32_t i) const;
    std::span<const std::string> generators() const;
    std::uint32_t inverse_of(std::uint32_t gen) const;
    /// Throws ParseError for unknown symbols.
    std::uint32_t symbol_index(std::string_view symbol) const;

    /// Product factors; throws ContextError when kind() != Product.
    const GroupCtx& left() const;
    const GroupCtx& right() const;
    /// For product generators: (0 = left, 1 = right, index in that factor).
    std::pair<int, std::uint32_t> factor_generator(std::uint32_t gen) const;

    /// Every element has finite order (S3, Grigorchuk, and products of those).
    bool is_torsion() const;
    bool is_finite() const;

    BallCache& ball_cache() const;

    friend bool operator==(const GroupCtx& a, const GroupCtx& b) { return a.name() == b.name(); }

private:
    struct Impl;
    explicit GroupCtx(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// A word over a context's generating set, stored as generator indices.
struct GeneratorWord {
    std::vector<std::uint32_t> symbols;

    std::size_t size() const { return symbols.size(); }
    bool empty() const { return symbols.empty(); }
    friend bool operator==(const GeneratorWord&, const GeneratorWord&) = default;
};

/// Canonical per-kind value. For the Grigorchuk group the stored word is only
/// reduced, so equality must be decided with `equal` / `is_identity`.
struct GroupElement {
    GroupKind kind = GroupKind::Z;
    std::int64_t z = 0;
    std::array<std::uint8_t, 3> perm{0, 1, 2};  // image of 0,1,2
    std::string grig;                            // reduced word over a,b,c,d
    std::vector<GroupElement> parts;             // product coordinates
};

GeneratorWord parse_word(const GroupCtx& ctx, std::string_view text);
std::string format_word(const GroupCtx& ctx, const GeneratorWord& w);
GeneratorWord inverse_word(const GroupCtx& ctx, const GeneratorWord& w);
GeneratorWord concat(const GeneratorWord& a, const GeneratorWord& b);
/// Cancels adjacent generator/inverse pairs; valid in every group.
GeneratorWord free_reduce(const GroupCtx& ctx, GeneratorWord w);

GroupElement identity(const GroupCtx& ctx);
GroupElement generator_element(const GroupCtx& ctx, std::uint32_t gen);
GroupElement multiply(const GroupCtx& ctx, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupCtx& ctx, const GroupElement& a);
GroupElement evaluate(const GroupCtx& ctx, const GeneratorWord& w);
GroupElement power(const GroupCtx& ctx, const GroupElement& a, std::uint64_t k);

bool is_identity(const GroupCtx& ctx, const GeneratorWord& w);
bool is_identity(const GroupCtx& ctx, const GroupElement& g);
bool equal(const GroupCtx& ctx, const GroupElement& a, const GroupElement& b);

/// Canonical hashable key: equal elements have equal keys and vice versa.
std::string element_key(const GroupCtx& ctx, const GroupElement& g);
/// Some word evaluating to g (not necessarily geodesic for Grigorchuk).
GeneratorWord to_word(const GroupCtx& ctx, const GroupElement& g);
std::string format_element(const GroupCtx& ctx, const GroupElement& g);
/// Parses "5" / "-3" for Z, "(123)" for S3, a word for Grigorchuk, "<x,y>" for products.
GroupElement parse_element(const GroupCtx& ctx, std::string_view text);

inline constexpr std::size_t kDefaultBallCap = 2'000'000;

std::uint64_t word_norm(const GroupCtx& ctx, const GroupElement& g, std::size_t cap = kDefaultBallCap);
std::uint64_t distance(const GroupCtx& ctx, const GroupElement& g, const GroupElement& h,
                       std::size_t cap = kDefaultBallCap);

/// The radius-n ball in canonical order: BFS layer, then shortlex of the
/// first-discovered word. Index 0 is the identity.
class Ball {
public:
    std::uint64_t radius() const { return radius_; }
    std::size_t size() const { return elements_.size(); }
    const GroupElement& element(std::size_t i) const { return elements_[i]; }
    const GeneratorWord& word(std::size_t i) const { return words_[i]; }
    std::uint32_t norm(std::size_t i) const { return norms_[i]; }
    std::span<const GroupElement> elements() const { return elements_; }
    /// Index of g if its norm is at most radius().
    std::optional<std::size_t> index_of(const GroupCtx& ctx, const GroupElement& g) const;
    std::optional<std::size_t> index_of_key(const std::string& key) const;
    const std::string& key(std::size_t i) const { return keys_[i]; }
    const GroupCtx& ctx() const { return ctx_; }

private:
    friend class BallCache;
    explicit Ball(GroupCtx ctx) : ctx_(std::move(ctx)) {}
    GroupCtx ctx_;
    std::uint64_t radius_ = 0;
    std::vector<GroupElement> elements_;
    std::vector<GeneratorWord> words_;
    std::vector<std::uint32_t> norms_;
    std::vector<std::string> keys_;
    std::unordered_map<std::string, std::size_t> index_;
};

std::shared_ptr<const Ball> ball(const GroupCtx& ctx, std::uint64_t n, std::size_t cap = kDefaultBallCap);
/// Word of the first element of norm n in ball order, without building a snapshot.
std::optional<GeneratorWord> first_of_norm(const GroupCtx& ctx, std::uint64_t n, std::size_t cap = kDefaultBallCap);

struct Order {
    std::uint64_t value = 0;
    bool infinite = false;
    friend bool operator==(const Order&, const Order&) = default;
};

Order element_order(const GroupCtx& ctx, const GroupElement& g, std::uint64_t cap);
std::uint64_t torsion_function(const GroupCtx& ctx, std::uint64_t n, std::uint64_t cap);

GeneratorWord enumerate_words(const GroupCtx& ctx, const BigNat& index);
BigNat word_index(const GroupCtx& ctx, const GeneratorWord& w);

/// Characteristic prefix of the linearized word problem: bit i = 1 iff the
/// i-th length-lex word is the identity.
std::string wp_prefix(const GroupCtx& ctx, std::uint64_t length);

}  // namespace torsionlab
