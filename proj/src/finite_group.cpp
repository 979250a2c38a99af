#include "torsionlab/finite_group.hpp"

#include <map>
#include <mutex>

#include "torsionlab/errors.hpp"

namespace torsionlab {

std::int32_t FiniteGroupTable::index_of(const GroupCtx& ctx, const GroupElement& g) const {
    return index.at(element_key(ctx, g));
}

namespace {

std::shared_ptr<const FiniteGroupTable> build(const GroupCtx& ctx) {
    auto t = std::make_shared<FiniteGroupTable>();
    // a finite group's ball stops growing; its diameter is below its order
    std::size_t prev = 0;
    std::shared_ptr<const Ball> b;
    for (std::uint64_t r = 0;; ++r) {
        b = ball(ctx, r);
        if (r > 0 && b->size() == prev) break;
        prev = b->size();
    }
    const auto n = static_cast<std::int32_t>(b->size());
    for (std::int32_t i = 0; i < n; ++i) {
        t->elements.push_back(b->element(static_cast<std::size_t>(i)));
        t->index.emplace(b->key(static_cast<std::size_t>(i)), i);
    }
    t->cayley.order = n;
    t->cayley.table.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (std::int32_t x = 0; x < n; ++x)
        for (std::int32_t y = 0; y < n; ++y)
            t->cayley.table[static_cast<std::size_t>(x * n + y)] =
                t->index_of(ctx, multiply(ctx, t->elements[static_cast<std::size_t>(x)],
                                          t->elements[static_cast<std::size_t>(y)]));
    for (std::uint32_t s = 0; s < ctx.generator_count(); ++s)
        t->generator.push_back(t->index_of(ctx, generator_element(ctx, s)));
    for (const auto& g : t->elements) t->order.push_back(element_order(ctx, g, static_cast<std::uint64_t>(n)).value);
    return t;
}

}  // namespace

std::shared_ptr<const FiniteGroupTable> finite_table(const GroupCtx& ctx) {
    if (!ctx.is_finite()) return nullptr;
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const FiniteGroupTable>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[ctx.name()];
    if (!slot) slot = build(ctx);
    return slot;
}

}  // namespace torsionlab
