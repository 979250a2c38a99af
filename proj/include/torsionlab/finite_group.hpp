#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "torsionlab/group.hpp"
#include "torsionlab/simd/pattern_kernel.hpp"

namespace torsionlab {

/// Enumerated finite group: elements in ball order (identity = 0), Cayley
/// table, generator images and element orders.
struct FiniteGroupTable {
    std::vector<GroupElement> elements;
    std::unordered_map<std::string, std::int32_t> index;
    std::vector<std::int32_t> generator;  // generator symbol -> element index
    std::vector<std::uint64_t> order;
    simd::CayleyTable cayley;

    std::int32_t index_of(const GroupCtx& ctx, const GroupElement& g) const;
};

/// Cached per context; nullptr for infinite groups.
std::shared_ptr<const FiniteGroupTable> finite_table(const GroupCtx& ctx);

}  // namespace torsionlab
