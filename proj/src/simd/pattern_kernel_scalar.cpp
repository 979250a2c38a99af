#include "torsionlab/simd/pattern_kernel.hpp"

namespace torsionlab::simd {

void apply_sites_scalar(const SiteList& sites, const CayleyTable& table, const WindowBatch& windows,
                        std::span<std::int32_t> acc) {
    const std::int32_t n = table.order;
    const std::int32_t* mul = table.table.data();
    for (std::size_t w = 0; w < windows.size(); ++w) {
        const std::int32_t a = windows.one_a[w];
        const std::int32_t b = windows.one_b[w];
        std::int32_t x = acc[w];
        for (std::size_t j = sites.size(); j-- > 0;) {
            const std::int32_t c = sites.cell[j];
            if (c < 0) continue;
            const std::int32_t value = (c == a || c == b) ? 1 : 0;
            if (value == sites.bit[j]) x = mul[sites.h[j] * n + x];
        }
        acc[w] = x;
    }
}

}  // namespace torsionlab::simd
