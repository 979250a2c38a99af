// Compiled with -mavx2; only reached through dispatch after a CPU check.
#include "torsionlab/simd/pattern_kernel.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define TORSIONLAB_HAVE_AVX2_KERNEL 1
#endif

namespace torsionlab::simd {

#if defined(TORSIONLAB_HAVE_AVX2_KERNEL)

void apply_sites_avx2(const SiteList& sites, const CayleyTable& table, const WindowBatch& windows,
                      std::span<std::int32_t> acc) {
    const std::int32_t n = table.order;
    const int* mul = reinterpret_cast<const int*>(table.table.data());
    const std::size_t count = windows.size();
    const std::size_t vec_end = count - count % 8;
    const __m256i all_ones = _mm256_set1_epi32(-1);

    for (std::size_t w = 0; w < vec_end; w += 8) {
        const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(windows.one_a.data() + w));
        const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(windows.one_b.data() + w));
        __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc.data() + w));
        for (std::size_t j = sites.size(); j-- > 0;) {
            const std::int32_t c = sites.cell[j];
            if (c < 0) continue;
            const __m256i cv = _mm256_set1_epi32(c);
            __m256i hit = _mm256_or_si256(_mm256_cmpeq_epi32(a, cv), _mm256_cmpeq_epi32(b, cv));
            if (sites.bit[j] == 0) hit = _mm256_xor_si256(hit, all_ones);
            if (_mm256_testz_si256(hit, hit)) continue;
            const __m256i idx = _mm256_add_epi32(x, _mm256_set1_epi32(sites.h[j] * n));
            const __m256i prod = _mm256_i32gather_epi32(mul, idx, 4);
            x = _mm256_blendv_epi8(x, prod, hit);
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc.data() + w), x);
    }

    if (vec_end < count) {
        WindowBatch tail;
        tail.one_a.assign(windows.one_a.begin() + static_cast<std::ptrdiff_t>(vec_end), windows.one_a.end());
        tail.one_b.assign(windows.one_b.begin() + static_cast<std::ptrdiff_t>(vec_end), windows.one_b.end());
        apply_sites_scalar(sites, table, tail, acc.subspan(vec_end));
    }
}

#else

void apply_sites_avx2(const SiteList& sites, const CayleyTable& table, const WindowBatch& windows,
                      std::span<std::int32_t> acc) {
    apply_sites_scalar(sites, table, windows, acc);
}

#endif

}  // namespace torsionlab::simd
