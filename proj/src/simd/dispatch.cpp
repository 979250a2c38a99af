#include <atomic>

#include "torsionlab/simd/pattern_kernel.hpp"

namespace torsionlab::simd {

namespace {

Isa probe() {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
    return Isa::Scalar;
}

std::atomic<Isa>& active() {
    static std::atomic<Isa> isa{detected_isa()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
    static const Isa isa = probe();
    return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) isa = Isa::Scalar;
    active().store(isa, std::memory_order_relaxed);
}

void apply_sites(const SiteList& sites, const CayleyTable& table, const WindowBatch& windows,
                 std::span<std::int32_t> acc) {
    if (active_isa() == Isa::Avx2) {
        apply_sites_avx2(sites, table, windows, acc);
    } else {
        apply_sites_scalar(sites, table, windows, acc);
    }
}

}  // namespace torsionlab::simd
