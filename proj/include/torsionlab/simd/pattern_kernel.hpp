#pragma once

// Batched conditional-multiplier kernel for K(G,A,H) pattern sweeps.
//
// A K-word with trivial shift part acts on a window x by left-multiplying the
// H-coordinate with a product of generators h_j, where factor j is taken iff
// the cell read by site j holds bit b_j. For a window with at most two 1s the
// whole sweep reduces to integer compares and Cayley-table lookups, which is
// what these kernels batch across many windows at once.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace torsionlab::simd {

/// Read sites in word order (leftmost first). `cell` indexes a position of
/// the caller's read set; -1 marks a read outside the window (no effect).
struct SiteList {
    std::vector<std::int32_t> cell;
    std::vector<std::int32_t> h;  // element index in the Cayley table
    std::vector<std::int32_t> bit;

    std::size_t size() const { return cell.size(); }
    void push(std::int32_t c, std::int32_t hh, std::int32_t b) {
        cell.push_back(c);
        h.push_back(hh);
        bit.push_back(b);
    }
};

/// Windows given by the positions of their (at most two) 1s; -1 = absent.
struct WindowBatch {
    std::vector<std::int32_t> one_a;
    std::vector<std::int32_t> one_b;

    std::size_t size() const { return one_a.size(); }
    void push(std::int32_t a, std::int32_t b) {
        one_a.push_back(a);
        one_b.push_back(b);
    }
};

/// Row-major Cayley table of a finite group: table[x * order + y] = x * y.
struct CayleyTable {
    std::int32_t order = 0;
    std::vector<std::int32_t> table;
};

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);
/// Best variant the running CPU supports.
Isa detected_isa();
/// Variant used by apply_sites; defaults to detected_isa().
Isa active_isa();
/// Overrides dispatch (tests and benchmarks). Requesting an unsupported ISA
/// falls back to Scalar.
void set_active_isa(Isa isa);

/// acc[w] <- (product over sites, rightmost acting first) * acc[w].
void apply_sites_scalar(const SiteList& sites, const CayleyTable& table, const WindowBatch& windows,
                        std::span<std::int32_t> acc);
void apply_sites_avx2(const SiteList& sites, const CayleyTable& table, const WindowBatch& windows,
                      std::span<std::int32_t> acc);
void apply_sites(const SiteList& sites, const CayleyTable& table, const WindowBatch& windows,
                 std::span<std::int32_t> acc);

}  // namespace torsionlab::simd
