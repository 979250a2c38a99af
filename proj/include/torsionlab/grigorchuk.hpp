#pragma once

// Word problem of the first Grigorchuk group via wreath recursion.
//
// Words are strings over {a,b,c,d}. Elements act on the binary tree on the
// right: a swaps the first letter, b = (a, c), c = (a, d), d = (1, b).

#include <string>
#include <string_view>
#include <utility>

namespace torsionlab::grigorchuk {

/// Reduced form: no "aa", no two adjacent letters from {b,c,d}; products in
/// {1,b,c,d} are merged (bc = d, cd = b, bd = c, xx = 1).
std::string reduce(std::string_view w);

/// Sections of w at the two level-1 vertices and the root permutation
/// (true = swap). The sections are returned reduced.
struct Split {
    bool swap = false;
    std::string left;
    std::string right;
};
Split split(std::string_view reduced);

bool is_identity(std::string_view w);

/// Canonical portrait of the element: equal elements get equal keys.
std::string canonical_key(std::string_view w);

std::string inverse(std::string_view w);

}  // namespace torsionlab::grigorchuk
