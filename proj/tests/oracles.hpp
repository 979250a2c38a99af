#pragma once

// Brute-force reference implementations used only by tests. None of these
// share code paths with the library routines they check.

#include <cstdint>
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// Action of a Grigorchuk letter on a binary vertex (right action, first
// letter of the vertex is the top level).
inline void grig_act_letter(char x, std::string& v, std::size_t at) {
    if (at >= v.size()) return;
    switch (x) {
        case 'a': v[at] = v[at] == '0' ? '1' : '0'; return;
        case 'b': grig_act_letter(v[at] == '0' ? 'a' : 'c', v, at + 1); return;
        case 'c': grig_act_letter(v[at] == '0' ? 'a' : 'd', v, at + 1); return;
        case 'd':
            if (v[at] == '1') grig_act_letter('b', v, at + 1);
            return;
        default: return;
    }
}

inline std::string grig_act(const std::string& word, std::string v) {
    for (char x : word) grig_act_letter(x, v, 0);
    return v;
}

/// Images of all 2^depth vertices, as one string (a permutation key).
inline std::string grig_level_action(const std::string& word, unsigned depth) {
    std::string key;
    for (std::uint32_t i = 0; i < (1u << depth); ++i) {
        std::string v(depth, '0');
        for (unsigned b = 0; b < depth; ++b) v[b] = (i >> (depth - 1 - b)) & 1 ? '1' : '0';
        key += grig_act(word, v);
    }
    return key;
}

inline bool grig_trivial_at_depth(const std::string& word, unsigned depth) {
    for (std::uint32_t i = 0; i < (1u << depth); ++i) {
        std::string v(depth, '0');
        for (unsigned b = 0; b < depth; ++b) v[b] = (i >> (depth - 1 - b)) & 1 ? '1' : '0';
        if (grig_act(word, v) != v) return false;
    }
    return true;
}

/// Sphere sizes of the Grigorchuk Cayley graph, with equality approximated by
/// the depth-`depth` action (exact while the radius is small against depth).
inline std::vector<std::size_t> grig_sphere_sizes(unsigned radius, unsigned depth) {
    std::map<std::string, std::string> seen;  // action key -> word
    std::vector<std::string> frontier{""};
    seen[grig_level_action("", depth)] = "";
    std::vector<std::size_t> sizes{1};
    for (unsigned r = 1; r <= radius; ++r) {
        std::vector<std::string> next;
        for (const auto& w : frontier)
            for (char x : std::string("abcd")) {
                std::string nw = w + x;
                auto k = grig_level_action(nw, depth);
                if (seen.emplace(k, nw).second) next.push_back(nw);
            }
        sizes.push_back(next.size());
        frontier = std::move(next);
    }
    return sizes;
}

/// Order of a Grigorchuk word under the depth-`depth` action.
inline std::uint64_t grig_order_at_depth(const std::string& word, unsigned depth, std::uint64_t cap) {
    std::string p = word;
    for (std::uint64_t k = 1; k <= cap; ++k, p += word)
        if (grig_trivial_at_depth(p, depth)) return k;
    return 0;
}

// ---------------------------------------------------------------- Z and S3

/// Number of 0/1 assignments on {-n..n} with at most two 1s whose distance
/// avoids `a`, by exhaustive enumeration.
inline std::size_t z_language_size(int n, const std::set<int>& a) {
    const int m = 2 * n + 1;
    std::size_t count = 0;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> ones;
        for (int i = 0; i < m; ++i)
            if (mask >> i & 1) ones.push_back(i);
        if (ones.size() > 2) continue;
        if (ones.size() == 2 && a.contains(ones[1] - ones[0])) continue;
        ++count;
    }
    return count;
}

using Perm3 = std::array<int, 3>;

inline Perm3 compose(const Perm3& f, const Perm3& g) { return {f[g[0]], f[g[1]], f[g[2]]}; }

/// S3 generators in the library's order: (12), (23), (13) on {0,1,2}.
inline Perm3 s3_generator(int i) {
    switch (i) {
        case 0: return {1, 0, 2};
        case 1: return {0, 2, 1};
        default: return {2, 1, 0};
    }
}

/// One letter of a K(Z, A, S3) word: shift by +-1, or conditional multiplier.
struct ZLetter {
    int shift = 0;  // nonzero for a shift
    int gen = 0;
    int bit = 0;
};

/// Applies a K(Z, A, S3) word right to left to a configuration given by the
/// positions of its 1s, moving the configuration itself.
inline std::pair<std::set<long>, Perm3> zs3_act(const std::vector<ZLetter>& word, std::set<long> ones) {
    Perm3 h{0, 1, 2};
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (it->shift != 0) {
            std::set<long> moved;
            for (long o : ones) moved.insert(o + it->shift);
            ones = std::move(moved);
        } else if ((ones.contains(0) ? 1 : 0) == it->bit) {
            h = compose(s3_generator(it->gen), h);
        }
    }
    return {ones, h};
}

/// Whether the word is trivial on every configuration with at most two 1s
/// inside [-r, r] and pair distance outside `a`.
inline bool zs3_trivial(const std::vector<ZLetter>& word, long r, const std::set<long>& a) {
    std::vector<std::set<long>> configs{{}};
    for (long i = -r; i <= r; ++i) configs.push_back({i});
    for (long i = -r; i <= r; ++i)
        for (long j = i + 1; j <= r; ++j)
            if (!a.contains(j - i)) configs.push_back({i, j});
    for (const auto& c : configs) {
        auto [moved, h] = zs3_act(word, c);
        if (moved != c || h != Perm3{0, 1, 2}) return false;
    }
    return true;
}

}  // namespace oracle
