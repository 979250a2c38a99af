#include "torsionlab/words.hpp"

#include <algorithm>
#include <limits>

#include "torsionlab/errors.hpp"

namespace torsionlab {

namespace {

bool is_pow2(std::uint32_t s) { return s != 0 && (s & (s - 1)) == 0; }

unsigned log2u(std::uint32_t s) {
    unsigned k = 0;
    while ((1u << k) < s) ++k;
    return k;
}

}  // namespace

std::vector<std::uint32_t> lenlex_decode(BigNat index, std::uint32_t s) {
    if (s == 0) throw DomainError("lenlex_decode: empty alphabet");
    std::vector<std::uint32_t> out;
    if (index == 0) return out;
    if (s == 1) {
        out.assign(static_cast<std::size_t>(index), 0u);
        return out;
    }
    // Find the length L: words shorter than L number (s^L - 1)/(s - 1).
    BigNat shorter = 0;
    BigNat layer = 1;
    std::size_t len = 0;
    while (index >= shorter + layer) {
        shorter += layer;
        layer *= s;
        ++len;
    }
    BigNat offset = index - shorter;
    out.resize(len);
    if (is_pow2(s)) {
        const unsigned k = log2u(s);
        for (std::size_t i = 0; i < len; ++i) {
            std::uint32_t d = 0;
            const std::size_t base = (len - 1 - i) * k;
            for (unsigned b = 0; b < k; ++b)
                if (boost::multiprecision::bit_test(offset, static_cast<unsigned>(base + b))) d |= 1u << b;
            out[i] = d;
        }
        return out;
    }
    for (std::size_t i = len; i-- > 0;) {
        out[i] = static_cast<std::uint32_t>(offset % s);
        offset /= s;
    }
    return out;
}

BigNat lenlex_encode(std::span<const std::uint32_t> word, std::uint32_t s) {
    if (s == 0) throw DomainError("lenlex_encode: empty alphabet");
    for (auto d : word)
        if (d >= s) throw DomainError("lenlex_encode: symbol out of range");
    if (s == 1) return BigNat(word.size());
    BigNat shorter = 0;
    BigNat layer = 1;
    for (std::size_t i = 0; i < word.size(); ++i) {
        shorter += layer;
        layer *= s;
    }
    BigNat offset = 0;
    if (is_pow2(s)) {
        const unsigned k = log2u(s);
        const std::size_t len = word.size();
        for (std::size_t i = 0; i < len; ++i) {
            const std::size_t base = (len - 1 - i) * k;
            for (unsigned b = 0; b < k; ++b)
                if (word[i] & (1u << b)) boost::multiprecision::bit_set(offset, static_cast<unsigned>(base + b));
        }
    } else {
        for (auto d : word) offset = offset * s + d;
    }
    return shorter + offset;
}

void lenlex_next(std::vector<std::uint32_t>& word, std::uint32_t s) {
    for (std::size_t i = word.size(); i-- > 0;) {
        if (word[i] + 1 < s) {
            ++word[i];
            return;
        }
        word[i] = 0;
    }
    // all digits wrapped: first word of the next length
    word.insert(word.begin(), 0u);
}

std::uint64_t lenlex_count_upto(std::uint64_t max_len, std::uint32_t s) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0, layer = 1;
    for (std::uint64_t l = 0; l <= max_len; ++l) {
        if (total > kMax - layer) return kMax;
        total += layer;
        if (l == max_len) break;
        if (s != 0 && layer > kMax / s) {
            layer = kMax;
        } else {
            layer *= s;
        }
    }
    return total;
}

}  // namespace torsionlab
