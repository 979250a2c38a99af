#pragma once

// Length-lexicographic enumeration of words over a finite ordered alphabet.
// Index 0 is the empty word; words are ordered first by length, then
// lexicographically by symbol index. This is bijective base-s numeration.

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace torsionlab {

using BigNat = boost::multiprecision::cpp_int;

std::vector<std::uint32_t> lenlex_decode(BigNat index, std::uint32_t alphabet_size);
BigNat lenlex_encode(std::span<const std::uint32_t> word, std::uint32_t alphabet_size);

/// Advances `word` to its length-lex successor.
void lenlex_next(std::vector<std::uint32_t>& word, std::uint32_t alphabet_size);

/// Number of words of length at most `max_len` (saturating at UINT64_MAX).
std::uint64_t lenlex_count_upto(std::uint64_t max_len, std::uint32_t alphabet_size);

}  // namespace torsionlab
