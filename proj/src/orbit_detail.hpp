#pragma once

// Shared internals of the orbit kernels: letter tables over the symmetric
// generators, exact tree counts with budget enforcement, and the canonical
// (depth, rank) indexing of reduced words.

#include <cstdint>
#include <vector>

#include "schottky/orbit.hpp"

namespace schottky::orbit::detail {

struct LetterTable {
    int alphabet = 0; // 2k
    std::vector<Moebius> maps;
    std::vector<OrientedCircle> edge_circle; // base circle selected by the letter
    std::vector<int> pair_of;
    std::vector<bool> prime_of;
};

inline LetterTable build_letters(const CircleSystem& sys) {
    LetterTable table;
    table.alphabet = 2 * static_cast<int>(sys.pairs.size());
    for (std::size_t i = 0; i < sys.pairs.size(); ++i) {
        const CirclePair& pair = sys.pairs[i];
        // g_i: edge circle C'_i (the tile g_i D lies inside Int C'_i).
        table.maps.push_back(pair.map);
        table.edge_circle.push_back(pair.c_prime);
        table.pair_of.push_back(static_cast<int>(i));
        table.prime_of.push_back(true);
        // g_i^-1: edge circle C_i.
        table.maps.push_back(pair.map.inverse());
        table.edge_circle.push_back(pair.c);
        table.pair_of.push_back(static_cast<int>(i));
        table.prime_of.push_back(false);
    }
    return table;
}

/// counts[m] = number of reduced words of length m for m = 1..depth
/// (counts[0] = 1 for the identity vertex). Throws BudgetExceeded when the
/// total over m >= 1 would exceed the budget.
inline std::vector<std::int64_t> level_counts(int alphabet, int depth, std::int64_t budget) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(depth) + 1, 0);
    counts[0] = 1;
    std::int64_t total = 0;
    for (int m = 1; m <= depth; ++m) {
        counts[m] = m == 1 ? alphabet : counts[m - 1] * (alphabet - 1);
        total += counts[m];
        if (counts[m] > budget || total > budget)
            raise(ErrorKind::BudgetExceeded,
                  "enumeration of " + std::to_string(total) + "+ tree nodes exceeds budget " +
                      std::to_string(budget));
    }
    return counts;
}

/// Rank of the child word w.s given the rank of w and the position of s
/// among the allowed (non-cancelling) letters.
inline std::int64_t child_rank(std::int64_t parent_rank, int alphabet, int child_pos) {
    return parent_rank * (alphabet - 1) + child_pos;
}

inline int child_position(int letter, int parent_last) {
    return letter < inverse_letter(parent_last) ? letter : letter - 1;
}

/// Inverse of the (depth, rank) indexing: the rank-th reduced word of the
/// given length in lexicographic order.
inline Word decode_word(int alphabet, int length, std::int64_t rank) {
    Word word;
    word.letters.reserve(static_cast<std::size_t>(length));
    std::int64_t power = 1;
    for (int i = 0; i < length - 1; ++i)
        power *= alphabet - 1;
    int last = -1;
    for (int i = 0; i < length; ++i) {
        const std::int64_t digit = rank / power;
        rank %= power;
        if (power > 1)
            power /= alphabet - 1;
        int letter;
        if (i == 0) {
            letter = static_cast<int>(digit);
        } else {
            const int inv = inverse_letter(last);
            letter = digit < inv ? static_cast<int>(digit) : static_cast<int>(digit) + 1;
        }
        word.letters.push_back(letter);
        last = letter;
    }
    return word;
}

} // namespace schottky::orbit::detail
