#pragma once

// Mutual comparability of families and the core-chain decomposition of
// mutually comparable families.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rainbow/lattice.hpp"

namespace rainbow {

enum class Comparability { Comparable, Incomparable };

/// Families must be pairwise disjoint and share a ground size (std::invalid_argument otherwise).
bool comparability(std::span<const Family> fams, Comparability sense);

/// A cross-family pair violating mutual comparability, if any.
struct CrossPair {
    std::size_t family_a, family_b;
    Word set_a, set_b;
};
std::optional<CrossPair> incomparable_cross_pair(std::span<const Family> fams);

/// Chain from the empty set to [n]; owners[j] names the single family meeting
/// the truncated subcube between chain[j] and chain[j+1], or -1 if none does.
struct CoreChain {
    int ground = 0;
    std::vector<Word> chain;
    std::vector<int> owners;
};

class NotMutuallyComparable : public std::invalid_argument {
public:
    explicit NotMutuallyComparable(const CrossPair& pair);
    CrossPair pair;
};

/// Recursive construction: take a largest non-top member F (ties: smallest
/// bitmask), keep the members of F's family not below any other family's
/// member, split at their intersection S and recurse inside B_S.
CoreChain core_chain(std::span<const Family> fams);

struct ChainCheck {
    bool ok = true;
    std::string violated;  // empty when ok
};

ChainCheck validate_core_chain(const CoreChain& cc, std::span<const Family> fams);

}  // namespace rainbow
