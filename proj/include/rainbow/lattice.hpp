#pragma once

// Boolean lattice B_n: subsets of [n] as machine words, families of subsets,
// named regions and maximal-chain bookkeeping.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rainbow {

using Word = std::uint64_t;

constexpr int kMaxGround = 63;

/// A subset of [n] stored as an n-bit word; bit i set means element i+1 is present.
class SetWord {
public:
    SetWord() = default;
    SetWord(Word bits, int ground);

    static SetWord empty(int ground) { return SetWord(0, ground); }
    static SetWord full(int ground);
    /// Build from 1-based elements.
    static SetWord of(std::initializer_list<int> elements, int ground);

    Word bits() const { return bits_; }
    int ground() const { return ground_; }
    int size() const { return std::popcount(bits_); }
    bool contains(int element) const { return (bits_ >> (element - 1)) & 1u; }

    bool subset_of(const SetWord& other) const { return (bits_ & ~other.bits_) == 0; }
    bool comparable(const SetWord& other) const { return subset_of(other) || other.subset_of(*this); }

    SetWord operator|(const SetWord& o) const;
    SetWord operator&(const SetWord& o) const;
    SetWord complement() const;

    std::vector<int> elements() const;
    std::string to_string() const;

    auto operator<=>(const SetWord&) const = default;

private:
    Word bits_ = 0;
    int ground_ = 0;
};

inline bool is_subset(Word a, Word b) { return (a & ~b) == 0; }
inline bool comparable(Word a, Word b) { return is_subset(a, b) || is_subset(b, a); }
inline Word full_mask(int n) { return n == 64 ? ~Word{0} : (Word{1} << n) - 1; }

/// Deduplicated, sorted collection of subsets over a fixed ground size.
class Family {
public:
    Family() = default;
    explicit Family(int ground) : ground_(ground) {}
    Family(int ground, std::vector<Word> members);

    static Family all(int ground);

    int ground() const { return ground_; }
    std::span<const Word> members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(Word w) const;

    void insert(Word w);
    Family without(Word w) const;
    Family filtered(auto&& pred) const {
        Family out(ground_);
        for (Word w : members_)
            if (pred(w)) out.members_.push_back(w);
        return out;
    }

    bool operator==(const Family&) const = default;

private:
    int ground_ = 0;
    std::vector<Word> members_;
};

struct RegionSpec {
    enum class Kind { Level, Subcube, Upset, Downset, IntervalUnion, Full };
    Kind kind = Kind::Full;
    Word lower = 0;   // F for subcube / upset / downset
    Word upper = 0;   // H for subcube
    int level_lo = 0; // level index, or first level for an interval union
    int level_hi = 0;
    bool truncated = false;

    static RegionSpec level(int l) { return {Kind::Level, 0, 0, l, l, false}; }
    static RegionSpec subcube(Word f, Word h, bool truncated = false) { return {Kind::Subcube, f, h, 0, 0, truncated}; }
    static RegionSpec upset(Word f, bool truncated = false) { return {Kind::Upset, f, 0, 0, 0, truncated}; }
    static RegionSpec downset(Word f, bool truncated = false) { return {Kind::Downset, f, 0, 0, 0, truncated}; }
    static RegionSpec levels(int lo, int hi) { return {Kind::IntervalUnion, 0, 0, lo, hi, false}; }
    static RegionSpec full(bool truncated = false) { return {Kind::Full, 0, 0, 0, 0, truncated}; }
};

/// Materialise a region of B_n. Throws std::invalid_argument for malformed specs.
Family region(const RegionSpec& spec, int n);

/// Blocks C_{n,F}: maximal chains whose largest member of the family is F.
struct MaxPartition {
    std::map<Word, mpz_class> blocks;
    mpz_class leftover;
};

enum class ChainCountMode { Enumerate, Dynamic };

constexpr int kEnumerateLimit = 10;
constexpr int kDynamicLimit = 20;

MaxPartition max_partition(const Family& fam, ChainCountMode mode = ChainCountMode::Dynamic);

mpz_class factorial(int n);

/// Calls visit(chain) for every maximal chain of B_n; chain[i] has size i.
template <class Visit>
void for_each_maximal_chain(int n, Visit&& visit) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<Word> chain(n + 1);
    do {
        chain[0] = 0;
        for (int i = 0; i < n; ++i) chain[i + 1] = chain[i] | (Word{1} << perm[i]);
        visit(std::span<const Word>(chain));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

// "FAM v1" text and the JSON-shaped set list.
std::string to_fam_text(const Family& fam);
Family parse_fam_text(const std::string& text);

}  // namespace rainbow
