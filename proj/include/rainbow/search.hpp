#pragma once

// Exact small-n computation of R, RR, RR*, the threshold functions
// F, F', G', and the fork functions f_k(r), g_k(r).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rainbow/coloring.hpp"
#include "rainbow/lubell.hpp"
#include "rainbow/poset.hpp"

namespace rainbow {

enum class SearchMethod { Brute, CanonicalPartition, CompositionDP, Formula };

std::string to_string(SearchMethod m);

struct SearchResult {
    std::string problem;
    /// Empty when the search ran past its cap or budget; see `bound`.
    std::variant<std::monostate, std::int64_t, ExactRatio> value;
    std::string bound;  // e.g. ">4" for an unresolved value
    SearchMethod method = SearchMethod::Brute;
    /// Extremal coloring certifying the lower bound (value - 1 for Ramsey-type numbers).
    std::optional<Coloring> witness;
    /// For multi-pattern Ramsey searches: canonical witness color -> pattern index.
    std::vector<int> witness_palette;
    int n_min = 0;
    int n_max = -1;  // fully exhausted range [n_min, n_max]
    bool budget_exhausted = false;
    std::uint64_t nodes = 0;

    bool resolved() const { return !std::holds_alternative<std::monostate>(value); }
    std::optional<std::int64_t> integer() const;
    std::string value_text() const;
};

struct SearchOptions {
    std::uint64_t budget = 0;  // node cap per search, 0 = unlimited
    /// Ground-permutation reduction: singleton colors are non-decreasing.
    bool ground_symmetry = true;
    /// Disable to enumerate every canonical coloring (used for counting).
    bool prune = true;
};

/// Least n <= n_cap where every |P_list|-coloring of B_n has a copy of P_i
/// in color i for some i.
SearchResult ramsey(std::span<const PosetPattern> ps, CopyMode mode, int n_cap, const SearchOptions& opts = {});

/// Least n <= n_cap where every coloring of B_n (any number of colors) has
/// a monochromatic P or a rainbow Q, both in `mode`.
SearchResult rainbow_ramsey(const PosetPattern& p, const PosetPattern& q, CopyMode mode, int n_cap,
                            const SearchOptions& opts = {});

/// Number of colorings of B_n visited by the canonical-partition enumerator
/// with pruning switched off. Equals Bell(2^n) without ground symmetry.
std::uint64_t canonical_partition_count(int n, bool ground_symmetry);

/// F(n,k) (total colorings) or F'(n,k) (partial colorings): one more than
/// the largest minimum class size over k-colorings with no strong rainbow A_k.
SearchResult threshold_F(int n, int k, bool partial, const SearchOptions& opts = {});

/// Same value for k = 2 by plain enumeration of all 2^(2^n) or 3^(2^n)
/// assignments, without symmetry or bounding.
SearchResult threshold_F2_raw(int n, bool partial);

enum class Objective { Size, Mass };

constexpr int kTwoColorGroundLimit = 40;

/// F'(n,2) (size) or G'(n,2) (mass) from the core-chain composition DP.
/// A witness coloring is attached for n <= kMaxColoringGround.
SearchResult two_color_partial_exact(int n, Objective objective);

/// True when levels lo..hi of B_n, as one color class, avoid a weak V_r.
bool fork_block_avoids(int n, int lo, int hi, std::uint64_t r);
/// Fewest consecutive level blocks covering B_n that each avoid a weak V_r.
int fork_min_blocks(int n, std::uint64_t r);
/// g_k(r): the least n where every consecutive level coloring with at most
/// k blocks has a monochromatic weak V_r.
int fork_g(std::uint64_t r, int k);
/// f_k(r) = R_k(V_r) by brute force, k <= 2.
SearchResult fork_f_small(int r, int k, int n_cap, const SearchOptions& opts = {});

/// Sum_{j <= a} binom(m, j), saturating at UINT64_MAX.
std::uint64_t binom_at_most(int m, int a);
/// Right-hand side of the lower recurrence g_{k+1}(r) >= g_k(r) + max{a : binom(a + g_k(r), <= a) <= r} + 1.
int fork_g_recurrence_bound(std::uint64_t r, int k);

}  // namespace rainbow
