#pragma once

// Finite poset patterns and their (weak / strong / thin) copies inside
// families of subsets.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rainbow/lattice.hpp"

namespace rainbow {

/// Finite poset on elements 0..size-1 given by its full order relation.
/// Validated reflexive, antisymmetric and transitive on construction.
class PosetPattern {
public:
    static constexpr int kMaxSize = 64;

    PosetPattern() = default;
    explicit PosetPattern(std::vector<std::vector<bool>> leq);

    int size() const { return static_cast<int>(below_.size()); }
    bool leq(int p, int q) const { return p == q || ((below_[q] >> p) & 1u); }
    bool less(int p, int q) const { return p != q && leq(p, q); }
    bool comparable(int p, int q) const { return leq(p, q) || leq(q, p); }

    /// Strict down-set / up-set of p as bitmasks over pattern elements.
    std::uint64_t below(int p) const { return below_[p]; }
    std::uint64_t above(int p) const { return above_[p]; }

    std::vector<std::vector<bool>> relation() const;

    bool operator==(const PosetPattern&) const = default;

private:
    std::vector<std::uint64_t> below_;
    std::vector<std::uint64_t> above_;
};

enum class StandardPoset { Chain, Antichain, Fork, Broom, GenDiamond };

/// C_l, A_k, V_r (bottom is element 0), Lambda_s (top is the last element),
/// D_k (a = 0, b_i = i, c = k + 1).
PosetPattern standard_poset(StandardPoset kind, int param);

/// "C3", "A4", "V2", "L3", "D2".
PosetPattern poset_from_name(const std::string& name);
/// Inverse of poset_from_name for standard posets (same element numbering),
/// otherwise "P<size>".
std::string poset_name(const PosetPattern& pattern);

enum class CopyMode { Weak, Strong };

struct Embedding {
    std::vector<Word> image;  // indexed by pattern element
    CopyMode mode = CopyMode::Weak;
    bool thin = false;
};

/// Checks every Embedding invariant for `image` against `pattern`.
bool is_valid_embedding(const PosetPattern& pattern, const Embedding& e);

enum class Chromatic { Any, Rainbow };

struct CopyQuery {
    CopyMode mode = CopyMode::Weak;
    bool thin = false;
    Chromatic chromatic = Chromatic::Any;
    /// Host index that the copy must use.
    std::optional<std::size_t> anchor;
    /// Ground size of the host, enabling size pruning from above (-1 = unknown).
    int ground = -1;
    /// Abort after this many search nodes (0 = unlimited).
    std::uint64_t node_limit = 0;
};

struct CopySearchResult {
    std::optional<std::vector<std::size_t>> host_indices;  // per pattern element
    std::uint64_t nodes = 0;
    bool aborted = false;
};

/// Backtracking embedding search. `hosts` must be sorted and distinct; in
/// rainbow mode `colors[i]` is the color of hosts[i] (negative = uncolored).
/// Pattern elements are placed along a fixed linear extension with forward
/// checking; interchangeable (twin) pattern elements receive increasing
/// (color, index) keys. The first embedding in that order is returned.
CopySearchResult search_copy(const PosetPattern& pattern, std::span<const Word> hosts,
                             std::span<const int> colors, const CopyQuery& query);

std::optional<Embedding> find_copy(const Family& host, const PosetPattern& pattern, CopyMode mode,
                                   bool thin = false);

struct StructuralParams {
    bool connected = false;
    int f = 0;
};

StructuralParams structural_params(const PosetPattern& pattern);

/// A parameter resolved exactly up to a cap, or only known to reach it.
struct CappedValue {
    std::optional<int> value;
    int at_least = 0;  // meaningful when value is empty
    std::string provenance;

    bool resolved() const { return value.has_value(); }
    std::string to_string() const;
};

struct PosetParams {
    bool connected = false;
    int f = 0;
    CappedValue m_weak;
    CappedValue m_strong;
    CappedValue r_star;
    CappedValue e_estimate;
    CappedValue e_star_estimate;
    // Values supplied by the caller for posets whose e(P), e*(P) are known
    // from elsewhere; they take precedence over the estimates.
    std::optional<int> e_override;
    std::optional<int> e_star_override;
    /// Uniform (induced) Lubell-boundedness is never inferred, only asserted.
    bool uniformly_lubell_bounded_asserted = false;
};

constexpr int kExtremalCapLimit = 7;

PosetParams extremal_params(const PosetPattern& pattern, int n_cap);

/// Largest m with every window of m consecutive levels of B_n free of a copy,
/// or empty when all of B_n is free of it.
std::optional<int> largest_free_window(const PosetPattern& pattern, int n, CopyMode mode);

/// Returns the chain length l when `pattern` is C_l.
std::optional<int> chain_length(const PosetPattern& pattern);

}  // namespace rainbow
