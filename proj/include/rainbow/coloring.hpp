#pragma once

// Partial and total colorings of B_n, the explicit constructions, and the
// monochromatic / rainbow pattern checkers behind every witness certificate.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/lattice.hpp"
#include "rainbow/poset.hpp"

namespace rainbow {

constexpr int kMaxColoringGround = 24;

/// Partial map B_n -> {0, 1, ...}. Colors are renamed to first-seen order
/// (scanning sets by increasing bitmask) on construction.
class Coloring {
public:
    static constexpr int kUncolored = -1;

    Coloring() = default;
    /// `colors[w]` is the color of set w or a negative value when uncolored.
    Coloring(int ground, std::vector<int> colors);
    static Coloring from_pairs(int ground, const std::vector<std::pair<Word, int>>& pairs);

    int ground() const { return ground_; }
    bool total() const { return total_; }
    int num_colors() const { return num_colors_; }
    int color(Word w) const { return colors_[w]; }
    bool colored(Word w) const { return colors_[w] >= 0; }
    const std::vector<int>& raw() const { return colors_; }

    Family color_class(int c) const;
    std::vector<std::size_t> class_sizes() const;
    /// Colored sets in increasing order with their colors.
    std::vector<Word> colored_sets() const;
    std::vector<int> colored_set_colors() const;

    bool operator==(const Coloring&) const = default;

private:
    int ground_ = 0;
    std::vector<int> colors_;
    int num_colors_ = 0;
    bool total_ = false;
};

enum class ColoringKind { ConsecutiveLevel, Trace, Level, RrLower, F2Lower, G2Lower, FkRandom };

ColoringKind coloring_kind_from_name(const std::string& name);
std::string to_string(ColoringKind kind);

enum class ExtremeTweak { None, Bottom, Top, Both };

struct GenerateParams {
    int n = 0;
    std::vector<int> parts;     // consecutive-level block lengths
    Word trace_set = 0;         // R for trace colorings
    int e = 1;                  // rr-lower: levels per color
    int q = 2;                  // rr-lower: |Q|
    ExtremeTweak tweak = ExtremeTweak::None;
    int k = 2;                  // fk-random
    std::optional<std::uint64_t> seed;
};

Coloring generate(ColoringKind kind, const GenerateParams& params);

/// fk-random with its seed sets exposed for the structural certificate.
struct FkConstruction {
    Coloring coloring;
    std::vector<Word> seeds;           // F_1 .. F_{k-1}
    int l_k = 0;
    int intersection_cap = 0;
    std::vector<int> class_of_color;   // canonical color -> class label 1..k
};

constexpr int kFkRetryCap = 10000;

FkConstruction fk_random(int n, int k, std::uint64_t seed);

/// floor(log2(k - 1) / 2) by integer arithmetic.
int fk_level_offset(int k);
/// ceil(0.26 n) by integer arithmetic.
int fk_intersection_cap(int n);
/// Largest h with 2 h^2 <= n^2, i.e. floor(n / sqrt 2).
int floor_div_sqrt2(int n);

/// Every class-k member lies in some U_{F_i} minus F_i and every class-i
/// member in D_{F_i}; this rules out a rainbow strong A_k.
bool fk_structural_certificate(const FkConstruction& fk);

enum class ChromaticKind { Mono, Rainbow };

struct PatternWitness {
    Embedding embedding;
    std::vector<int> colors;  // per pattern element
};

std::optional<PatternWitness> find_pattern(const Coloring& col, const PosetPattern& pattern, CopyMode mode,
                                           ChromaticKind chromatic);

struct WitnessVerdict {
    std::optional<PatternWitness> mono_copy;
    std::optional<PatternWitness> rainbow_copy;
    bool avoided() const { return !mono_copy && !rainbow_copy; }
};

WitnessVerdict validate_witness(const Coloring& col, const PosetPattern& p, const PosetPattern& q, CopyMode mode_p,
                                CopyMode mode_q);

/// A thin antichain of size n - 2 in B_n with no (n-1)-element member.
Family thin_antichain(int n);

bool is_thin(const Family& fam);
bool is_antichain(const Family& fam);

// "COL v1" text: header `n=<n> total=<0|1>`, then `<bitmask-hex> <color>` lines.
std::string to_col_text(const Coloring& col);
Coloring parse_col_text(const std::string& text);

}  // namespace rainbow
