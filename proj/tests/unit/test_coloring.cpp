#include <doctest.h>

#include "helpers.hpp"
#include "rainbow/coloring.hpp"
#include "rainbow/corechain.hpp"
#include "rainbow/lubell.hpp"

using namespace rainbow;

namespace {

const PosetPattern kC2 = standard_poset(StandardPoset::Chain, 2);
const PosetPattern kC3 = standard_poset(StandardPoset::Chain, 3);
const PosetPattern kA2 = standard_poset(StandardPoset::Antichain, 2);

Coloring permute_colors(const Coloring& col, const std::vector<int>& perm) {
    std::vector<int> raw = col.raw();
    for (int& c : raw)
        if (c >= 0) c = perm[c];
    return Coloring(col.ground(), raw);
}

}  // namespace

TEST_CASE("colors are renamed canonically") {
    const Coloring a(2, {5, 5, 2, -1});
    CHECK(a.raw() == std::vector<int>{0, 0, 1, -1});
    CHECK(a.num_colors() == 2);
    CHECK_FALSE(a.total());
    CHECK(a.class_sizes() == std::vector<std::size_t>{2, 1});
    CHECK(a == Coloring(2, {0, 0, 7, -3}));
    CHECK_THROWS(Coloring(2, {0, 0, 0}));
}

TEST_CASE("explicit colorings") {
    GenerateParams p;
    p.n = 4;
    p.parts = {2, 3};
    const Coloring cl = generate(ColoringKind::ConsecutiveLevel, p);
    CHECK(cl.color(0) == 0);
    CHECK(cl.color(0b1) == 0);
    CHECK(cl.color(0b11) == 1);
    CHECK(cl.num_colors() == 2);
    p.parts = {2, 2};
    CHECK_THROWS(generate(ColoringKind::ConsecutiveLevel, p));

    GenerateParams lv;
    lv.n = 3;
    const Coloring level = generate(ColoringKind::Level, lv);
    CHECK(level.num_colors() == 4);

    GenerateParams tr;
    tr.n = 2;
    tr.trace_set = 0b1;
    const Coloring trace = generate(ColoringKind::Trace, tr);
    CHECK(trace.color(0) == trace.color(0b10));
    CHECK(trace.color(0b1) == trace.color(0b11));
    CHECK(trace.color(0) != trace.color(0b1));
    CHECK(find_pattern(trace, kC2, CopyMode::Weak, ChromaticKind::Mono));
}

TEST_CASE("checker examples") {
    const Coloring one(2, std::vector<int>(4, 0));
    CHECK_FALSE(find_pattern(one, kC2, CopyMode::Weak, ChromaticKind::Rainbow));
    CHECK_FALSE(validate_witness(one, kC2, kC2, CopyMode::Weak, CopyMode::Weak).avoided());
    for (int k = 4; k <= 8; ++k) {
        GenerateParams lv;
        lv.n = k + 1;
        const Coloring level = generate(ColoringKind::Level, lv);
        const auto v = validate_witness(level, kC2, standard_poset(StandardPoset::Antichain, k), CopyMode::Strong,
                                        CopyMode::Strong);
        CHECK(v.avoided());
    }
    GenerateParams rr;
    rr.n = 1;
    rr.e = 1;
    rr.q = 3;
    CHECK(validate_witness(generate(ColoringKind::RrLower, rr), kC2, kC3, CopyMode::Weak, CopyMode::Weak).avoided());
}

TEST_CASE("witnesses are valid and correctly colored") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> pick(-1, 2);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 3;
        std::vector<int> raw(std::size_t{1} << n);
        for (int& c : raw) c = pick(rng);
        const Coloring col(n, raw);
        for (const auto& p : {kC2, kC3, kA2, standard_poset(StandardPoset::Fork, 2)})
            for (auto mode : {CopyMode::Weak, CopyMode::Strong})
                for (auto chroma : {ChromaticKind::Mono, ChromaticKind::Rainbow}) {
                    const auto w = find_pattern(col, p, mode, chroma);
                    if (!w) continue;
                    REQUIRE(is_valid_embedding(p, w->embedding));
                    for (int i = 0; i < p.size(); ++i) {
                        REQUIRE(col.color(w->embedding.image[i]) == w->colors[i]);
                        REQUIRE(w->colors[i] >= 0);
                        for (int j = 0; j < i; ++j) {
                            if (chroma == ChromaticKind::Mono) REQUIRE(w->colors[i] == w->colors[j]);
                            else REQUIRE(w->colors[i] != w->colors[j]);
                        }
                    }
                }
    }
}

TEST_CASE("verdicts ignore color renaming") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> pick(-1, 3);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = 2 + trial % 3;
        std::vector<int> raw(std::size_t{1} << n);
        for (int& c : raw) c = pick(rng);
        const Coloring col(n, raw);
        std::vector<int> perm{0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        const Coloring other = permute_colors(col, perm);
        for (const auto& p : {kC2, kC3, kA2})
            for (auto chroma : {ChromaticKind::Mono, ChromaticKind::Rainbow})
                REQUIRE(find_pattern(col, p, CopyMode::Strong, chroma).has_value() ==
                        find_pattern(other, p, CopyMode::Strong, chroma).has_value());
    }
}

TEST_CASE("rainbow A2 absent iff classes are mutually comparable") {
    // all partial 2-colorings for n <= 3, random ones at n = 4
    auto check = [](const Coloring& col) {
        std::vector<Word> a, b;
        for (Word w = 0; w < col.raw().size(); ++w) {
            if (col.raw()[w] == 0) a.push_back(w);
            if (col.raw()[w] == 1) b.push_back(w);
        }
        const int n = col.ground();
        bool mutual = true;
        if (!a.empty() && !b.empty()) {
            const std::vector<Family> fams{Family(n, a), Family(n, b)};
            mutual = comparability(fams, Comparability::Comparable);
        }
        const bool rainbow = find_pattern(col, kA2, CopyMode::Strong, ChromaticKind::Rainbow).has_value();
        REQUIRE(rainbow == !mutual);
    };
    for (int n = 0; n <= 3; ++n) {
        const std::size_t sets = std::size_t{1} << n;
        std::size_t total = 1;
        for (std::size_t i = 0; i < sets; ++i) total *= 3;
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<int> raw(sets);
            std::size_t c = code;
            for (auto& x : raw) {
                x = static_cast<int>(c % 3) - 1;
                c /= 3;
            }
            check(Coloring(n, raw));
        }
    }
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<int> pick(-1, 1);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<int> raw(16);
        for (int& x : raw) x = pick(rng);
        check(Coloring(4, raw));
    }
}

TEST_CASE("COL text round trip") {
    GenerateParams p;
    p.n = 4;
    const Coloring col = generate(ColoringKind::F2Lower, p);
    CHECK(parse_col_text(to_col_text(col)) == col);
    CHECK_THROWS(parse_col_text("n=2 total=1\nzz 0\n"));
}

TEST_CASE("thin antichains") {
    CHECK_THROWS(thin_antichain(3));
    for (int n = 4; n <= 16; ++n) {
        const Family f = thin_antichain(n);
        CHECK(f.ground() == n);
        CHECK(f.size() == static_cast<std::size_t>(n - 2));
        CHECK(is_thin(f));
        CHECK(is_antichain(f));
        for (Word w : f.members()) CHECK(std::popcount(w) != n - 1);
    }
    CHECK_FALSE(is_thin(Family(3, {0b1, 0b10})));
    CHECK_FALSE(is_antichain(Family(3, {0b1, 0b11})));
}

TEST_CASE("floor of n over root two") {
    for (int n = 0; n <= 2000; ++n) {
        const int h = floor_div_sqrt2(n);
        REQUIRE(2 * h * h <= n * n);
        REQUIRE(2 * (h + 1) * (h + 1) > n * n);
    }
}

TEST_CASE("f2-lower and g2-lower avoid a rainbow A2") {
    for (int n = 4; n <= 10; ++n) {
        GenerateParams p;
        p.n = n;
        for (auto kind : {ColoringKind::F2Lower, ColoringKind::G2Lower}) {
            const Coloring col = generate(kind, p);
            CHECK(col.num_colors() == 2);
            CHECK_FALSE(find_pattern(col, kA2, CopyMode::Strong, ChromaticKind::Rainbow));
        }
    }
}

TEST_CASE("f2-lower class sizes reach the F'(n,2) threshold minus one") {
    CHECK_THROWS(generate(ColoringKind::F2Lower, GenerateParams{3}));
    for (int n = 4; n <= 12; ++n) {
        GenerateParams p;
        p.n = n;
        const auto sizes = generate(ColoringKind::F2Lower, p).class_sizes();
        const std::size_t half = std::size_t{1} << (n / 2);
        const std::size_t expect = n % 2 == 0 ? half - 1 : half + 1;
        CHECK(std::min(sizes[0], sizes[1]) == expect);
    }
}

TEST_CASE("g2-lower class masses") {
    // class 0: U_H plus the empty set; class 1: D_H minus the empty set and H
    for (int n : {4, 8, 12, 16, 20, 24}) {
        GenerateParams p;
        p.n = n;
        const Coloring col = generate(ColoringKind::G2Lower, p);
        const int h = floor_div_sqrt2(n);
        const ExactRatio up = lubell_subcube(n, h, 0) + 1;
        const ExactRatio down = lubell_subcube(n, 0, n - h) - 1 - ExactRatio(mpz_class(1), binomial(n, h));
        // the class holding the empty set
        const int c0 = col.color(0);
        CHECK(lubell_mass(col.color_class(c0)) == up);
        CHECK(lubell_mass(col.color_class(1 - c0)) == down);
    }
    // the smaller class mass grows toward 1 + sqrt 2 as n grows
    auto min_mass = [](int n) {
        const int h = floor_div_sqrt2(n);
        const double up = ExactRatio(lubell_subcube(n, h, 0) + 1).get_d();
        const double down = ExactRatio(lubell_subcube(n, 0, n - h) - 1 - ExactRatio(mpz_class(1), binomial(n, h))).get_d();
        return std::min(up, down);
    };
    CHECK(min_mass(60) > min_mass(24));
    CHECK(min_mass(63) < 1 + std::sqrt(2.0));
}

TEST_CASE("fk-random construction") {
    for (int k : {3, 5}) {
        const FkConstruction fk = fk_random(14, k, 20241015);
        CHECK(fk.seeds.size() == static_cast<std::size_t>(k - 1));
        CHECK(fk_structural_certificate(fk));
        const std::int64_t bound = (std::int64_t{1} << fk.l_k) * (std::int64_t{1} << 7) -
                                   (k - 2) * (std::int64_t{1} << fk_intersection_cap(14));
        std::vector<std::int64_t> per_class(k + 1, 0);
        const auto sizes = fk.coloring.class_sizes();
        for (std::size_t c = 0; c < sizes.size(); ++c) per_class[fk.class_of_color[c]] += sizes[c];
        for (int i = 1; i < k; ++i) CHECK(per_class[i] >= bound);
    }
    const FkConstruction small = fk_random(8, 3, 1);
    CHECK(fk_structural_certificate(small));
    CHECK_FALSE(find_pattern(small.coloring, standard_poset(StandardPoset::Antichain, 3), CopyMode::Strong,
                             ChromaticKind::Rainbow));
}

TEST_CASE("generate is seed deterministic") {
    GenerateParams p;
    p.n = 12;
    p.k = 4;
    p.seed = 99;
    CHECK(generate(ColoringKind::FkRandom, p) == generate(ColoringKind::FkRandom, p));
    CHECK(fk_random(12, 4, 5).seeds == fk_random(12, 4, 5).seeds);
    CHECK(fk_intersection_cap(14) == 4);
    CHECK(fk_level_offset(2) == 0);
    CHECK(fk_level_offset(5) == 1);
}
