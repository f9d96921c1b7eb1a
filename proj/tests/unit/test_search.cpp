#include <doctest.h>

#include "rainbow/coloring.hpp"
#include "rainbow/lubell.hpp"
#include "rainbow/search.hpp"

using namespace rainbow;

namespace {

const PosetPattern kC2 = standard_poset(StandardPoset::Chain, 2);
const PosetPattern kC3 = standard_poset(StandardPoset::Chain, 3);
const PosetPattern kA3 = standard_poset(StandardPoset::Antichain, 3);
const PosetPattern kV2 = standard_poset(StandardPoset::Fork, 2);

// Largest min class mass over partial 2-colorings of B_n whose classes are
// mutually comparable, in units of 1 / lcm of the level binomials.
ExactRatio raw_g_prime(int n) {
    const Word total = Word{1} << n;
    mpz_class l = 1;
    for (int i = 0; i <= n; ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), binomial(n, i).get_mpz_t());
    const long unit = l.get_si();
    std::vector<long> weight(total);
    for (Word w = 0; w < total; ++w) weight[w] = unit / binomial(n, std::popcount(w)).get_si();
    Word mask[2] = {0, 0};
    long mass[2] = {0, 0};
    long best = -1;
    auto dfs = [&](auto& self, Word w) -> void {
        if (w == total) {
            best = std::max(best, std::min(mass[0], mass[1]));
            return;
        }
        for (int c = 0; c < 2; ++c) {
            bool clash = false;
            for (Word o = 0; o < w && !clash; ++o)
                clash = ((mask[1 - c] >> o) & 1) && !comparable(o, w);
            if (clash) continue;
            mask[c] |= Word{1} << w;
            mass[c] += weight[w];
            self(self, w + 1);
            mass[c] -= weight[w];
            mask[c] &= ~(Word{1} << w);
        }
        self(self, w + 1);
    };
    dfs(dfs, 0);
    return ratio(best, unit);
}

// g_k(r) by listing level compositions and counting supersets set by set.
int naive_fork_g(std::uint64_t r, int k, int n_max) {
    for (int n = 0; n <= n_max; ++n) {
        const Word top = full_mask(n);
        // avoids[lo][hi]: levels lo..hi host no weak V_r
        std::vector<std::vector<bool>> avoids(n + 1, std::vector<bool>(n + 1, false));
        for (int lo = 0; lo <= n; ++lo)
            for (int hi = lo; hi <= n; ++hi) {
                std::uint64_t most = 0;
                for (Word a = 0; a <= top; ++a) {
                    const int sa = std::popcount(a);
                    if (sa < lo || sa > hi) continue;
                    std::uint64_t above = 0;
                    for (Word b = 0; b <= top; ++b) {
                        const int sb = std::popcount(b);
                        if (b != a && sb <= hi && is_subset(a, b)) ++above;
                    }
                    most = std::max(most, above);
                }
                avoids[lo][hi] = most < r;
            }
        // fewest blocks by DP over prefixes
        std::vector<int> need(n + 2, 1 << 20);
        need[0] = 0;
        for (int lo = 0; lo <= n; ++lo)
            for (int hi = lo; hi <= n; ++hi)
                if (avoids[lo][hi]) need[hi + 1] = std::min(need[hi + 1], need[lo] + 1);
        if (need[n + 1] > k) return n;
    }
    return -1;
}

}  // namespace

TEST_CASE("canonical partitions match Bell numbers") {
    CHECK(canonical_partition_count(0, false) == 1);
    CHECK(canonical_partition_count(1, false) == 2);
    CHECK(canonical_partition_count(2, false) == 15);
    CHECK(canonical_partition_count(3, false) == 4140);
    // ground symmetry can only shrink the count
    for (int n = 0; n <= 3; ++n) CHECK(canonical_partition_count(n, true) <= canonical_partition_count(n, false));
}

TEST_CASE("rainbow Ramsey values on chains") {
    const auto a = rainbow_ramsey(kC2, kC2, CopyMode::Weak, 3);
    CHECK(a.integer() == 1);
    CHECK(a.method == SearchMethod::CanonicalPartition);
    const auto b = rainbow_ramsey(kC2, kC3, CopyMode::Weak, 3);
    CHECK(b.integer() == 2);
    REQUIRE(b.witness);
    CHECK(validate_witness(*b.witness, kC2, kC3, CopyMode::Weak, CopyMode::Weak).avoided());
    CHECK(b.witness->ground() == 1);
}

TEST_CASE("Ramsey values") {
    const std::vector<PosetPattern> c2{kC2, kC2};
    const auto a = ramsey(c2, CopyMode::Weak, 4);
    CHECK(a.integer() == 2);
    const std::vector<PosetPattern> c3{kC3, kC3};
    const auto b = ramsey(c3, CopyMode::Weak, 4);
    CHECK(b.integer() == 4);
    REQUIRE(b.witness);
    CHECK(b.witness->ground() == 3);
    CHECK_FALSE(find_pattern(*b.witness, kC3, CopyMode::Weak, ChromaticKind::Mono));
}

TEST_CASE("avoiding colorings for R_{|Q|-1}(P) also avoid RR(P,Q)") {
    struct Case {
        PosetPattern p, q;
    };
    for (const auto& c : {Case{kC2, kC3}, Case{kC3, kC3}, Case{kC2, kA3}, Case{kV2, kC3}}) {
        const std::vector<PosetPattern> ps(c.q.size() - 1, c.p);
        const auto r = ramsey(ps, CopyMode::Weak, 4);
        REQUIRE(r.resolved());
        REQUIRE(r.witness);
        CHECK(validate_witness(*r.witness, c.p, c.q, CopyMode::Weak, CopyMode::Weak).avoided());
        const auto rr = rainbow_ramsey(c.p, c.q, CopyMode::Weak, 4);
        if (rr.resolved()) CHECK(*rr.integer() >= *r.integer());
    }
}

TEST_CASE("RR(P,V_2) equals R(P,P)") {
    for (const auto& p : {kC2, kC3}) {
        const auto rr = rainbow_ramsey(p, kV2, CopyMode::Weak, 4);
        const std::vector<PosetPattern> ps{p, p};
        const auto r = ramsey(ps, CopyMode::Weak, 4);
        REQUIRE(rr.resolved());
        REQUIRE(r.resolved());
        CHECK(*rr.integer() == *r.integer());
    }
}

TEST_CASE("budget exhaustion is reported, not hidden") {
    SearchOptions opts;
    opts.budget = 5;
    const std::vector<PosetPattern> c3{kC3, kC3};
    const auto r = ramsey(c3, CopyMode::Weak, 4, opts);
    CHECK(r.budget_exhausted);
    CHECK_FALSE(r.resolved());
    const auto capped = rainbow_ramsey(kC2, kA3, CopyMode::Strong, 2);
    CHECK_FALSE(capped.resolved());
    CHECK(capped.bound == ">2");
}

TEST_CASE("threshold search agrees with plain enumeration") {
    for (int n = 1; n <= 4; ++n)
        for (bool partial : {false, true}) {
            const auto fast = threshold_F(n, 2, partial);
            const auto raw = threshold_F2_raw(n, partial);
            CHECK(fast.integer() == raw.integer());
        }
    CHECK(threshold_F(3, 3, false).integer() == 3);
}

TEST_CASE("two-color DP matches brute force") {
    for (int n = 1; n <= 4; ++n) {
        CHECK(two_color_partial_exact(n, Objective::Size).integer() == threshold_F2_raw(n, true).integer());
        const auto g = two_color_partial_exact(n, Objective::Mass);
        CHECK(std::get<ExactRatio>(g.value) == raw_g_prime(n));
    }
}

TEST_CASE("two-color DP witnesses") {
    for (int n = 2; n <= 12; ++n) {
        const auto r = two_color_partial_exact(n, Objective::Size);
        REQUIRE(r.witness);
        const auto sizes = r.witness->class_sizes();
        REQUIRE(sizes.size() == 2);
        CHECK(static_cast<std::int64_t>(std::min(sizes[0], sizes[1])) + 1 == *r.integer());
        CHECK_FALSE(find_pattern(*r.witness, standard_poset(StandardPoset::Antichain, 2), CopyMode::Strong,
                                 ChromaticKind::Rainbow));
        const auto g = two_color_partial_exact(n, Objective::Mass);
        REQUIRE(g.witness);
        const ExactRatio m0 = lubell_mass(g.witness->color_class(0)), m1 = lubell_mass(g.witness->color_class(1));
        CHECK(std::min(m0, m1) == std::get<ExactRatio>(g.value));
    }
}

TEST_CASE("F'(n,2) closed form") {
    for (int n = 4; n <= 40; ++n) {
        const std::int64_t half = std::int64_t{1} << (n / 2);
        CHECK(two_color_partial_exact(n, Objective::Size).integer() == (n % 2 == 0 ? half : half + 2));
    }
    CHECK_THROWS(two_color_partial_exact(41, Objective::Size));
}

TEST_CASE("fork functions") {
    CHECK(fork_g(5, 1) == 3);
    for (std::uint64_t r = 1; r <= 4096; ++r) REQUIRE(fork_g(r, 1) == std::bit_width(r));
    for (int k = 1; k <= 3; ++k)
        for (std::uint64_t r = 1; r <= 12; ++r) {
            const int naive = naive_fork_g(r, k, 10);
            if (naive < 0) CHECK(fork_g(r, k) > 10);
            else CHECK(fork_g(r, k) == naive);
        }
    for (std::uint64_t r = 2; r <= 256; ++r) CHECK(fork_g(r, 2) >= fork_g_recurrence_bound(r, 1));
    CHECK(binom_at_most(4, 1) == 5);
    CHECK(binom_at_most(4, 9) == 16);
}

TEST_CASE("fork brute force values") {
    const auto f = fork_f_small(2, 1, 4);
    CHECK(f.integer() == fork_g(2, 1));
    const auto f2 = fork_f_small(2, 2, 4);
    REQUIRE(f2.resolved());
    CHECK(*f2.integer() >= fork_g(2, 2));
}
