#include <doctest.h>

#include "helpers.hpp"
#include "rainbow/poset.hpp"

using namespace rainbow;

namespace {

// Existence of a copy by trying every injection of pattern elements into host members.
bool naive_copy(const PosetPattern& p, std::span<const Word> host, CopyMode mode) {
    const int k = p.size();
    std::vector<int> pick(k, -1);
    std::vector<bool> used(host.size(), false);
    auto rec = [&](auto& self, int i) -> bool {
        if (i == k) {
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) {
                    if (a == b) continue;
                    const bool sub = is_subset(host[pick[a]], host[pick[b]]);
                    if (p.leq(a, b) && !sub) return false;
                    if (mode == CopyMode::Strong && !p.leq(a, b) && sub) return false;
                }
            return true;
        }
        for (std::size_t h = 0; h < host.size(); ++h) {
            if (used[h]) continue;
            used[h] = true;
            pick[i] = static_cast<int>(h);
            if (self(self, i + 1)) return true;
            used[h] = false;
        }
        return false;
    };
    return rec(rec, 0);
}

std::vector<PosetPattern> small_patterns(int max_size) {
    std::vector<PosetPattern> out;
    for (int l = 1; l <= max_size; ++l) out.push_back(standard_poset(StandardPoset::Chain, l));
    for (int k = 2; k <= max_size; ++k) out.push_back(standard_poset(StandardPoset::Antichain, k));
    for (int r = 2; r + 1 <= max_size; ++r) {
        out.push_back(standard_poset(StandardPoset::Fork, r));
        out.push_back(standard_poset(StandardPoset::Broom, r));
    }
    for (int k = 2; k + 2 <= max_size; ++k) out.push_back(standard_poset(StandardPoset::GenDiamond, k));
    return out;
}

}  // namespace

TEST_CASE("standard posets") {
    const auto c3 = standard_poset(StandardPoset::Chain, 3);
    CHECK(c3.size() == 3);
    CHECK(c3.less(0, 2));
    const auto v2 = standard_poset(StandardPoset::Fork, 2);
    CHECK(v2.less(0, 1));
    CHECK(v2.less(0, 2));
    CHECK_FALSE(v2.comparable(1, 2));
    const auto l2 = standard_poset(StandardPoset::Broom, 2);
    CHECK(l2.less(0, 2));
    CHECK(l2.less(1, 2));
    const auto d2 = standard_poset(StandardPoset::GenDiamond, 2);
    CHECK(d2.size() == 4);
    CHECK(d2.less(0, 3));
    CHECK_FALSE(d2.comparable(1, 2));
    CHECK(poset_from_name("V2") == v2);
    CHECK(poset_from_name("L2") == l2);
    for (const auto& p : small_patterns(5)) CHECK(poset_from_name(poset_name(p)) == p);
    CHECK_THROWS(poset_from_name("X3"));
    CHECK_THROWS(PosetPattern({{true, true}, {true, true}}));
}

TEST_CASE("find_copy examples") {
    const Family b2 = Family::all(2);
    CHECK(find_copy(b2, standard_poset(StandardPoset::Chain, 3), CopyMode::Weak));
    CHECK_FALSE(find_copy(b2, standard_poset(StandardPoset::Chain, 4), CopyMode::Weak));
    CHECK(find_copy(b2, standard_poset(StandardPoset::Fork, 2), CopyMode::Weak));
    CHECK_FALSE(find_copy(b2, standard_poset(StandardPoset::Fork, 2), CopyMode::Strong) == std::nullopt);
    const Family level = region(RegionSpec::level(1), 3);
    CHECK_FALSE(find_copy(level, standard_poset(StandardPoset::Chain, 2), CopyMode::Weak));
    CHECK(find_copy(level, standard_poset(StandardPoset::Antichain, 3), CopyMode::Strong));
    // a chain hosts a weak antichain but not a strong one
    const Family chain(3, {0, 1, 3, 7});
    CHECK(find_copy(chain, standard_poset(StandardPoset::Antichain, 2), CopyMode::Weak));
    CHECK_FALSE(find_copy(chain, standard_poset(StandardPoset::Antichain, 2), CopyMode::Strong));
}

TEST_CASE("find_copy witnesses are valid embeddings") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Family host = testutil::random_family(rng, 2 + trial % 4, 0.5);
        for (const auto& p : small_patterns(4))
            for (auto mode : {CopyMode::Weak, CopyMode::Strong}) {
                const auto e = find_copy(host, p, mode);
                if (!e) continue;
                REQUIRE(is_valid_embedding(p, *e));
                for (Word w : e->image) REQUIRE(host.contains(w));
            }
    }
}

TEST_CASE("find_copy agrees with the all-injections oracle") {
    std::mt19937_64 rng(17);
    const auto patterns = small_patterns(4);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 1 + trial % 4;
        const Family host = testutil::random_family(rng, n, 0.2 + 0.1 * (trial % 5));
        for (const auto& p : patterns)
            for (auto mode : {CopyMode::Weak, CopyMode::Strong})
                REQUIRE(find_copy(host, p, mode).has_value() == naive_copy(p, host.members(), mode));
    }
}

TEST_CASE("strong copies are weak copies") {
    std::mt19937_64 rng(23);
    const auto patterns = small_patterns(6);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + trial % 5;
        const Family host = testutil::random_family(rng, n, 0.3);
        for (const auto& p : patterns)
            if (find_copy(host, p, CopyMode::Strong)) REQUIRE(find_copy(host, p, CopyMode::Weak));
    }
}

TEST_CASE("copy existence is invariant under relabeling the ground set") {
    std::mt19937_64 rng(29);
    const auto patterns = small_patterns(4);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + trial % 4;
        const Family host = testutil::random_family(rng, n, 0.35);
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Word> moved;
        for (Word w : host.members()) {
            Word m = 0;
            for (int i = 0; i < n; ++i)
                if ((w >> i) & 1) m |= Word{1} << perm[i];
            moved.push_back(m);
        }
        const Family other(n, moved);
        for (const auto& p : patterns)
            for (auto mode : {CopyMode::Weak, CopyMode::Strong})
                REQUIRE(find_copy(host, p, mode).has_value() == find_copy(other, p, mode).has_value());
    }
}

TEST_CASE("a thin weak copy of every small pattern sits in B_{|P|-1}") {
    for (const auto& p : small_patterns(6)) {
        const Family cube = Family::all(p.size() - 1);
        const auto e = find_copy(cube, p, CopyMode::Weak, true);
        REQUIRE(e);
        CHECK(e->thin);
    }
}

TEST_CASE("structural and extremal parameters") {
    CHECK(structural_params(standard_poset(StandardPoset::Fork, 2)).connected);
    CHECK_FALSE(structural_params(standard_poset(StandardPoset::Antichain, 3)).connected);
    CHECK(chain_length(standard_poset(StandardPoset::Chain, 4)) == 4);
    CHECK_FALSE(chain_length(standard_poset(StandardPoset::Antichain, 2)));
    for (int l = 2; l <= 4; ++l) {
        const auto pp = extremal_params(standard_poset(StandardPoset::Chain, l), 5);
        REQUIRE(pp.e_estimate.resolved());
        CHECK(*pp.e_estimate.value == l - 1);
    }
    const auto v2 = extremal_params(standard_poset(StandardPoset::Fork, 2), 4);
    REQUIRE(v2.m_weak.resolved());
    CHECK(*v2.m_weak.value == 1);
    CHECK_THROWS(extremal_params(standard_poset(StandardPoset::Chain, 2), 8));
}
