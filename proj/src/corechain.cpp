#include "rainbow/corechain.hpp"

#include <stdexcept>

namespace rainbow {

namespace {

void check_families(std::span<const Family> fams) {
    if (fams.empty()) return;
    const int n = fams.front().ground();
    for (const auto& f : fams)
        if (f.ground() != n) throw std::invalid_argument("families must share a ground size");
    for (std::size_t i = 0; i < fams.size(); ++i)
        for (std::size_t j = i + 1; j < fams.size(); ++j)
            for (Word w : fams[i].members())
                if (fams[j].contains(w)) throw std::invalid_argument("families must be pairwise disjoint");
}

}  // namespace

bool comparability(std::span<const Family> fams, Comparability sense) {
    if (fams.size() < 2) throw std::invalid_argument("comparability needs at least two families");
    check_families(fams);
    for (std::size_t i = 0; i < fams.size(); ++i)
        for (std::size_t j = i + 1; j < fams.size(); ++j)
            for (Word a : fams[i].members())
                for (Word b : fams[j].members()) {
                    const bool nested = comparable(a, b);
                    if (nested != (sense == Comparability::Comparable)) return false;
                }
    return true;
}

std::optional<CrossPair> incomparable_cross_pair(std::span<const Family> fams) {
    for (std::size_t i = 0; i < fams.size(); ++i)
        for (std::size_t j = i + 1; j < fams.size(); ++j)
            for (Word a : fams[i].members())
                for (Word b : fams[j].members())
                    if (!comparable(a, b)) return CrossPair{i, j, a, b};
    return std::nullopt;
}

NotMutuallyComparable::NotMutuallyComparable(const CrossPair& p)
    : std::invalid_argument("families are not mutually comparable"), pair(p) {}

namespace {

using Members = std::vector<std::vector<Word>>;

// Returns the chain from the empty set up to `top`.
std::vector<Word> build(Members fams, Word top) {
    for (auto& f : fams) std::erase(f, top);

    std::size_t owner = 0;
    std::optional<Word> pick;
    for (std::size_t i = 0; i < fams.size(); ++i)
        for (Word w : fams[i]) {
            if (w == 0) continue;
            const int s = std::popcount(w);
            if (!pick || s > std::popcount(*pick) || (s == std::popcount(*pick) && w < *pick)) {
                pick = w;
                owner = i;
            }
        }
    if (!pick) {
        if (top == 0) return {0};
        return {0, top};
    }

    std::vector<Word> kept, rest;
    for (Word w : fams[owner]) {
        bool below_other = false;
        for (std::size_t j = 0; j < fams.size() && !below_other; ++j) {
            if (j == owner) continue;
            for (Word h : fams[j])
                if (is_subset(w, h)) {
                    below_other = true;
                    break;
                }
        }
        (below_other ? rest : kept).push_back(w);
    }
    Word meet = top;
    for (Word w : kept) meet &= w;
    fams[owner] = std::move(rest);
    auto chain = build(std::move(fams), meet);
    chain.push_back(top);
    return chain;
}

}  // namespace

CoreChain core_chain(std::span<const Family> fams) {
    if (fams.empty()) throw std::invalid_argument("core_chain needs at least one family");
    check_families(fams);
    if (auto bad = incomparable_cross_pair(fams)) throw NotMutuallyComparable(*bad);
    CoreChain cc;
    cc.ground = fams.front().ground();
    const Word top = full_mask(cc.ground);
    Members members;
    for (const auto& f : fams) members.emplace_back(f.members().begin(), f.members().end());
    cc.chain = build(std::move(members), top);
    if (cc.chain.size() == 1) cc.chain.push_back(top);  // n = 0
    for (std::size_t j = 0; j + 1 < cc.chain.size(); ++j) {
        const Word lo = cc.chain[j], hi = cc.chain[j + 1];
        int owner = -1;
        for (std::size_t i = 0; i < fams.size() && owner < 0; ++i)
            for (Word w : fams[i].members())
                if (w != lo && w != hi && is_subset(lo, w) && is_subset(w, hi)) {
                    owner = static_cast<int>(i);
                    break;
                }
        cc.owners.push_back(owner);
    }
    return cc;
}

ChainCheck validate_core_chain(const CoreChain& cc, std::span<const Family> fams) {
    auto fail = [](std::string why) { return ChainCheck{false, std::move(why)}; };
    if (cc.chain.size() < 2) return fail("chain needs at least the two endpoints");
    if (cc.chain.front() != 0 || cc.chain.back() != full_mask(cc.ground)) return fail("endpoints must be the empty set and [n]");
    for (std::size_t j = 0; j + 1 < cc.chain.size(); ++j)
        if (!is_subset(cc.chain[j], cc.chain[j + 1])) return fail("chain is not increasing under inclusion");

    for (const auto& fam : fams)
        for (Word w : fam.members()) {
            bool covered = false;
            for (std::size_t j = 0; j + 1 < cc.chain.size() && !covered; ++j)
                covered = is_subset(cc.chain[j], w) && is_subset(w, cc.chain[j + 1]);
            if (!covered) return fail("member " + SetWord(w, cc.ground).to_string() + " lies in no subcube of the chain");
        }

    for (std::size_t j = 0; j + 1 < cc.chain.size(); ++j) {
        const Word lo = cc.chain[j], hi = cc.chain[j + 1];
        int seen = -1;
        for (std::size_t i = 0; i < fams.size(); ++i)
            for (Word w : fams[i].members())
                if (w != lo && w != hi && is_subset(lo, w) && is_subset(w, hi)) {
                    if (seen >= 0 && seen != static_cast<int>(i))
                        return fail("truncated subcube " + std::to_string(j) + " meets two families");
                    seen = static_cast<int>(i);
                }
    }
    return {};
}

}  // namespace rainbow
