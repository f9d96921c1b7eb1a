#include "rainbow/poset.hpp"

#include <numeric>
#include <stdexcept>

namespace rainbow {

PosetPattern::PosetPattern(std::vector<std::vector<bool>> leq) {
    const int k = static_cast<int>(leq.size());
    if (k > kMaxSize) throw std::invalid_argument("poset patterns are limited to 64 elements");
    for (const auto& row : leq)
        if (static_cast<int>(row.size()) != k) throw std::invalid_argument("order relation must be square");
    for (int p = 0; p < k; ++p) {
        if (!leq[p][p]) throw std::invalid_argument("order relation is not reflexive");
        for (int q = 0; q < k; ++q) {
            if (p != q && leq[p][q] && leq[q][p]) throw std::invalid_argument("order relation is not antisymmetric");
            for (int r = 0; r < k; ++r)
                if (leq[p][q] && leq[q][r] && !leq[p][r]) throw std::invalid_argument("order relation is not transitive");
        }
    }
    below_.assign(k, 0);
    above_.assign(k, 0);
    for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q)
            if (p != q && leq[p][q]) {
                below_[q] |= std::uint64_t{1} << p;
                above_[p] |= std::uint64_t{1} << q;
            }
}

std::vector<std::vector<bool>> PosetPattern::relation() const {
    std::vector<std::vector<bool>> r(size(), std::vector<bool>(size(), false));
    for (int p = 0; p < size(); ++p)
        for (int q = 0; q < size(); ++q) r[p][q] = leq(p, q);
    return r;
}

PosetPattern standard_poset(StandardPoset kind, int param) {
    using Rel = std::vector<std::vector<bool>>;
    auto identity = [](int k) {
        Rel r(k, std::vector<bool>(k, false));
        for (int i = 0; i < k; ++i) r[i][i] = true;
        return r;
    };
    switch (kind) {
    case StandardPoset::Chain: {
        if (param < 1) throw std::invalid_argument("chain needs at least one element");
        Rel r = identity(param);
        for (int i = 0; i < param; ++i)
            for (int j = i; j < param; ++j) r[i][j] = true;
        return PosetPattern(r);
    }
    case StandardPoset::Antichain:
        if (param < 1) throw std::invalid_argument("antichain needs at least one element");
        return PosetPattern(identity(param));
    case StandardPoset::Fork: {
        if (param < 2) throw std::invalid_argument("fork V_r needs r >= 2");
        Rel r = identity(param + 1);
        for (int i = 1; i <= param; ++i) r[0][i] = true;
        return PosetPattern(r);
    }
    case StandardPoset::Broom: {
        if (param < 2) throw std::invalid_argument("broom needs s >= 2");
        Rel r = identity(param + 1);
        for (int i = 0; i < param; ++i) r[i][param] = true;
        return PosetPattern(r);
    }
    case StandardPoset::GenDiamond: {
        if (param < 2) throw std::invalid_argument("generalized diamond D_k needs k >= 2");
        const int top = param + 1;
        Rel r = identity(param + 2);
        for (int i = 1; i <= top; ++i) r[0][i] = true;
        for (int i = 1; i <= param; ++i) r[i][top] = true;
        return PosetPattern(r);
    }
    }
    throw std::invalid_argument("unknown standard poset");
}

PosetPattern poset_from_name(const std::string& name) {
    if (name.size() < 2) throw std::invalid_argument("poset name must look like C3, A4, V2, L3 or D2");
    int param = 0;
    try {
        std::size_t used = 0;
        param = std::stoi(name.substr(1), &used);
        if (used != name.size() - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("bad poset name: " + name);
    }
    switch (name[0]) {
    case 'C': return standard_poset(StandardPoset::Chain, param);
    case 'A': return standard_poset(StandardPoset::Antichain, param);
    case 'V': return standard_poset(StandardPoset::Fork, param);
    case 'L': return standard_poset(StandardPoset::Broom, param);
    case 'D': return standard_poset(StandardPoset::GenDiamond, param);
    default: throw std::invalid_argument("bad poset name: " + name);
    }
}

std::string poset_name(const PosetPattern& pattern) {
    const int k = pattern.size();
    const std::pair<StandardPoset, char> kinds[] = {{StandardPoset::Chain, 'C'},
                                                    {StandardPoset::Antichain, 'A'},
                                                    {StandardPoset::Fork, 'V'},
                                                    {StandardPoset::Broom, 'L'},
                                                    {StandardPoset::GenDiamond, 'D'}};
    for (auto [kind, letter] : kinds) {
        int param = k;
        if (kind == StandardPoset::Fork || kind == StandardPoset::Broom) param = k - 1;
        if (kind == StandardPoset::GenDiamond) param = k - 2;
        const int min_param = (kind == StandardPoset::Chain || kind == StandardPoset::Antichain) ? 1 : 2;
        if (param < min_param) continue;
        if (standard_poset(kind, param) == pattern) return letter + std::to_string(param);
    }
    return "P" + std::to_string(k);
}

bool is_valid_embedding(const PosetPattern& pattern, const Embedding& e) {
    const int k = pattern.size();
    if (static_cast<int>(e.image.size()) != k) return false;
    for (int p = 0; p < k; ++p)
        for (int q = p + 1; q < k; ++q) {
            const Word a = e.image[p], b = e.image[q];
            if (a == b) return false;
            if (e.thin && std::popcount(a) == std::popcount(b)) return false;
            if (pattern.leq(p, q) && !is_subset(a, b)) return false;
            if (pattern.leq(q, p) && !is_subset(b, a)) return false;
            if (e.mode == CopyMode::Strong && !pattern.comparable(p, q) && comparable(a, b)) return false;
        }
    return true;
}

namespace {

struct PatternInfo {
    std::vector<int> order;       // linear extension
    std::vector<int> chain_below; // longest chain strictly below, in elements
    std::vector<int> chain_above;
    std::vector<int> twin_rank;   // twins share a class; -1 if none
};

PatternInfo analyse(const PosetPattern& pattern) {
    const int k = pattern.size();
    PatternInfo info;
    info.chain_below.assign(k, 0);
    info.chain_above.assign(k, 0);
    // longest chains via repeated relaxation (k <= 64)
    for (int round = 0; round < k; ++round)
        for (int p = 0; p < k; ++p)
            for (int q = 0; q < k; ++q)
                if (pattern.less(q, p)) {
                    info.chain_below[p] = std::max(info.chain_below[p], info.chain_below[q] + 1);
                    info.chain_above[q] = std::max(info.chain_above[q], info.chain_above[p] + 1);
                }
    info.order.resize(k);
    std::iota(info.order.begin(), info.order.end(), 0);
    std::stable_sort(info.order.begin(), info.order.end(),
                     [&](int a, int b) { return info.chain_below[a] < info.chain_below[b]; });
    info.twin_rank.assign(k, -1);
    for (int p = 0; p < k; ++p) {
        if (info.twin_rank[p] >= 0) continue;
        for (int q = p + 1; q < k; ++q)
            if (pattern.below(p) == pattern.below(q) && pattern.above(p) == pattern.above(q)) {
                info.twin_rank[p] = p;
                info.twin_rank[q] = p;
            }
    }
    return info;
}

class CopySearch {
public:
    CopySearch(const PosetPattern& pattern, std::span<const Word> hosts, std::span<const int> colors,
               const CopyQuery& query)
        : pattern_(pattern), hosts_(hosts), colors_(colors), query_(query), info_(analyse(pattern)) {
        k_ = pattern.size();
        position_.assign(k_, 0);
        for (int i = 0; i < k_; ++i) position_[info_.order[i]] = i;
        sizes_.resize(hosts.size());
        for (std::size_t i = 0; i < hosts.size(); ++i) sizes_[i] = std::popcount(hosts[i]);
    }

    CopySearchResult run() {
        CopySearchResult out;
        if (k_ == 0) {
            out.host_indices = std::vector<std::size_t>{};
            return out;
        }
        std::vector<std::vector<std::uint32_t>> domains(k_);
        for (int p = 0; p < k_; ++p)
            for (std::size_t i = 0; i < hosts_.size(); ++i)
                if (admissible(p, i)) domains[p].push_back(static_cast<std::uint32_t>(i));

        image_.assign(k_, 0);
        if (query_.anchor) {
            const auto a = static_cast<std::uint32_t>(*query_.anchor);
            for (int depth = 0; depth < k_ && !found_ && !aborted_; ++depth) {
                const int p = info_.order[depth];
                if (!std::binary_search(domains[p].begin(), domains[p].end(), a)) continue;
                auto local = domains;
                for (int q = 0; q < k_; ++q) {
                    if (q == p) {
                        local[q] = {a};
                        continue;
                    }
                    std::erase(local[q], a);
                }
                descend(0, std::move(local));
            }
        } else {
            descend(0, std::move(domains));
        }
        out.nodes = nodes_;
        out.aborted = aborted_ && !found_;
        if (found_) {
            std::vector<std::size_t> idx(k_);
            for (int p = 0; p < k_; ++p) idx[p] = image_[p];
            out.host_indices = std::move(idx);
        }
        return out;
    }

private:
    bool admissible(int p, std::size_t i) const {
        if (query_.chromatic == Chromatic::Rainbow && colors_[i] < 0) return false;
        const int s = sizes_[i];
        if (s < info_.chain_below[p]) return false;
        if (query_.ground >= 0 && query_.ground - s < info_.chain_above[p]) return false;
        return true;
    }

    std::uint64_t key(std::uint32_t i) const {
        const std::uint64_t c = query_.chromatic == Chromatic::Rainbow ? static_cast<std::uint64_t>(colors_[i]) : 0;
        return (c << 32) | i;
    }

    bool compatible(int p, std::uint32_t c, int r, std::uint32_t x) const {
        if (x == c) return false;
        const Word a = hosts_[c], b = hosts_[x];
        if (pattern_.less(p, r)) {
            if (!is_subset(a, b)) return false;
        } else if (pattern_.less(r, p)) {
            if (!is_subset(b, a)) return false;
        } else if (query_.mode == CopyMode::Strong && comparable(a, b)) {
            return false;
        }
        if (query_.thin && sizes_[c] == sizes_[x]) return false;
        if (query_.chromatic == Chromatic::Rainbow && colors_[c] == colors_[x]) return false;
        if (info_.twin_rank[p] >= 0 && info_.twin_rank[p] == info_.twin_rank[r]) {
            // twins are ordered by their position in the linear extension
            if (position_[p] < position_[r] ? key(x) <= key(c) : key(x) >= key(c)) return false;
        }
        return true;
    }

    void descend(int depth, std::vector<std::vector<std::uint32_t>> domains) {
        if (depth == k_) {
            found_ = true;
            return;
        }
        const int p = info_.order[depth];
        const auto candidates = domains[p];
        for (std::uint32_t c : candidates) {
            if (found_ || aborted_) return;
            if (query_.node_limit && ++nodes_ > query_.node_limit) {
                aborted_ = true;
                return;
            } else if (!query_.node_limit) {
                ++nodes_;
            }
            image_[p] = c;
            std::vector<std::vector<std::uint32_t>> next(k_);
            bool dead = false;
            for (int d = depth + 1; d < k_ && !dead; ++d) {
                const int r = info_.order[d];
                auto& dom = next[r];
                dom.reserve(domains[r].size());
                for (std::uint32_t x : domains[r])
                    if (compatible(p, c, r, x)) dom.push_back(x);
                dead = dom.empty();
            }
            if (dead) continue;
            if (query_.chromatic == Chromatic::Rainbow && !enough_colors(depth + 1, next)) continue;
            descend(depth + 1, std::move(next));
        }
    }

    // Remaining elements need pairwise distinct colors, so the remaining
    // domains must offer at least that many distinct colors.
    bool enough_colors(int depth, const std::vector<std::vector<std::uint32_t>>& domains) const {
        const int needed = k_ - depth;
        if (needed <= 1) return true;
        std::vector<int> seen;
        for (int d = depth; d < k_; ++d)
            for (std::uint32_t x : domains[info_.order[d]]) {
                const int c = colors_[x];
                if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
                    seen.push_back(c);
                    if (static_cast<int>(seen.size()) >= needed) return true;
                }
            }
        return false;
    }

    const PosetPattern& pattern_;
    std::span<const Word> hosts_;
    std::span<const int> colors_;
    CopyQuery query_;
    PatternInfo info_;
    int k_ = 0;
    std::vector<int> position_;
    std::vector<int> sizes_;
    std::vector<std::uint32_t> image_;
    std::uint64_t nodes_ = 0;
    bool found_ = false;
    bool aborted_ = false;
};

}  // namespace

CopySearchResult search_copy(const PosetPattern& pattern, std::span<const Word> hosts, std::span<const int> colors,
                             const CopyQuery& query) {
    if (query.chromatic == Chromatic::Rainbow && colors.size() != hosts.size())
        throw std::invalid_argument("rainbow search needs one color per host set");
    if (query.anchor && *query.anchor >= hosts.size()) throw std::out_of_range("anchor outside the host");
    return CopySearch(pattern, hosts, colors, query).run();
}

std::optional<Embedding> find_copy(const Family& host, const PosetPattern& pattern, CopyMode mode, bool thin) {
    CopyQuery q;
    q.mode = mode;
    q.thin = thin;
    q.ground = host.ground();
    auto res = search_copy(pattern, host.members(), {}, q);
    if (!res.host_indices) return std::nullopt;
    Embedding e;
    e.mode = mode;
    e.thin = thin;
    for (std::size_t i : *res.host_indices) e.image.push_back(host.members()[i]);
    return e;
}

StructuralParams structural_params(const PosetPattern& pattern) {
    const int k = pattern.size();
    StructuralParams sp;
    if (k == 0) return sp;
    std::vector<bool> seen(k, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
        int p = stack.back();
        stack.pop_back();
        for (int q = 0; q < k; ++q)
            if (!seen[q] && pattern.comparable(p, q)) {
                seen[q] = true;
                ++reached;
                stack.push_back(q);
            }
    }
    sp.connected = reached == k;
    bool has_min = false, has_max = false;
    for (int p = 0; p < k; ++p) {
        bool is_min = true, is_max = true;
        for (int q = 0; q < k; ++q) {
            is_min = is_min && pattern.leq(p, q);
            is_max = is_max && pattern.leq(q, p);
        }
        has_min = has_min || is_min;
        has_max = has_max || is_max;
    }
    sp.f = has_min && has_max ? 0 : (!has_min && !has_max ? 2 : 1);
    return sp;
}

std::string CappedValue::to_string() const {
    if (value) return std::to_string(*value);
    return ">=" + std::to_string(at_least);
}

std::optional<int> chain_length(const PosetPattern& pattern) {
    for (int p = 0; p < pattern.size(); ++p)
        for (int q = 0; q < pattern.size(); ++q)
            if (!pattern.comparable(p, q)) return std::nullopt;
    return pattern.size();
}

std::optional<int> largest_free_window(const PosetPattern& pattern, int n, CopyMode mode) {
    int best = 0;
    for (int m = 1; m <= n + 1; ++m) {
        bool all_free = true;
        for (int lo = 0; lo + m - 1 <= n && all_free; ++lo)
            all_free = !find_copy(region(RegionSpec::levels(lo, lo + m - 1), n), pattern, mode).has_value();
        if (!all_free) return best;
        best = m;
    }
    return std::nullopt;
}

namespace {

// Smallest m <= cap with B_m hosting a copy, reported as m - 1.
CappedValue free_cube_dimension(const PosetPattern& pattern, int cap, CopyMode mode, bool thin) {
    CappedValue v;
    v.provenance = "exhaustive search";
    for (int m = 0; m <= cap; ++m)
        if (find_copy(Family::all(m), pattern, mode, thin)) {
            v.value = m - 1;
            return v;
        }
    v.at_least = cap;
    return v;
}

CappedValue window_estimate(const PosetPattern& pattern, int cap, CopyMode mode) {
    CappedValue v;
    v.provenance = "estimate from consecutive-level search";
    std::optional<int> best;
    for (int n = 0; n <= cap; ++n) {
        auto w = largest_free_window(pattern, n, mode);
        if (w && (!best || *w < *best)) best = w;
    }
    if (best) {
        v.value = best;
    } else {
        v.at_least = cap + 1;
    }
    return v;
}

}  // namespace

PosetParams extremal_params(const PosetPattern& pattern, int n_cap) {
    if (n_cap < 0 || n_cap > kExtremalCapLimit) throw std::out_of_range("n_cap must be in [0, 7]");
    PosetParams pp;
    const auto sp = structural_params(pattern);
    pp.connected = sp.connected;
    pp.f = sp.f;
    pp.m_weak = free_cube_dimension(pattern, n_cap, CopyMode::Weak, false);
    pp.m_strong = free_cube_dimension(pattern, n_cap, CopyMode::Strong, false);
    pp.r_star = free_cube_dimension(pattern, n_cap, CopyMode::Strong, true);
    if (auto l = chain_length(pattern)) {
        pp.e_estimate.value = *l - 1;
        pp.e_estimate.provenance = "wired: chain";
        pp.e_star_estimate = pp.e_estimate;
    } else {
        pp.e_estimate = window_estimate(pattern, n_cap, CopyMode::Weak);
        pp.e_star_estimate = window_estimate(pattern, n_cap, CopyMode::Strong);
    }
    return pp;
}

}  // namespace rainbow
