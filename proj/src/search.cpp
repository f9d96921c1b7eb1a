#include "rainbow/search.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace rainbow {

std::string to_string(SearchMethod m) {
    switch (m) {
    case SearchMethod::Brute: return "brute";
    case SearchMethod::CanonicalPartition: return "canonical-partition";
    case SearchMethod::CompositionDP: return "composition-DP";
    case SearchMethod::Formula: return "formula";
    }
    return "?";
}

std::optional<std::int64_t> SearchResult::integer() const {
    if (auto v = std::get_if<std::int64_t>(&value)) return *v;
    return std::nullopt;
}

std::string SearchResult::value_text() const {
    if (auto v = std::get_if<std::int64_t>(&value)) return std::to_string(*v);
    if (auto r = std::get_if<ExactRatio>(&value)) return to_string(*r);
    return bound;
}

namespace {

constexpr int kSearchGroundLimit = 6;  // 64 sets, one bit each in a Word

std::vector<Word> level_order(int n) {
    std::vector<Word> order(std::size_t{1} << n);
    for (Word w = 0; w < order.size(); ++w) order[w] = w;
    std::stable_sort(order.begin(), order.end(), [](Word a, Word b) { return std::popcount(a) < std::popcount(b); });
    return order;
}

void check_ground(int n, const char* what) {
    if (n < 0 || n > kSearchGroundLimit) throw std::out_of_range(std::string(what) + ": ground size out of range");
}

/// Assigned sets grouped by color, each group and the union kept sorted.
class Assignment {
public:
    explicit Assignment(int n) : n_(n), color_(std::size_t{1} << n, -1) {}

    int ground() const { return n_; }
    int color(Word w) const { return color_[w]; }
    const std::vector<int>& colors() const { return color_; }

    void assign(Word w, int c) {
        color_[w] = c;
        if (c < 0) return;
        if (static_cast<int>(classes_.size()) <= c) classes_.resize(c + 1);
        auto& cls = classes_[c];
        cls.insert(std::lower_bound(cls.begin(), cls.end(), w), w);
        const auto pos = std::lower_bound(all_.begin(), all_.end(), w) - all_.begin();
        all_.insert(all_.begin() + pos, w);
        all_colors_.insert(all_colors_.begin() + pos, c);
    }

    void unassign(Word w) {
        const int c = color_[w];
        color_[w] = -1;
        if (c < 0) return;
        auto& cls = classes_[c];
        cls.erase(std::lower_bound(cls.begin(), cls.end(), w));
        const auto pos = std::lower_bound(all_.begin(), all_.end(), w) - all_.begin();
        all_.erase(all_.begin() + pos);
        all_colors_.erase(all_colors_.begin() + pos);
    }

    /// Copy of `p` inside color class c that uses w.
    bool mono_through(const PosetPattern& p, CopyMode mode, Word w, int c) const {
        const auto& cls = classes_[c];
        CopyQuery q;
        q.mode = mode;
        q.ground = n_;
        q.anchor = std::lower_bound(cls.begin(), cls.end(), w) - cls.begin();
        return search_copy(p, cls, {}, q).host_indices.has_value();
    }

    /// Rainbow copy of `p` among all colored sets that uses w.
    bool rainbow_through(const PosetPattern& p, CopyMode mode, Word w) const {
        CopyQuery q;
        q.mode = mode;
        q.ground = n_;
        q.chromatic = Chromatic::Rainbow;
        q.anchor = std::lower_bound(all_.begin(), all_.end(), w) - all_.begin();
        return search_copy(p, all_, all_colors_, q).host_indices.has_value();
    }

private:
    int n_;
    std::vector<int> color_;
    std::vector<std::vector<Word>> classes_;
    std::vector<Word> all_;
    std::vector<int> all_colors_;
};

// Shared skeleton: sets are colored along the level order and the
// ground-permutation reduction asks singleton keys to be non-decreasing.
class ColoringWalk {
public:
    ColoringWalk(int n, const SearchOptions& opts) : order_(level_order(n)), state_(n), opts_(opts) {}

    std::uint64_t nodes() const { return nodes_; }
    bool aborted() const { return aborted_; }

protected:
    bool tick() {
        ++nodes_;
        if (opts_.budget && nodes_ > opts_.budget) aborted_ = true;
        return !aborted_;
    }

    // Smallest key allowed for the set at position i.
    int singleton_floor(std::size_t i, int none) const {
        if (!opts_.ground_symmetry) return none;
        const Word w = order_[i];
        if (std::popcount(w) != 1 || i < 2) return none;
        return state_.color(order_[i - 1]);
    }

    std::vector<Word> order_;
    Assignment state_;
    SearchOptions opts_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
};

class RamseyWalk : public ColoringWalk {
public:
    RamseyWalk(std::span<const PosetPattern> ps, CopyMode mode, int n, const SearchOptions& opts)
        : ColoringWalk(n, opts), ps_(ps), mode_(mode) {
        interchangeable_ = std::all_of(ps.begin(), ps.end(), [&](const PosetPattern& p) { return p == ps.front(); });
    }

    std::optional<std::vector<int>> run() {
        if (dfs(0, -1)) return state_.colors();
        return std::nullopt;
    }

private:
    bool dfs(std::size_t i, int max_used) {
        if (i == order_.size()) return true;
        const Word w = order_[i];
        const int k = static_cast<int>(ps_.size());
        const int hi = interchangeable_ ? std::min(max_used + 1, k - 1) : k - 1;
        for (int c = std::max(0, singleton_floor(i, 0)); c <= hi; ++c) {
            if (!tick()) return false;
            state_.assign(w, c);
            const bool hit = opts_.prune && state_.mono_through(ps_[c], mode_, w, c);
            if (!hit && dfs(i + 1, std::max(max_used, c))) return true;
            state_.unassign(w);
            if (aborted_) return false;
        }
        return false;
    }

    std::span<const PosetPattern> ps_;
    CopyMode mode_;
    bool interchangeable_ = false;
};

class RainbowWalk : public ColoringWalk {
public:
    RainbowWalk(const PosetPattern& p, const PosetPattern& q, CopyMode mode, int n, const SearchOptions& opts)
        : ColoringWalk(n, opts), p_(p), q_(q), mode_(mode) {}

    std::optional<std::vector<int>> run() {
        if (dfs(0, -1)) return state_.colors();
        return std::nullopt;
    }

    std::uint64_t count_all() {
        opts_.prune = false;
        count_ = 0;
        counting_ = true;
        dfs(0, -1);
        return count_;
    }

private:
    bool dfs(std::size_t i, int max_used) {
        if (i == order_.size()) {
            ++count_;
            return !counting_;
        }
        const Word w = order_[i];
        for (int c = std::max(0, singleton_floor(i, 0)); c <= max_used + 1; ++c) {
            if (!tick()) return false;
            state_.assign(w, c);
            const bool hit =
                opts_.prune && (state_.mono_through(p_, mode_, w, c) || state_.rainbow_through(q_, mode_, w));
            if (!hit && dfs(i + 1, std::max(max_used, c))) return true;
            state_.unassign(w);
            if (aborted_) return false;
        }
        return false;
    }

    const PosetPattern& p_;
    const PosetPattern& q_;
    CopyMode mode_;
    bool counting_ = false;
    std::uint64_t count_ = 0;
};

std::string mode_star(CopyMode mode) { return mode == CopyMode::Strong ? "*" : ""; }

// Scan n = 0..n_cap for the first ground size without an avoiding coloring.
template <class MakeWalk>
SearchResult scan(SearchResult res, int n_cap, MakeWalk&& make_walk) {
    res.n_min = 0;
    for (int n = 0; n <= n_cap; ++n) {
        auto walk = make_walk(n);
        auto avoider = walk.run();
        res.nodes += walk.nodes();
        if (walk.aborted()) {
            res.budget_exhausted = true;
            res.bound = ">" + std::to_string(n - 1);
            return res;
        }
        if (!avoider) {
            res.value = std::int64_t{n};
            res.n_max = n;
            return res;
        }
        res.witness = Coloring(n, *avoider);
        res.witness_palette.clear();
        std::vector<bool> seen;
        for (int c : *avoider) {
            if (c >= static_cast<int>(seen.size())) seen.resize(c + 1, false);
            if (!seen[c]) {
                seen[c] = true;
                res.witness_palette.push_back(c);
            }
        }
        res.n_max = n;
    }
    res.bound = ">" + std::to_string(n_cap);
    return res;
}

}  // namespace

SearchResult ramsey(std::span<const PosetPattern> ps, CopyMode mode, int n_cap, const SearchOptions& opts) {
    if (ps.empty()) throw std::invalid_argument("ramsey needs at least one pattern");
    check_ground(n_cap, "ramsey");
    SearchResult res;
    res.problem = "R" + mode_star(mode) + "(";
    for (std::size_t i = 0; i < ps.size(); ++i) res.problem += (i ? "," : "") + poset_name(ps[i]);
    res.problem += ")";
    res.method = SearchMethod::Brute;
    return scan(std::move(res), n_cap, [&](int n) { return RamseyWalk(ps, mode, n, opts); });
}

SearchResult rainbow_ramsey(const PosetPattern& p, const PosetPattern& q, CopyMode mode, int n_cap,
                            const SearchOptions& opts) {
    check_ground(n_cap, "rainbow_ramsey");
    SearchResult res;
    res.problem = "RR" + mode_star(mode) + "(" + poset_name(p) + "," + poset_name(q) + ")";
    res.method = SearchMethod::CanonicalPartition;
    res = scan(std::move(res), n_cap, [&](int n) { return RainbowWalk(p, q, mode, n, opts); });
    res.witness_palette.clear();
    return res;
}

std::uint64_t canonical_partition_count(int n, bool ground_symmetry) {
    if (n < 0 || n > 3) throw std::out_of_range("canonical_partition_count supports n <= 3");
    SearchOptions opts;
    opts.ground_symmetry = ground_symmetry;
    const auto c1 = standard_poset(StandardPoset::Chain, 1);
    return RainbowWalk(c1, c1, CopyMode::Weak, n, opts).count_all();
}

// ---------------------------------------------------------------------------
// Threshold functions

namespace {

struct Incomparability {
    explicit Incomparability(int n) : table(std::size_t{1} << n, 0) {
        for (Word a = 0; a < table.size(); ++a)
            for (Word b = 0; b < table.size(); ++b)
                if (!comparable(a, b)) table[a] |= Word{1} << b;
    }
    std::vector<Word> table;  // bit b of table[a]: a and b incomparable
};

class ThresholdWalk {
public:
    ThresholdWalk(int n, int k, bool partial, const SearchOptions& opts)
        : n_(n), k_(k), partial_(partial), opts_(opts), order_(level_order(n)), inc_(n),
          color_(std::size_t{1} << n, -1), class_mask_(k, 0), sizes_(k, 0) {}

    void run() { dfs(0, -1); }

    int best() const { return best_; }
    const std::vector<int>& best_coloring() const { return best_coloring_; }
    std::uint64_t nodes() const { return nodes_; }
    bool aborted() const { return aborted_; }

private:
    // A strong rainbow A_k through w among colored sets.
    bool rainbow_antichain(Word w) const {
        const int c = color_[w];
        const Word cand = inc_.table[w] & colored_ & ~class_mask_[c];
        return extend(cand, k_ - 1);
    }

    // Pick `need` more sets from cand, pairwise incomparable with distinct colors.
    bool extend(Word cand, int need) const {
        if (need == 0) return true;
        while (cand) {
            if (std::popcount(cand) < need) return false;
            const int x = std::countr_zero(cand);
            cand &= cand - 1;
            if (extend(cand & inc_.table[x] & ~class_mask_[color_[x]], need - 1)) return true;
        }
        return false;
    }

    int bound(std::size_t remaining) const {
        long long total = static_cast<long long>(remaining);
        long long lo = std::numeric_limits<long long>::max();
        for (int c = 0; c < k_; ++c) {
            total += sizes_[c];
            lo = std::min<long long>(lo, sizes_[c] + static_cast<long long>(remaining));
        }
        return static_cast<int>(std::min(lo, total / k_));
    }

    void dfs(std::size_t i, int max_used) {
        if (aborted_) return;
        if (bound(order_.size() - i) <= best_) return;
        if (i == order_.size()) {
            best_ = *std::min_element(sizes_.begin(), sizes_.end());
            best_coloring_ = color_;
            return;
        }
        const Word w = order_[i];
        int floor = partial_ ? -1 : 0;
        if (opts_.ground_symmetry && std::popcount(w) == 1 && i >= 2) floor = std::max(floor, color_[order_[i - 1]]);
        // colored options first so good colorings appear early
        for (int c = std::max(0, floor); c <= std::min(max_used + 1, k_ - 1); ++c) {
            if (++nodes_, opts_.budget && nodes_ > opts_.budget) {
                aborted_ = true;
                return;
            }
            place(w, c);
            if (!rainbow_antichain(w)) dfs(i + 1, std::max(max_used, c));
            lift(w, c);
            if (aborted_) return;
        }
        if (floor < 0) {
            ++nodes_;
            dfs(i + 1, max_used);
        }
    }

    void place(Word w, int c) {
        color_[w] = c;
        class_mask_[c] |= Word{1} << w;
        colored_ |= Word{1} << w;
        ++sizes_[c];
    }
    void lift(Word w, int c) {
        color_[w] = -1;
        class_mask_[c] &= ~(Word{1} << w);
        colored_ &= ~(Word{1} << w);
        --sizes_[c];
    }

    int n_, k_;
    bool partial_;
    SearchOptions opts_;
    std::vector<Word> order_;
    Incomparability inc_;
    std::vector<int> color_;
    std::vector<Word> class_mask_;
    Word colored_ = 0;
    std::vector<int> sizes_;
    int best_ = -1;
    std::vector<int> best_coloring_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
};

std::string threshold_name(int n, int k, bool partial) {
    return std::string("F") + (partial ? "'" : "") + "(" + std::to_string(n) + "," + std::to_string(k) + ")";
}

}  // namespace

SearchResult threshold_F(int n, int k, bool partial, const SearchOptions& opts) {
    check_ground(n, "threshold_F");
    if (k < 1) throw std::invalid_argument("threshold_F needs k >= 1");
    ThresholdWalk walk(n, k, partial, opts);
    walk.run();
    SearchResult res;
    res.problem = threshold_name(n, k, partial);
    res.method = SearchMethod::CanonicalPartition;
    res.nodes = walk.nodes();
    res.n_min = n;
    if (walk.aborted()) {
        res.budget_exhausted = true;
        res.bound = ">=" + std::to_string(walk.best() + 1);
        res.n_max = n - 1;
    } else {
        res.value = std::int64_t{walk.best() + 1};
        res.n_max = n;
    }
    if (walk.best() >= 0) res.witness = Coloring(n, walk.best_coloring());
    return res;
}

SearchResult threshold_F2_raw(int n, bool partial) {
    if (n < 0 || n > 4) throw std::out_of_range("threshold_F2_raw supports n <= 4");
    const std::size_t total = std::size_t{1} << n;
    const Incomparability inc(n);
    std::vector<int> color(total, -1);
    Word mask[2] = {0, 0};
    int size[2] = {0, 0};
    int best = -1;
    std::vector<int> best_coloring;
    std::uint64_t leaves = 0;

    auto dfs = [&](auto& self, Word w, bool clash) -> void {
        if (w == total) {
            ++leaves;
            const int m = std::min(size[0], size[1]);
            if (!clash && m > best) {
                best = m;
                best_coloring = color;
            }
            return;
        }
        for (int c = 0; c < 2; ++c) {
            const bool bad = clash || (inc.table[w] & mask[1 - c]) != 0;
            color[w] = c;
            mask[c] |= Word{1} << w;
            ++size[c];
            self(self, w + 1, bad);
            --size[c];
            mask[c] &= ~(Word{1} << w);
        }
        color[w] = -1;
        if (partial) self(self, w + 1, clash);
    };
    dfs(dfs, 0, false);

    SearchResult res;
    res.problem = threshold_name(n, 2, partial);
    res.method = SearchMethod::Brute;
    res.value = std::int64_t{best + 1};
    res.witness = Coloring(n, best_coloring);
    res.n_min = res.n_max = n;
    res.nodes = leaves;
    return res;
}

// ---------------------------------------------------------------------------
// Two-color partial DP over core chains

namespace {

template <class V>
struct FrontEntry {
    V a, b;
    int prev_s = -1;
    int prev_idx = -1;
    bool block_to_a = false;
    bool point_to_a = false;
};

template <class V>
void pareto(std::vector<FrontEntry<V>>& front) {
    std::sort(front.begin(), front.end(), [](const auto& x, const auto& y) {
        if (x.a != y.a) return x.a > y.a;
        return x.b > y.b;
    });
    std::vector<FrontEntry<V>> kept;
    for (auto& e : front)
        if (kept.empty() || e.b > kept.back().b) kept.push_back(std::move(e));
    front = std::move(kept);
}

template <class V, class Block, class Point>
SearchResult composition_dp(int n, Block block, Point point, SearchResult res) {
    std::vector<std::vector<FrontEntry<V>>> fronts(n + 1);
    const V zero{0};
    fronts[0].push_back({point(0), zero, -1, -1, false, true});
    fronts[0].push_back({zero, point(0), -1, -1, false, false});
    for (int s = 0; s < n; ++s) {
        pareto(fronts[s]);
        for (int idx = 0; idx < static_cast<int>(fronts[s].size()); ++idx) {
            const auto& e = fronts[s][idx];
            for (int t = s + 1; t <= n; ++t) {
                const V inner = block(s, t);
                const V pt = point(t);
                for (int blk = 0; blk < 2; ++blk)
                    for (int pnt = 0; pnt < 2; ++pnt) {
                        FrontEntry<V> next{e.a, e.b, s, idx, blk == 0, pnt == 0};
                        (blk == 0 ? next.a : next.b) += inner;
                        (pnt == 0 ? next.a : next.b) += pt;
                        fronts[t].push_back(std::move(next));
                    }
            }
        }
    }
    pareto(fronts[n]);
    int best_idx = 0;
    V best = std::min(fronts[n][0].a, fronts[n][0].b);
    for (int i = 1; i < static_cast<int>(fronts[n].size()); ++i) {
        V m = std::min(fronts[n][i].a, fronts[n][i].b);
        if (m > best) {
            best = m;
            best_idx = i;
        }
    }
    if constexpr (std::is_same_v<V, std::uint64_t>) {
        res.value = static_cast<std::int64_t>(best) + 1;
    } else {
        res.value = best;
    }
    res.nodes = 0;
    for (const auto& f : fronts) res.nodes += f.size();

    if (n <= 16) {
        std::vector<int> colors(std::size_t{1} << n, -1);
        int s = n, idx = best_idx;
        while (s >= 0 && idx >= 0) {
            const auto& e = fronts[s][idx];
            const Word hi = full_mask(s);
            colors[hi] = e.point_to_a ? 0 : 1;
            if (e.prev_s >= 0) {
                const Word lo = full_mask(e.prev_s);
                for (Word sub = (hi & ~lo); sub; sub = (sub - 1) & (hi & ~lo))
                    if ((sub | lo) != hi) colors[sub | lo] = e.block_to_a ? 0 : 1;
            }
            const int ps = e.prev_s;
            idx = e.prev_idx;
            s = ps;
        }
        res.witness = Coloring(n, colors);
    }
    return res;
}

}  // namespace

SearchResult two_color_partial_exact(int n, Objective objective) {
    if (n < 0 || n > kTwoColorGroundLimit) throw std::out_of_range("two_color_partial_exact supports n <= 40");
    SearchResult res;
    res.method = SearchMethod::CompositionDP;
    res.n_min = res.n_max = n;
    if (objective == Objective::Size) {
        res.problem = "F'(" + std::to_string(n) + ",2)";
        auto block = [](int s, int t) { return (std::uint64_t{1} << (t - s)) - 2; };
        auto point = [](int) { return std::uint64_t{1}; };
        return composition_dp<std::uint64_t>(n, block, point, std::move(res));
    }
    res.problem = "G'(" + std::to_string(n) + ",2)";
    auto point = [n](int s) { return ExactRatio(mpz_class(1), binomial(n, s)); };
    auto block = [n, point](int s, int t) {
        ExactRatio v = lubell_subcube(n, s, n - t) - point(s) - point(t);
        return v;
    };
    return composition_dp<ExactRatio>(n, block, point, std::move(res));
}

// ---------------------------------------------------------------------------
// Fork functions

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

struct SmallPascal {
    SmallPascal() {
        for (int m = 0; m <= kMaxGround; ++m) {
            row[m][0] = 1;
            for (int j = 1; j <= m; ++j) row[m][j] = sat_add(row[m - 1][j - 1], j < m ? row[m - 1][j] : 0);
        }
    }
    std::uint64_t row[kMaxGround + 1][kMaxGround + 1] = {};
};

const SmallPascal kSmallPascal;

}  // namespace

std::uint64_t binom_at_most(int m, int a) {
    if (m < 0 || m > kMaxGround) throw std::out_of_range("binom_at_most: m out of range");
    std::uint64_t s = 0;
    for (int j = 0; j <= std::min(a, m); ++j) s = sat_add(s, kSmallPascal.row[m][j]);
    return s;
}

bool fork_block_avoids(int n, int lo, int hi, std::uint64_t r) {
    if (r < 1) throw std::invalid_argument("fork needs r >= 1");
    if (lo < 0 || hi < lo || hi > n || n > kMaxGround) throw std::out_of_range("bad level block");
    std::uint64_t above = 0;
    for (int j = 1; j <= hi - lo; ++j) above = sat_add(above, kSmallPascal.row[n - lo][j]);
    return above <= r - 1;
}

int fork_min_blocks(int n, std::uint64_t r) {
    int blocks = 0;
    for (int lo = 0; lo <= n;) {
        int hi = lo;
        while (hi + 1 <= n && fork_block_avoids(n, lo, hi + 1, r)) ++hi;
        ++blocks;
        lo = hi + 1;
    }
    return blocks;
}

int fork_g(std::uint64_t r, int k) {
    if (k < 1) throw std::invalid_argument("fork_g needs k >= 1");
    if (r < 1) throw std::invalid_argument("fork_g needs r >= 1");
    for (int n = 0; n <= kMaxGround; ++n)
        if (fork_min_blocks(n, r) > k) return n;
    throw std::out_of_range("fork_g exceeds the supported ground size");
}

int fork_g_recurrence_bound(std::uint64_t r, int k) {
    const int g = fork_g(r, k);
    int a = 0;
    while (a + 1 + g <= kMaxGround && binom_at_most(a + 1 + g, a + 1) <= r) ++a;
    return g + a + 1;
}

SearchResult fork_f_small(int r, int k, int n_cap, const SearchOptions& opts) {
    if (k < 1 || k > 2) throw std::invalid_argument("fork_f_small supports k in {1, 2}");
    if (n_cap > 4) throw std::out_of_range("fork_f_small supports n_cap <= 4");
    std::vector<PosetPattern> ps(k, standard_poset(StandardPoset::Fork, r));
    auto res = ramsey(ps, CopyMode::Weak, n_cap, opts);
    res.problem = "f_" + std::to_string(k) + "(" + std::to_string(r) + ")";
    return res;
}

}  // namespace rainbow
