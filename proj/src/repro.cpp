#include "rainbow/repro.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rainbow {

const std::vector<ClaimInfo>& claim_registry() {
    static const std::vector<ClaimInfo> reg = {
        {"subcube-mass", 1, "subcube Lubell mass closed form, n <= 12", 10},
        {"maxpart-identity", 2, "max-partition identity on 200 random families, n <= 8", 60},
        {"rr-chains", 3, "RR(C2,C2) = 1 and RR(C2,C3) = 2", 60},
        {"ramsey-chains", 4, "R(C2,C2) = 2 and R(C3,C3) = 4", 300},
        {"thin-strong-a4", 5, "r*(A4) = 5 and thin antichains for 4 <= n <= 16", 30},
        {"rr-star-levels", 6, "level coloring of B_{k+1} avoids C2 / rainbow A_k, k = 4..8", 120},
        {"two-color-size", 7, "F'(n,2) for n = 4..9 and the raw n = 4 cross-check", 600},
        {"two-color-mass", 8, "G'(n,2) for n = 8..24 approaches 1 + sqrt 2", 120},
        {"fork-constants", 9, "g_1(r), the c_k constants and the g recurrence", 60},
        {"trace-witnesses", 10, "trace colorings at N = m(P) + |Q| - 2", 60},
        {"fk-random", 11, "random seed construction at n = 14 and n = 8", 300},
        {"real-inequalities", 12, "grid checks of the G(n,3) inequalities", 60},
        {"threshold-chain", 13, "F(n,2) <= F'(n,2) and F'(n,2) <= F(n,3), n <= 4", 600},
        {"rainbow-a2", 14, "rainbow A2 absent iff classes mutually comparable, n <= 3", 30},
    };
    return reg;
}

bool ReproReport::checks_pass() const {
    if (rows.empty()) return false;
    for (const auto& r : rows)
        if (!r.pass) return false;
    return true;
}

namespace {

using Rows = std::vector<ReproRow>;

PosetPattern C(int l) { return standard_poset(StandardPoset::Chain, l); }
PosetPattern A(int k) { return standard_poset(StandardPoset::Antichain, k); }

void expect_value(Rows& rows, const SearchResult& r, std::int64_t want) {
    const auto got = r.integer();
    rows.push_back({r.problem + " = " + std::to_string(want), got && *got == want,
                    "got " + r.value_text() + " (" + to_string(r.method) + ", " + std::to_string(r.nodes) + " nodes)"});
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

Rows subcube_mass(const ReproOptions&) {
    Rows rows;
    for (int n = 0; n <= 12; ++n) {
        int pairs = 0, bad = 0;
        for (int a = 0; a <= n; ++a)
            for (int b = 0; a + b <= n; ++b) {
                ExactRatio direct = 0;
                for (int i = a; i <= n - b; ++i) direct += ratio(binomial(n - a - b, i - a), binomial(n, i));
                ++pairs;
                if (direct != lubell_subcube(n, a, b)) ++bad;
            }
        rows.push_back({"n = " + std::to_string(n), bad == 0,
                        std::to_string(pairs) + " (a, b) pairs, " + std::to_string(bad) + " mismatches"});
    }
    return rows;
}

Rows maxpart_identity(const ReproOptions& opts) {
    std::mt19937_64 rng(opts.seed);
    int zero = 0, total = 0;
    std::string first_bad;
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + i % kIdentityGroundLimit;
        std::vector<Word> sets;
        for (Word w = 0; w <= full_mask(n); ++w)
            if (rng() % 100 < 30) sets.push_back(w);
        const Family fam(n, sets);
        ++total;
        if (maxpart_identity_residual(fam) == 0) {
            ++zero;
        } else if (first_bad.empty()) {
            first_bad = to_fam_text(fam);
        }
    }
    return {{"residual = 0 on 200 families", zero == total,
             std::to_string(zero) + "/" + std::to_string(total) + " exact zeros" +
                 (first_bad.empty() ? "" : "; first failure:\n" + first_bad)}};
}

void witness_row(Rows& rows, const SearchResult& r, const PosetPattern& p, const PosetPattern& q, CopyMode mode) {
    if (!r.witness) return;
    const auto v = validate_witness(*r.witness, p, q, mode, mode);
    rows.push_back({r.problem + " witness at n = " + std::to_string(r.witness->ground()), v.avoided(),
                    v.avoided() ? "avoids both patterns" : "witness fails"});
}

Rows rr_chains(const ReproOptions&) {
    Rows rows;
    auto r = rainbow_ramsey(C(2), C(2), CopyMode::Weak, 3);
    expect_value(rows, r, 1);
    witness_row(rows, r, C(2), C(2), CopyMode::Weak);
    r = rainbow_ramsey(C(2), C(3), CopyMode::Weak, 3);
    expect_value(rows, r, 2);
    witness_row(rows, r, C(2), C(3), CopyMode::Weak);
    return rows;
}

Rows ramsey_claim(const ReproOptions&) {
    Rows rows;
    for (int l : {2, 3}) {
        std::vector<PosetPattern> ps(2, C(l));
        auto r = ramsey(ps, CopyMode::Weak, 4);
        expect_value(rows, r, 2 * (l - 1));
    }
    return rows;
}

Rows thin_claim(const ReproOptions&) {
    Rows rows;
    const auto a4 = A(4);
    const bool in5 = find_copy(Family::all(5), a4, CopyMode::Strong, true).has_value();
    const bool in6 = find_copy(Family::all(6), a4, CopyMode::Strong, true).has_value();
    rows.push_back({"B_5 has no thin strong A_4", !in5, in5 ? "copy found" : "exhaustive search: none"});
    rows.push_back({"B_6 has a thin strong A_4", in6, in6 ? "copy found" : "none found"});
    for (int n = 4; n <= 16; ++n) {
        const Family f = thin_antichain(n);
        bool no_coatom = true;
        for (Word w : f.members()) no_coatom = no_coatom && std::popcount(w) != n - 1;
        const bool ok = is_thin(f) && is_antichain(f) && static_cast<int>(f.size()) == n - 2 && no_coatom;
        rows.push_back({"thin_antichain(" + std::to_string(n) + ")", ok,
                        "size " + std::to_string(f.size()) + (ok ? ", thin antichain without (n-1)-sets" : ", invariant broken")});
    }
    return rows;
}

Rows rr_star_levels(const ReproOptions&) {
    Rows rows;
    for (int k = 4; k <= 8; ++k) {
        GenerateParams gp;
        gp.n = k + 1;
        const auto col = generate(ColoringKind::Level, gp);
        const auto v = validate_witness(col, C(2), A(k), CopyMode::Strong, CopyMode::Strong);
        rows.push_back({"k = " + std::to_string(k) + ", level coloring of B_" + std::to_string(k + 1), v.avoided(),
                        v.mono_copy ? "mono C2 found" : v.rainbow_copy ? "rainbow A_k found" : "avoided"});
    }
    return rows;
}

std::int64_t f2_formula(int n) {
    const std::int64_t base = std::int64_t{1} << (n / 2);
    return n % 2 == 0 ? base : base + 2;
}

Rows two_color_size(const ReproOptions&) {
    Rows rows;
    for (int n = 4; n <= 9; ++n) expect_value(rows, two_color_partial_exact(n, Objective::Size), f2_formula(n));
    auto raw = threshold_F2_raw(4, true);
    expect_value(rows, raw, f2_formula(4));
    return rows;
}

Rows two_color_mass(const ReproOptions&) {
    Rows rows;
    const double target = 1 + std::sqrt(2.0);
    std::vector<ExactRatio> vals;
    std::ostringstream trace;
    for (int n = 8; n <= 24; ++n) {
        vals.push_back(std::get<ExactRatio>(two_color_partial_exact(n, Objective::Mass).value));
        trace << (n > 8 ? " " : "") << n << ":" << vals.back().get_d();
    }
    std::string first_drop;
    for (std::size_t i = 1; i < vals.size() && first_drop.empty(); ++i)
        if (vals[i] < vals[i - 1])
            first_drop = "G'(" + std::to_string(8 + i) + ") < G'(" + std::to_string(7 + i) + ")";
    bool below = true;
    for (const auto& v : vals) below = below && v.get_d() < target;
    rows.push_back({"values stay below 1 + sqrt 2", below, trace.str()});
    rows.push_back({"monotone approach over n = 8..24", first_drop.empty(),
                    first_drop.empty() ? "non-decreasing" : "first drop: " + first_drop});
    const double gap = target - vals.back().get_d();
    rows.push_back({"within 0.25 of 1 + sqrt 2 at n = 24", std::abs(gap) <= 0.25,
                    "G'(24,2) = " + to_string(vals.back()) + ", gap " + std::to_string(gap)});
    return rows;
}

Rows fork_constants(const ReproOptions&) {
    Rows rows;
    std::uint64_t bad_r = 0;
    for (std::uint64_t r = 1; r <= 1000000 && !bad_r; ++r)
        if (fork_g(r, 1) != static_cast<int>(std::bit_width(r))) bad_r = r;
    rows.push_back({"g_1(r) = floor(log r) + 1, r <= 10^6", bad_r == 0,
                    bad_r ? "fails at r = " + std::to_string(bad_r) : "all match"});

    const auto cs = c_sequence(10, 1e-12);
    double worst = 0;
    for (double x : cs.residuals) worst = std::max(worst, x);
    bool increasing = true;
    for (std::size_t i = 1; i < cs.c.size(); ++i) increasing = increasing && cs.c[i] > cs.c[i - 1];
    rows.push_back({"c_k residuals < 1e-12", worst < 1e-12, "max residual " + sci(worst)});
    rows.push_back({"c_1 = 1, c_2 in (1.29, 1.30)", cs.c[0] == 1.0 && cs.c[1] > 1.29 && cs.c[1] < 1.30,
                    "c_2 = " + std::to_string(cs.c[1])});
    rows.push_back({"c_k strictly increasing, k <= 10", increasing, "c_10 = " + std::to_string(cs.c.back())});

    std::uint64_t bad_rec = 0;
    for (std::uint64_t r = 1; r <= 256 && !bad_rec; ++r)
        if (fork_g(r, 2) < fork_g_recurrence_bound(r, 1)) bad_rec = r;
    rows.push_back({"g_2(r) >= recurrence bound, r <= 256", bad_rec == 0,
                    bad_rec ? "fails at r = " + std::to_string(bad_rec) : "holds"});
    return rows;
}

Rows trace_witnesses(const ReproOptions&) {
    Rows rows;
    const std::pair<PosetPattern, PosetPattern> cases[] = {
        {standard_poset(StandardPoset::Fork, 2), A(3)},
        {C(2), A(3)},
        {standard_poset(StandardPoset::Broom, 2), A(4)},
    };
    for (const auto& [p, q] : cases) {
        const auto params = extremal_params(p, 4);
        const std::string name = "(" + poset_name(p) + ", " + poset_name(q) + ")";
        if (!params.m_weak.resolved()) {
            rows.push_back({name, false, "m(P) not resolved within B_4"});
            continue;
        }
        const int m = *params.m_weak.value;
        GenerateParams gp;
        gp.n = m + q.size() - 2;
        gp.trace_set = full_mask(q.size() - 2);
        const auto col = generate(ColoringKind::Trace, gp);
        const auto v = validate_witness(col, p, q, CopyMode::Weak, CopyMode::Weak);
        rows.push_back({name + " at N = " + std::to_string(gp.n), v.avoided(),
                        "m(P) = " + std::to_string(m) + (v.avoided() ? ", avoided" : ", copy found")});
    }
    return rows;
}

Rows fk_claim(const ReproOptions& opts) {
    Rows rows;
    for (int k : {3, 5}) {
        const int n = 14;
        const auto fk = fk_random(n, k, opts.seed);
        const auto again = fk_random(n, k, opts.seed);
        rows.push_back({"n = 14, k = " + std::to_string(k) + " deterministic", fk.coloring == again.coloring,
                        "seed " + std::to_string(opts.seed) + " rebuilt twice"});
        const bool cert = fk_structural_certificate(fk);
        rows.push_back({"n = 14, k = " + std::to_string(k) + " structural certificate", cert,
                        cert ? "every class inside its up-set or down-set" : "membership violated"});
        const std::int64_t bound = (std::int64_t{1} << (fk.l_k + n / 2)) -
                                   static_cast<std::int64_t>(k - 2) * (std::int64_t{1} << fk_intersection_cap(n));
        const auto sizes = fk.coloring.class_sizes();
        std::int64_t smallest = std::numeric_limits<std::int64_t>::max();
        for (std::size_t c = 0; c < sizes.size(); ++c)
            if (fk.class_of_color[c] != k) smallest = std::min<std::int64_t>(smallest, sizes[c]);
        rows.push_back({"n = 14, k = " + std::to_string(k) + " class sizes", smallest >= bound,
                        "smallest class " + std::to_string(smallest) + ", bound " + std::to_string(bound)});

        const auto small = fk_random(8, k, opts.seed);
        const bool rainbow = find_pattern(small.coloring, A(k), CopyMode::Strong, ChromaticKind::Rainbow).has_value();
        rows.push_back({"n = 8, k = " + std::to_string(k) + " exhaustive rainbow A_k search", !rainbow,
                        rainbow ? "rainbow copy found" : "none"});
    }
    return rows;
}

Rows real_inequalities(const ReproOptions& opts) {
    Rows rows;
    for (auto c : {InequalityClaim::TechA, InequalityClaim::TechB, InequalityClaim::TechC, InequalityClaim::Ineq1}) {
        const double step = c == InequalityClaim::Ineq1 ? 1e-4 : 1e-3;
        const auto g = inequality_grid(c, step, opts.threads);
        std::ostringstream d;
        d << "max lhs - rhs " << g.max_violation << " at (" << g.alpha << ", " << g.beta << "), " << g.points
          << " points";
        rows.push_back({g.claim, g.max_violation <= 1e-12, d.str()});
    }
    return rows;
}

Rows threshold_chain(const ReproOptions&) {
    Rows rows;
    for (int n = 1; n <= 4; ++n) {
        const auto f2 = threshold_F(n, 2, false);
        const auto fp2 = threshold_F(n, 2, true);
        const auto f3 = threshold_F(n, 3, false);
        if (!f2.integer() || !fp2.integer() || !f3.integer()) {
            rows.push_back({"n = " + std::to_string(n), false, "value not resolved"});
            continue;
        }
        const auto a = *f2.integer(), b = *fp2.integer(), c = *f3.integer();
        const std::string vals =
            "F = " + std::to_string(a) + ", F' = " + std::to_string(b) + ", F(n,3) = " + std::to_string(c);
        rows.push_back({"n = " + std::to_string(n) + ": F(n,2) <= F'(n,2)", a <= b, vals});
        // F'(n,2) <= 2^n / 3 + 1, compared as 3 (F' - 1) <= 2^n
        const bool premise = 3 * (b - 1) <= (std::int64_t{1} << n);
        rows.push_back({"n = " + std::to_string(n) + ": F'(n,2) <= F(n,3) when F'(n,2) <= 2^n/3 + 1",
                        !premise || b <= c, premise ? vals : "premise fails; nothing to check"});
    }
    return rows;
}

Rows rainbow_a2(const ReproOptions&) {
    Rows rows;
    const auto a2 = A(2);
    for (int n = 0; n <= 3; ++n) {
        const std::size_t sets = std::size_t{1} << n;
        std::size_t total = 1;
        for (std::size_t i = 0; i < sets; ++i) total *= 3;
        std::size_t agree = 0;
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<int> raw(sets);
            std::vector<Word> cls[2];
            std::size_t x = code;
            for (Word w = 0; w < sets; ++w, x /= 3) {
                raw[w] = static_cast<int>(x % 3) - 1;
                if (raw[w] >= 0) cls[raw[w]].push_back(w);
            }
            const Coloring col(n, raw);
            const bool rainbow = find_pattern(col, a2, CopyMode::Strong, ChromaticKind::Rainbow).has_value();
            const Family fams[2] = {Family(n, cls[0]), Family(n, cls[1])};
            const bool mutual = comparability(fams, Comparability::Comparable);
            if (!rainbow == mutual) ++agree;
        }
        rows.push_back({"n = " + std::to_string(n), agree == total,
                        std::to_string(agree) + "/" + std::to_string(total) + " partial 2-colorings agree"});
    }
    return rows;
}

const std::map<std::string, std::function<Rows(const ReproOptions&)>>& runners() {
    static const std::map<std::string, std::function<Rows(const ReproOptions&)>> m = {
        {"subcube-mass", subcube_mass},
        {"maxpart-identity", maxpart_identity},
        {"rr-chains", rr_chains},
        {"ramsey-chains", ramsey_claim},
        {"thin-strong-a4", thin_claim},
        {"rr-star-levels", rr_star_levels},
        {"two-color-size", two_color_size},
        {"two-color-mass", two_color_mass},
        {"fork-constants", fork_constants},
        {"trace-witnesses", trace_witnesses},
        {"fk-random", fk_claim},
        {"real-inequalities", real_inequalities},
        {"threshold-chain", threshold_chain},
        {"rainbow-a2", rainbow_a2},
    };
    return m;
}

}  // namespace

ReproReport run_claim(const std::string& id, const ReproOptions& opts) {
    const auto& reg = claim_registry();
    auto it = std::find_if(reg.begin(), reg.end(), [&](const ClaimInfo& c) { return c.id == id; });
    if (it == reg.end()) throw std::invalid_argument("unknown claim id: " + id);
    ReproReport rep;
    rep.claim = *it;
    const auto start = std::chrono::steady_clock::now();
    rep.rows = runners().at(id)(opts);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

json to_json(const ReproReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back(json{{"check", row.check}, {"pass", row.pass}, {"detail", row.detail}});
    return json{{"claim", r.claim.id},
                {"criterion", r.claim.criterion},
                {"title", r.claim.title},
                {"pass", r.pass()},
                {"seconds", r.seconds},
                {"limit_seconds", r.claim.limit_seconds},
                {"rows", rows}};
}

}  // namespace rainbow
