#include "rainbow/coloring.hpp"

#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rainbow {

Coloring::Coloring(int ground, std::vector<int> colors) : ground_(ground) {
    if (ground < 0 || ground > kMaxColoringGround) throw std::invalid_argument("colorings support n <= 24");
    if (colors.size() != (std::size_t{1} << ground)) throw std::invalid_argument("coloring needs one entry per set");
    std::map<int, int> rename;
    total_ = true;
    for (int& c : colors) {
        if (c < 0) {
            c = kUncolored;
            total_ = false;
            continue;
        }
        auto [it, fresh] = rename.emplace(c, static_cast<int>(rename.size()));
        c = it->second;
    }
    num_colors_ = static_cast<int>(rename.size());
    colors_ = std::move(colors);
}

Coloring Coloring::from_pairs(int ground, const std::vector<std::pair<Word, int>>& pairs) {
    if (ground < 0 || ground > kMaxColoringGround) throw std::invalid_argument("colorings support n <= 24");
    std::vector<int> colors(std::size_t{1} << ground, kUncolored);
    for (auto [w, c] : pairs) {
        if (w >= colors.size()) throw std::invalid_argument("colored set outside the ground set");
        if (c < 0) throw std::invalid_argument("colors must be nonnegative");
        if (colors[w] >= 0 && colors[w] != c) throw std::invalid_argument("set colored twice");
        colors[w] = c;
    }
    return Coloring(ground, std::move(colors));
}

Family Coloring::color_class(int c) const {
    std::vector<Word> m;
    for (Word w = 0; w < colors_.size(); ++w)
        if (colors_[w] == c) m.push_back(w);
    return Family(ground_, std::move(m));
}

std::vector<std::size_t> Coloring::class_sizes() const {
    std::vector<std::size_t> sizes(num_colors_, 0);
    for (int c : colors_)
        if (c >= 0) ++sizes[c];
    return sizes;
}

std::vector<Word> Coloring::colored_sets() const {
    std::vector<Word> out;
    for (Word w = 0; w < colors_.size(); ++w)
        if (colors_[w] >= 0) out.push_back(w);
    return out;
}

std::vector<int> Coloring::colored_set_colors() const {
    std::vector<int> out;
    for (int c : colors_)
        if (c >= 0) out.push_back(c);
    return out;
}

ColoringKind coloring_kind_from_name(const std::string& name) {
    static const std::map<std::string, ColoringKind> names = {
        {"consecutive-level", ColoringKind::ConsecutiveLevel}, {"trace", ColoringKind::Trace},
        {"level", ColoringKind::Level},       {"rr-lower", ColoringKind::RrLower},
        {"f2-lower", ColoringKind::F2Lower},  {"g2-lower", ColoringKind::G2Lower},
        {"fk-random", ColoringKind::FkRandom}};
    auto it = names.find(name);
    if (it == names.end()) throw std::invalid_argument("unknown coloring kind: " + name);
    return it->second;
}

std::string to_string(ColoringKind kind) {
    switch (kind) {
    case ColoringKind::ConsecutiveLevel: return "consecutive-level";
    case ColoringKind::Trace: return "trace";
    case ColoringKind::Level: return "level";
    case ColoringKind::RrLower: return "rr-lower";
    case ColoringKind::F2Lower: return "f2-lower";
    case ColoringKind::G2Lower: return "g2-lower";
    case ColoringKind::FkRandom: return "fk-random";
    }
    return "?";
}

int fk_level_offset(int k) {
    if (k < 2) throw std::invalid_argument("fk-random needs k >= 2");
    int l = 0;
    while ((std::int64_t{1} << (2 * (l + 1))) <= k - 1) ++l;
    return l;
}

int fk_intersection_cap(int n) { return (26 * n + 99) / 100; }

int floor_div_sqrt2(int n) {
    if (n < 0) throw std::invalid_argument("negative n");
    int h = 0;
    while (2 * static_cast<std::int64_t>(h + 1) * (h + 1) <= static_cast<std::int64_t>(n) * n) ++h;
    return h;
}

namespace {

void check_ground(int n) {
    if (n < 0 || n > kMaxColoringGround) throw std::invalid_argument("colorings support n <= 24");
}

template <class F>
Coloring build(int n, F&& color_of) {
    check_ground(n);
    std::vector<int> colors(std::size_t{1} << n);
    for (Word w = 0; w < colors.size(); ++w) colors[w] = color_of(w);
    return Coloring(n, std::move(colors));
}

Coloring consecutive_level(int n, const std::vector<int>& parts) {
    int sum = 0;
    for (int p : parts) {
        if (p < 1) throw std::invalid_argument("consecutive-level parts must be positive");
        sum += p;
    }
    if (sum != n + 1) throw std::invalid_argument("consecutive-level parts must sum to n + 1");
    std::vector<int> block_of(n + 1);
    for (int b = 0, lvl = 0; b < static_cast<int>(parts.size()); ++b)
        for (int j = 0; j < parts[b]; ++j) block_of[lvl++] = b;
    return build(n, [&](Word w) { return block_of[std::popcount(w)]; });
}

Coloring rr_lower(int e, int q, ExtremeTweak tweak) {
    if (e < 1 || q < 2) throw std::invalid_argument("rr-lower needs e >= 1 and |Q| >= 2");
    const bool bottom = tweak == ExtremeTweak::Bottom || tweak == ExtremeTweak::Both;
    const bool top = tweak == ExtremeTweak::Top || tweak == ExtremeTweak::Both;
    const int n = (q - 1) * e + (bottom ? 1 : 0) + (top ? 1 : 0) - 1;
    const int lo = bottom ? 1 : 0;
    const int interval_colors = q - 1;
    return build(n, [&](Word w) {
        const int s = std::popcount(w);
        if (bottom && s == 0) return interval_colors;
        if (top && s == n) return interval_colors + 1;
        return (s - lo) / e;
    });
}

Coloring f2_lower(int n) {
    if (n < 2 || (n % 2 == 1 && n < 5)) throw std::invalid_argument("f2-lower needs even n >= 2 or odd n >= 5");
    const Word s = full_mask(n / 2);
    const Word top = full_mask(n);
    const bool even = n % 2 == 0;
    return build(n, [&](Word w) {
        if (is_subset(w, s)) return 0;
        if (even) return is_subset(s, w) ? 1 : Coloring::kUncolored;
        if (w == top) return 0;
        return is_subset(s, w) ? 1 : Coloring::kUncolored;
    });
}

Coloring g2_lower(int n) {
    if (n < 1) throw std::invalid_argument("g2-lower needs n >= 1");
    const Word h = full_mask(floor_div_sqrt2(n));
    // H itself lies in both U_H and D_H; it is kept with U_H.
    return build(n, [&](Word w) {
        if (w == 0 || is_subset(h, w)) return 0;
        if (is_subset(w, h)) return 1;
        return Coloring::kUncolored;
    });
}

}  // namespace

FkConstruction fk_random(int n, int k, std::uint64_t seed) {
    check_ground(n);
    FkConstruction fk;
    fk.l_k = fk_level_offset(k);
    fk.intersection_cap = fk_intersection_cap(n);
    const int size = n / 2 + fk.l_k;
    if (size > n) throw std::invalid_argument("fk-random: n too small for k");
    std::mt19937_64 rng(seed);
    auto draw = [&] {
        std::vector<int> elems(n);
        for (int i = 0; i < n; ++i) elems[i] = i;
        Word w = 0;
        for (int i = 0; i < size; ++i) {
            const int j = i + static_cast<int>(rng() % static_cast<std::uint64_t>(n - i));
            std::swap(elems[i], elems[j]);
            w |= Word{1} << elems[i];
        }
        return w;
    };
    for (int i = 0; i < k - 1; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < kFkRetryCap && !placed; ++attempt) {
            const Word f = draw();
            placed = true;
            for (Word g : fk.seeds)
                if (f == g || std::popcount(f & g) > fk.intersection_cap) placed = false;
            if (placed) fk.seeds.push_back(f);
        }
        if (!placed) throw std::runtime_error("fk-random: rejection sampling exhausted");
    }
    std::vector<int> label(std::size_t{1} << n, Coloring::kUncolored);
    for (Word a = 0; a < label.size(); ++a) {
        for (Word f : fk.seeds)
            if (a != f && is_subset(f, a)) label[a] = k;
        if (label[a] >= 0) continue;
        for (int i = 0; i < k - 1; ++i)
            if (is_subset(a, fk.seeds[i])) {
                label[a] = i + 1;
                break;
            }
    }
    fk.coloring = Coloring(n, label);
    fk.class_of_color.assign(fk.coloring.num_colors(), 0);
    for (Word a = 0; a < label.size(); ++a)
        if (label[a] >= 0) fk.class_of_color[fk.coloring.color(a)] = label[a];
    return fk;
}

bool fk_structural_certificate(const FkConstruction& fk) {
    const Coloring& col = fk.coloring;
    const int k = static_cast<int>(fk.seeds.size()) + 1;
    for (Word a = 0; a < col.raw().size(); ++a) {
        if (!col.colored(a)) continue;
        const int cls = fk.class_of_color[col.color(a)];
        if (cls == k) {
            bool inside = false;
            for (Word f : fk.seeds) inside = inside || (a != f && is_subset(f, a));
            if (!inside) return false;
        } else if (cls < 1 || cls >= k || !is_subset(a, fk.seeds[cls - 1])) {
            return false;
        }
    }
    return true;
}

Coloring generate(ColoringKind kind, const GenerateParams& params) {
    const int n = params.n;
    switch (kind) {
    case ColoringKind::ConsecutiveLevel: return consecutive_level(n, params.parts);
    case ColoringKind::Trace:
        check_ground(n);
        if (params.trace_set & ~full_mask(n)) throw std::invalid_argument("trace set outside the ground set");
        return build(n, [&](Word w) { return std::popcount(w & params.trace_set); });
    case ColoringKind::Level: return build(n, [](Word w) { return std::popcount(w); });
    case ColoringKind::RrLower: return rr_lower(params.e, params.q, params.tweak);
    case ColoringKind::F2Lower: return f2_lower(n);
    case ColoringKind::G2Lower: return g2_lower(n);
    case ColoringKind::FkRandom:
        if (!params.seed) throw std::invalid_argument("fk-random needs a seed");
        return fk_random(n, params.k, *params.seed).coloring;
    }
    throw std::invalid_argument("unknown coloring kind");
}

std::optional<PatternWitness> find_pattern(const Coloring& col, const PosetPattern& pattern, CopyMode mode,
                                           ChromaticKind chromatic) {
    if (chromatic == ChromaticKind::Mono) {
        for (int c = 0; c < col.num_colors(); ++c) {
            if (auto e = find_copy(col.color_class(c), pattern, mode)) {
                return PatternWitness{*e, std::vector<int>(pattern.size(), c)};
            }
        }
        return std::nullopt;
    }
    const auto hosts = col.colored_sets();
    const auto colors = col.colored_set_colors();
    CopyQuery q;
    q.mode = mode;
    q.chromatic = Chromatic::Rainbow;
    q.ground = col.ground();
    auto res = search_copy(pattern, hosts, colors, q);
    if (!res.host_indices) return std::nullopt;
    PatternWitness pw;
    pw.embedding.mode = mode;
    for (std::size_t i : *res.host_indices) {
        pw.embedding.image.push_back(hosts[i]);
        pw.colors.push_back(colors[i]);
    }
    return pw;
}

WitnessVerdict validate_witness(const Coloring& col, const PosetPattern& p, const PosetPattern& q, CopyMode mode_p,
                                CopyMode mode_q) {
    WitnessVerdict v;
    v.mono_copy = find_pattern(col, p, mode_p, ChromaticKind::Mono);
    v.rainbow_copy = find_pattern(col, q, mode_q, ChromaticKind::Rainbow);
    return v;
}

bool is_thin(const Family& fam) {
    std::vector<bool> used(fam.ground() + 1, false);
    for (Word w : fam.members()) {
        const int s = std::popcount(w);
        if (used[s]) return false;
        used[s] = true;
    }
    return true;
}

bool is_antichain(const Family& fam) {
    auto m = fam.members();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (comparable(m[i], m[j])) return false;
    return true;
}

namespace {

Family thin_antichain_base(int n) {
    const Family host = region(RegionSpec::full(), n).filtered([n](Word w) { return std::popcount(w) != n - 1; });
    auto e = find_copy(host, standard_poset(StandardPoset::Antichain, n - 2), CopyMode::Strong, true);
    if (!e) throw std::logic_error("no base thin antichain found");
    return Family(n, e->image);
}

}  // namespace

Family thin_antichain(int n) {
    if (n < 4) throw std::invalid_argument("thin_antichain needs n >= 4");
    if (n > kMaxGround - 1) throw std::invalid_argument("thin_antichain supports n <= 62");
    int m = n % 2 == 0 ? 4 : 5;
    Family fam = thin_antichain_base(m);
    for (; m < n; m += 2) {
        const Word fresh = Word{1} << m;  // element m + 1
        std::vector<Word> next;
        for (Word f : fam.members()) next.push_back(f | fresh);
        next.push_back(full_mask(m));
        next.push_back(Word{1} << (m + 1));  // {m + 2}
        fam = Family(m + 2, std::move(next));
    }
    return fam;
}

std::string to_col_text(const Coloring& col) {
    std::ostringstream os;
    os << "n=" << col.ground() << " total=" << (col.total() ? 1 : 0) << "\n";
    for (Word w = 0; w < col.raw().size(); ++w)
        if (col.colored(w)) os << std::hex << w << std::dec << " " << col.color(w) << "\n";
    return os.str();
}

Coloring parse_col_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int n = -1;
    int total = -1;
    std::vector<std::pair<Word, int>> pairs;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (n < 0) {
            std::string a, b;
            ls >> a >> b;
            if (a.rfind("n=", 0) != 0 || b.rfind("total=", 0) != 0)
                throw std::invalid_argument("COL v1: expected header n=<n> total=<0|1>");
            n = std::stoi(a.substr(2));
            total = std::stoi(b.substr(6));
            continue;
        }
        std::string hex;
        int c = 0;
        if (!(ls >> hex >> c)) throw std::invalid_argument("COL v1: malformed line: " + line);
        pairs.emplace_back(static_cast<Word>(std::stoull(hex, nullptr, 16)), c);
    }
    if (n < 0) throw std::invalid_argument("COL v1: missing header");
    Coloring col = Coloring::from_pairs(n, pairs);
    if ((total == 1) != col.total()) throw std::invalid_argument("COL v1: total flag disagrees with the assignment");
    return col;
}

}  // namespace rainbow
