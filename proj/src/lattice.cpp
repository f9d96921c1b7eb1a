#include "rainbow/lattice.hpp"

#include <sstream>
#include <stdexcept>

namespace rainbow {

namespace {

void check_ground(int n) {
    if (n < 0 || n > kMaxGround) throw std::invalid_argument("ground size must be in [0, 63]");
}

}  // namespace

SetWord::SetWord(Word bits, int ground) : bits_(bits), ground_(ground) {
    check_ground(ground);
    if ((bits & ~full_mask(ground)) != 0) throw std::invalid_argument("set has elements outside the ground set");
}

SetWord SetWord::full(int ground) { return SetWord(full_mask(ground), ground); }

SetWord SetWord::of(std::initializer_list<int> elements, int ground) {
    Word bits = 0;
    for (int e : elements) {
        if (e < 1 || e > ground) throw std::invalid_argument("element outside [n]");
        bits |= Word{1} << (e - 1);
    }
    return SetWord(bits, ground);
}

SetWord SetWord::operator|(const SetWord& o) const { return SetWord(bits_ | o.bits_, ground_); }
SetWord SetWord::operator&(const SetWord& o) const { return SetWord(bits_ & o.bits_, ground_); }
SetWord SetWord::complement() const { return SetWord(~bits_ & full_mask(ground_), ground_); }

std::vector<int> SetWord::elements() const {
    std::vector<int> out;
    for (int i = 0; i < ground_; ++i)
        if ((bits_ >> i) & 1u) out.push_back(i + 1);
    return out;
}

std::string SetWord::to_string() const {
    std::string s = "{";
    bool first = true;
    for (int e : elements()) {
        if (!first) s += ",";
        s += std::to_string(e);
        first = false;
    }
    return s + "}";
}

Family::Family(int ground, std::vector<Word> members) : ground_(ground), members_(std::move(members)) {
    check_ground(ground);
    const Word mask = full_mask(ground);
    for (Word w : members_)
        if ((w & ~mask) != 0) throw std::invalid_argument("family member outside the ground set");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

Family Family::all(int ground) {
    check_ground(ground);
    if (ground > 30) throw std::invalid_argument("refusing to materialise B_n for n > 30");
    std::vector<Word> m(std::size_t{1} << ground);
    for (Word w = 0; w < m.size(); ++w) m[w] = w;
    return Family(ground, std::move(m));
}

bool Family::contains(Word w) const { return std::binary_search(members_.begin(), members_.end(), w); }

void Family::insert(Word w) {
    if ((w & ~full_mask(ground_)) != 0) throw std::invalid_argument("family member outside the ground set");
    auto it = std::lower_bound(members_.begin(), members_.end(), w);
    if (it == members_.end() || *it != w) members_.insert(it, w);
}

Family Family::without(Word w) const {
    return filtered([w](Word x) { return x != w; });
}

Family region(const RegionSpec& spec, int n) {
    check_ground(n);
    if (n > 30) throw std::invalid_argument("region materialisation limited to n <= 30");
    const Word top = full_mask(n);
    using K = RegionSpec::Kind;
    Family out(n);
    std::vector<Word> members;
    auto collect = [&](auto&& pred) {
        for (Word w = 0; w <= top; ++w)
            if (pred(w)) members.push_back(w);
    };
    switch (spec.kind) {
    case K::Level:
        if (spec.level_lo < 0 || spec.level_lo > n) throw std::invalid_argument("level out of range");
        collect([&](Word w) { return std::popcount(w) == spec.level_lo; });
        break;
    case K::IntervalUnion:
        if (spec.level_lo < 0 || spec.level_hi > n || spec.level_lo > spec.level_hi)
            throw std::invalid_argument("level interval out of range");
        collect([&](Word w) {
            int s = std::popcount(w);
            return s >= spec.level_lo && s <= spec.level_hi;
        });
        break;
    case K::Subcube:
        if ((spec.lower | spec.upper) & ~top) throw std::invalid_argument("subcube bounds outside ground set");
        if (!is_subset(spec.lower, spec.upper)) throw std::invalid_argument("subcube requires F subset of H");
        // enumerate submasks of H \ F
        for (Word free = spec.upper & ~spec.lower, s = free;; s = (s - 1) & free) {
            members.push_back(spec.lower | s);
            if (s == 0) break;
        }
        break;
    case K::Upset:
        if (spec.lower & ~top) throw std::invalid_argument("upset generator outside ground set");
        collect([&](Word w) { return is_subset(spec.lower, w); });
        break;
    case K::Downset:
        if (spec.lower & ~top) throw std::invalid_argument("downset generator outside ground set");
        collect([&](Word w) { return is_subset(w, spec.lower); });
        break;
    case K::Full:
        collect([](Word) { return true; });
        break;
    }
    Family fam(n, std::move(members));
    if (!spec.truncated) return fam;

    // unique minimum and maximum are required
    auto ms = fam.members();
    if (ms.empty()) throw std::invalid_argument("cannot truncate an empty region");
    Word meet = top, join = 0;
    for (Word w : ms) {
        meet &= w;
        join |= w;
    }
    if (!fam.contains(meet) || !fam.contains(join))
        throw std::invalid_argument("truncation needs a region with unique minimum and maximum");
    return fam.filtered([&](Word w) { return w != meet && w != join; });
}

mpz_class factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

namespace {

MaxPartition enumerate_partition(const Family& fam) {
    const int n = fam.ground();
    std::map<Word, std::uint64_t> counts;
    std::uint64_t leftover = 0;
    for_each_maximal_chain(n, [&](std::span<const Word> chain) {
        for (int i = n; i >= 0; --i) {
            if (fam.contains(chain[i])) {
                ++counts[chain[i]];
                return;
            }
        }
        ++leftover;
    });
    MaxPartition mp;
    for (Word w : fam.members()) mp.blocks[w] = mpz_class(static_cast<unsigned long>(counts[w]));
    mp.leftover = mpz_class(static_cast<unsigned long>(leftover));
    return mp;
}

// up[G] counts the chains G -> [n] that meet no member strictly above G; then
// |C_{n,F}| = |F|! * up[F]. All counts are at most 20! < 2^63.
MaxPartition dynamic_partition(const Family& fam) {
    const int n = fam.ground();
    const Word top = full_mask(n);
    std::vector<std::uint8_t> member(std::size_t{1} << n, 0);
    for (Word w : fam.members()) member[w] = 1;
    std::vector<std::uint64_t> up(std::size_t{1} << n, 0);
    for (Word g = top + 1; g-- > 0;) {
        if (g == top) {
            up[g] = 1;
            continue;
        }
        std::uint64_t total = 0;
        for (Word rest = top & ~g; rest; rest &= rest - 1) {
            Word h = g | (rest & -rest);
            if (!member[h]) total += up[h];
        }
        up[g] = total;
    }
    MaxPartition mp;
    mpz_class covered = 0;
    for (Word w : fam.members()) {
        mpz_class c = factorial(std::popcount(w)) * mpz_class(static_cast<unsigned long>(up[w]));
        covered += c;
        mp.blocks[w] = c;
    }
    mp.leftover = factorial(n) - covered;
    return mp;
}

}  // namespace

MaxPartition max_partition(const Family& fam, ChainCountMode mode) {
    if (mode == ChainCountMode::Enumerate) {
        if (fam.ground() > kEnumerateLimit) throw std::out_of_range("chain enumeration limited to n <= 10");
        return enumerate_partition(fam);
    }
    if (fam.ground() > kDynamicLimit) throw std::out_of_range("chain counting DP limited to n <= 20");
    return dynamic_partition(fam);
}

std::string to_fam_text(const Family& fam) {
    std::ostringstream os;
    os << "n=" << fam.ground() << "\n";
    for (Word w : fam.members()) {
        SetWord s(w, fam.ground());
        if (w == 0) {
            os << "{}\n";
            continue;
        }
        bool first = true;
        for (int e : s.elements()) {
            os << (first ? "" : ",") << e;
            first = false;
        }
        os << "\n";
    }
    return os.str();
}

Family parse_fam_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int n = -1;
    std::vector<Word> members;
    while (std::getline(is, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (n < 0) {
            if (line.rfind("n=", 0) != 0) throw std::invalid_argument("FAM v1: expected header n=<ground>");
            n = std::stoi(line.substr(2));
            check_ground(n);
            continue;
        }
        if (line == "{}") {
            members.push_back(0);
            continue;
        }
        Word w = 0;
        std::istringstream ls(line);
        std::string tok;
        while (std::getline(ls, tok, ',')) {
            int e = std::stoi(tok);
            if (e < 1 || e > n) throw std::invalid_argument("FAM v1: element out of range: " + tok);
            w |= Word{1} << (e - 1);
        }
        members.push_back(w);
    }
    if (n < 0) throw std::invalid_argument("FAM v1: missing header");
    return Family(n, std::move(members));
}

}  // namespace rainbow
