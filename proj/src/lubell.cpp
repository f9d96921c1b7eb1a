#include "rainbow/lubell.hpp"

#include <array>
#include <stdexcept>

namespace rainbow {

namespace {

constexpr int kPascalRows = 65;

struct PascalTable {
    std::array<std::array<mpz_class, kPascalRows>, kPascalRows> rows;
    PascalTable() {
        for (int n = 0; n < kPascalRows; ++n) {
            rows[n][0] = 1;
            for (int k = 1; k <= n; ++k) rows[n][k] = rows[n - 1][k - 1] + (k < n ? rows[n - 1][k] : mpz_class(0));
            for (int k = n + 1; k < kPascalRows; ++k) rows[n][k] = 0;
        }
    }
};

const PascalTable kPascal;

}  // namespace

std::string to_string(const ExactRatio& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

ExactRatio parse_ratio(const std::string& text) {
    ExactRatio r;
    if (r.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    r.canonicalize();
    return r;
}

ExactRatio ratio(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    ExactRatio r(num, den);
    r.canonicalize();
    return r;
}

const mpz_class& binomial(int n, int k) {
    static const mpz_class zero = 0;
    if (n < 0 || n >= kPascalRows) throw std::out_of_range("binomial table covers n <= 64");
    if (k < 0 || k > n) return zero;
    return kPascal.rows[n][k];
}

ExactRatio lubell_mass(const Family& fam) {
    const int n = fam.ground();
    // group by level so each reciprocal is added once per level
    std::vector<long> per_level(n + 1, 0);
    for (Word w : fam.members()) ++per_level[std::popcount(w)];
    ExactRatio total = 0;
    for (int i = 0; i <= n; ++i)
        if (per_level[i]) total += ratio(mpz_class(per_level[i]), binomial(n, i));
    total.canonicalize();
    return total;
}

ExactRatio lubell_subcube(int n, int a, int b) {
    if (a < 0 || b < 0 || a + b > n) throw std::invalid_argument("lubell_subcube needs a, b >= 0 and a + b <= n");
    if (n >= kPascalRows - 1) throw std::out_of_range("lubell_subcube supports n <= 63");
    return ratio(mpz_class(n + 1), mpz_class(a + b + 1) * binomial(a + b, a));
}

ExactRatio maxpart_identity_residual(const Family& fam) {
    const int n = fam.ground();
    if (n > kIdentityGroundLimit) throw std::out_of_range("identity check enumerates chains; n <= 8");
    const MaxPartition mp = max_partition(fam, ChainCountMode::Enumerate);
    const mpz_class chains = factorial(n);
    ExactRatio rhs = 0;
    for (Word f : fam.members()) {
        const int size = std::popcount(f);
        ExactRatio inner = 0;
        for (Word g : fam.members())
            if (is_subset(g, f)) inner += ExactRatio(1, binomial(size, std::popcount(g)));
        ExactRatio weight(mp.blocks.at(f), chains);
        weight.canonicalize();
        rhs += weight * inner;
    }
    ExactRatio residual = lubell_mass(fam) - rhs;
    residual.canonicalize();
    return residual;
}

}  // namespace rainbow
