#include "rainbow/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace rainbow {

double binary_entropy(double c) {
    if (!(c > 0.0 && c < 1.0)) throw std::domain_error("binary_entropy needs 0 < c < 1");
    return -c * std::log2(c) - (1.0 - c) * std::log2(1.0 - c);
}

EntropyConstants c_sequence(int k_max, double tol) {
    if (k_max < 1) throw std::invalid_argument("c_sequence needs k_max >= 1");
    if (!(tol >= 1e-14)) throw std::invalid_argument("c_sequence needs tol >= 1e-14");
    EntropyConstants out;
    out.tol = tol;
    out.c.push_back(1.0);
    for (int k = 1; k < k_max; ++k) {
        const double prev = out.c.back();
        auto f = [prev](double c) { return c * binary_entropy((c - prev) / c) - 1.0; };
        double lo = prev + 1e-9, hi = prev + 4.0;
        if (!(f(lo) < 0 && f(hi) > 0)) throw std::logic_error("c_sequence: bracket does not straddle the root");
        for (int it = 0; it < kBisectionSteps; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (f(mid) < 0 ? lo : hi) = mid;
        }
        const double root = std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
        out.c.push_back(root);
        out.residuals.push_back(std::abs(f(root)));
    }
    return out;
}

int middle_binomial_threshold(int k) {
    if (k < 1) throw std::invalid_argument("middle_binomial_threshold needs k >= 1");
    for (int m = 0; m <= 62; ++m) {
        const int h = m / 2;
        unsigned long long b = 1;
        for (int i = 1; i <= h; ++i) b = b * (m - h + i) / i;
        if (b >= static_cast<unsigned long long>(k)) return m;
    }
    throw std::out_of_range("middle_binomial_threshold: k too large");
}

GenstrongBound genstrong_bound(const BoundInputs& in) {
    if (in.k < 2) throw std::invalid_argument("genstrong_bound needs k >= 2");
    if (!(in.lambda_star_max >= 0)) throw std::invalid_argument("lambda*_max must be non-negative");
    if (in.e_star && in.lambda_star_max < *in.e_star)
        throw std::invalid_argument("lambda*_max must be at least e*(P)");
    GenstrongBound out;
    out.m_k = middle_binomial_threshold(in.k);
    out.bound = static_cast<long long>(std::floor((in.k - 1) * in.lambda_star_max)) + out.m_k;
    if (in.k == 3 && in.not_small_chain)
        out.sharper = static_cast<long long>(std::floor(2 * in.lambda_star_max)) + 2;
    out.provenance = "lambda*_max: " + in.lambda_provenance;
    if (in.e_star) out.provenance += "; e*: " + in.e_star_provenance;
    return out;
}

InequalityClaim inequality_claim_from_name(const std::string& name) {
    if (name == "tech-a") return InequalityClaim::TechA;
    if (name == "tech-b") return InequalityClaim::TechB;
    if (name == "tech-c") return InequalityClaim::TechC;
    if (name == "ineq1") return InequalityClaim::Ineq1;
    throw std::invalid_argument("unknown inequality claim: " + name);
}

std::string to_string(InequalityClaim claim) {
    switch (claim) {
    case InequalityClaim::TechA: return "tech-a";
    case InequalityClaim::TechB: return "tech-b";
    case InequalityClaim::TechC: return "tech-c";
    case InequalityClaim::Ineq1: return "ineq1";
    }
    return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt2 = std::sqrt(2.0);

double recip(double x) { return x == 0.0 ? kInf : 1.0 / x; }

// lhs - rhs of the claim at (alpha, beta).
double excess(InequalityClaim claim, double a, double b) {
    switch (claim) {
    case InequalityClaim::TechA:
        return std::min(1 + b + recip(1 - (a - b)), recip(a) - 1 + b) - (1 + kSqrt2);
    case InequalityClaim::TechB:
        return std::min(b + recip(1 - (a - b)) - 1, recip(a) + 1 + b) - (1 + kSqrt2);
    case InequalityClaim::TechC:
        return std::min(b + recip(1 - (a - b)), recip(a) + b) - (1 + kSqrt2);
    case InequalityClaim::Ineq1: {
        const double cubic = b * (-b * b + (1 + 2 * kSqrt2) * b - 2);
        const double frac = b + (2 + kSqrt2 - b) / (-b * b + (1 + kSqrt2) * (b + 1)) - kSqrt2;
        return std::max(cubic, frac);
    }
    }
    return 0;
}

struct Best {
    double value = -kInf;
    long long i = -1, j = -1;
    unsigned long long points = 0;

    void offer(double v, long long ii, long long jj) {
        ++points;
        if (v > value || (v == value && (ii < i || (ii == i && jj < j)))) {
            value = v;
            i = ii;
            j = jj;
        }
    }
};

}  // namespace

GridReport inequality_grid(InequalityClaim claim, double step, int threads) {
    if (!(step > 0) || step > 1) throw std::invalid_argument("grid step must be in (0, 1]");
    threads = std::max(1, threads);
    const long long steps = std::llround(1.0 / step);
    auto coord = [&](long long i) { return std::min(1.0, static_cast<double>(i) * step); };

    // Row ranges of alpha indices; ineq1 uses a single row over beta.
    long long row_lo = 0, row_hi = 0;
    if (claim == InequalityClaim::TechA) {
        row_hi = steps / 2;
    } else if (claim != InequalityClaim::Ineq1) {
        row_lo = (steps + 1) / 2;
        row_hi = steps;
    }
    auto in_domain_alpha = [&](double a) {
        if (claim == InequalityClaim::TechA) return a <= 0.5;
        if (claim == InequalityClaim::Ineq1) return true;
        return a >= 0.5;
    };

    auto work = [&](long long lo, long long hi) {
        Best best;
        for (long long i = lo; i <= hi; ++i) {
            if (claim == InequalityClaim::Ineq1) {
                for (long long j = 0; coord(j) <= 0.5; ++j) best.offer(excess(claim, 0.0, coord(j)), i, j);
                continue;
            }
            const double a = coord(i);
            if (!in_domain_alpha(a)) continue;
            for (long long j = 0; j <= i; ++j) best.offer(excess(claim, a, coord(j)), i, j);
        }
        return best;
    };

    const long long rows = row_hi - row_lo + 1;
    const int used = static_cast<int>(std::min<long long>(threads, rows));
    std::vector<Best> partial(used);
    std::vector<std::thread> pool;
    for (int t = 0; t < used; ++t) {
        const long long lo = row_lo + rows * t / used;
        const long long hi = row_lo + rows * (t + 1) / used - 1;
        pool.emplace_back([&, t, lo, hi] { partial[t] = work(lo, hi); });
    }
    for (auto& th : pool) th.join();

    Best best;
    for (const auto& p : partial) {
        best.points += p.points;
        if (p.value > best.value || (p.value == best.value && (p.i < best.i || (p.i == best.i && p.j < best.j)))) {
            best.value = p.value;
            best.i = p.i;
            best.j = p.j;
        }
    }
    GridReport r;
    r.claim = to_string(claim);
    r.max_violation = best.value;
    r.alpha = claim == InequalityClaim::Ineq1 ? 0.0 : coord(best.i);
    r.beta = coord(best.j);
    r.points = best.points;
    return r;
}

}  // namespace rainbow
