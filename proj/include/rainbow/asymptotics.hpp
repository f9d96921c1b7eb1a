#pragma once

// Binary entropy, the c_k recurrence, the strong-antichain bound calculator
// and grid checks of the real inequalities behind the G(n,3) bound.

#include <optional>
#include <string>
#include <vector>

namespace rainbow {

/// h(c) = -c log2 c - (1 - c) log2 (1 - c) for 0 < c < 1.
double binary_entropy(double c);

struct EntropyConstants {
    std::vector<double> c;          // c[0] is c_1
    std::vector<double> residuals;  // |c_{k+1} h((c_{k+1} - c_k) / c_{k+1}) - 1| for each step
    double tol = 0;
};

constexpr int kBisectionSteps = 200;

/// c_1 = 1 and c_{k+1} h((c_{k+1} - c_k) / c_{k+1}) = 1, solved by bisection.
EntropyConstants c_sequence(int k_max, double tol);

struct BoundInputs {
    int k = 2;
    double lambda_star_max = 0;
    std::string lambda_provenance = "user";
    std::optional<int> e_star;
    std::string e_star_provenance = "user";
    /// Set when P is neither C_1 nor C_2; enables the sharper k = 3 bound.
    bool not_small_chain = false;
};

struct GenstrongBound {
    int m_k = 0;
    long long bound = 0;
    std::optional<long long> sharper;  // k = 3 only
    std::string provenance;
};

/// min{m : binom(m, floor(m/2)) >= k}.
int middle_binomial_threshold(int k);

GenstrongBound genstrong_bound(const BoundInputs& in);

enum class InequalityClaim { TechA, TechB, TechC, Ineq1 };

InequalityClaim inequality_claim_from_name(const std::string& name);
std::string to_string(InequalityClaim claim);

struct GridReport {
    std::string claim;
    double max_violation = 0;  // signed: largest lhs - rhs seen on the grid
    double alpha = 0, beta = 0;
    unsigned long long points = 0;
};

/// Evaluates the claim on a uniform grid over its (alpha, beta) domain.
/// Tiles are split across `threads` workers; the reduction is deterministic.
GridReport inequality_grid(InequalityClaim claim, double step, int threads = 1);

}  // namespace rainbow
