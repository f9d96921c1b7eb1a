#pragma once

// Exact Lubell-mass calculus over B_n.

#include <string>

#include <gmpxx.h>

#include "rainbow/lattice.hpp"

namespace rainbow {

/// Arbitrary-precision rational, always canonical (lowest terms, positive denominator).
using ExactRatio = mpq_class;

/// num / den in lowest terms. Raw mpq construction skips this and GMP
/// arithmetic is only defined on canonical operands.
ExactRatio ratio(const mpz_class& num, const mpz_class& den);

/// "p/q" (or "p" when q == 1).
std::string to_string(const ExactRatio& r);
ExactRatio parse_ratio(const std::string& text);

/// binom(n, k) from an immutable Pascal table, 0 <= n <= 64.
const mpz_class& binomial(int n, int k);

/// Sum over members of 1 / binom(n, |F|).
ExactRatio lubell_mass(const Family& fam);

/// Mass of any subcube B_{F,H} with |F| = a and |H| = n - b, in closed form.
ExactRatio lubell_subcube(int n, int a, int b);

/// lambda_n(F) minus the max-partition decomposition of it; identically zero.
/// Uses direct chain enumeration, so the ground size is capped at 8.
ExactRatio maxpart_identity_residual(const Family& fam);

constexpr int kIdentityGroundLimit = 8;

}  // namespace rainbow
