#pragma once

#include <random>
#include <vector>

#include "rainbow/lattice.hpp"

namespace testutil {

inline rainbow::Family random_family(std::mt19937_64& rng, int n, double density) {
    std::bernoulli_distribution take(density);
    std::vector<rainbow::Word> ws;
    for (rainbow::Word w = 0; w <= rainbow::full_mask(n); ++w)
        if (take(rng)) ws.push_back(w);
    return rainbow::Family(n, ws);
}

// Maximal chain of B_n along a random element order; chain[i] has size i.
inline std::vector<rainbow::Word> random_chain(std::mt19937_64& rng, int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<rainbow::Word> chain(n + 1, 0);
    for (int i = 0; i < n; ++i) chain[i + 1] = chain[i] | (rainbow::Word{1} << perm[i]);
    return chain;
}

}  // namespace testutil
