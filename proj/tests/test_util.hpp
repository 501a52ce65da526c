#pragma once

#include <random>

#include "lamplighter/poly.hpp"

namespace lamp::testutil {

inline Poly random_poly(std::mt19937& rng, const RingPtr& ring, int max_terms, int64_t max_exp,
                        bool allow_negative = true) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int64_t> expd(allow_negative ? -max_exp : 0, max_exp);
    std::uniform_int_distribution<uint32_t> coefd(1, ring->p - 1);
    int k = nterms(rng);
    std::vector<Poly::Term> ts;
    for (int i = 0; i < k; ++i) {
        IntVec e(ring->nvars);
        for (auto& x : e) {
            x = expd(rng);
        }
        for (uint32_t v = 0; v < ring->nvars; ++v)
            if (!ring->invertible[v] && e[v] < 0) e[v] = -e[v];
        ts.emplace_back(std::move(e), coefd(rng));
    }
    return Poly::from_terms(ring, std::move(ts));
}

inline IntVec random_vec(std::mt19937& rng, uint32_t n, int64_t bound) {
    std::uniform_int_distribution<int64_t> d(-bound, bound);
    IntVec v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

}  // namespace lamp::testutil
