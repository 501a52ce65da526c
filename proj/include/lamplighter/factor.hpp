#pragma once

#include "lamplighter/poly.hpp"

namespace lamp {

// Dense univariate polynomial over F_p, c[i] = coefficient of t^i.
using UniPoly = std::vector<uint32_t>;

int64_t uni_deg(const UniPoly& f);
UniPoly uni_trim(UniPoly f);
UniPoly uni_mul(const UniPoly& a, const UniPoly& b, uint32_t p);
UniPoly uni_mod(UniPoly a, const UniPoly& b, uint32_t p);
UniPoly uni_divexact(const UniPoly& a, const UniPoly& b, uint32_t p);
UniPoly uni_gcd(UniPoly a, UniPoly b, uint32_t p);
UniPoly uni_powmod(const UniPoly& base, uint64_t e, const UniPoly& mod, uint32_t p);
UniPoly uni_derivative(const UniPoly& f, uint32_t p);

// Monic irreducible factors with multiplicities (Cantor-Zassenhaus behind a
// squarefree decomposition). Deterministically seeded.
std::vector<std::pair<UniPoly, uint32_t>> uni_factor(const UniPoly& f, uint32_t p,
                                                     uint64_t seed = 12345);

// Conversion against the sparse multivariate representation: f must be
// supported on `var` only with nonnegative exponents.
UniPoly uni_from_poly(const Poly& f, uint32_t var);
Poly uni_to_poly(const RingPtr& ring, uint32_t var, const UniPoly& f);

// Pairwise-coprime factorization of a nonzero polynomial (up to a unit
// monomial): g = X^s * prod F_i^{m_i} with gcd(F_i, F_j) = 1. Factors are
// split as far as derivative gcds, p-th roots, and single-variable
// factorization reach; remaining factors may be composite.
struct CoprimeFactor {
    Poly base;
    uint32_t multiplicity;
    bool known_irreducible;
};
std::vector<CoprimeFactor> coprime_factorization(const Poly& g);

}  // namespace lamp
