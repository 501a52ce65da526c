#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>

#include "lamplighter/intvec.hpp"
#include "lamplighter/ring.hpp"

namespace lamp {

// Sparse Laurent polynomial over F_p. Terms are kept sorted by exponent
// vector (lex) with coefficients in {1,...,p-1}; no zero terms are stored,
// so equality and hashing are syntactic.
class Poly {
public:
    using Term = std::pair<IntVec, uint32_t>;

    Poly() = default;
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

    static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }
    static Poly constant(RingPtr ring, uint32_t c);
    static Poly monomial(RingPtr ring, const IntVec& e, uint32_t c = 1);
    static Poly variable(RingPtr ring, uint32_t i);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t nterms() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && iv_is_zero(terms_[0].first));
    }
    // Nonzero monomial c*X^e?
    bool is_monomial() const { return terms_.size() == 1; }

    uint32_t coeff(const IntVec& e) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly scaled(uint32_t c) const;               // c * this
    Poly shifted(const IntVec& e) const;         // X^e * this
    Poly substitute(const std::vector<Poly>& images) const;  // X_i -> images[i]; requires nonneg exps or invertible images handled by caller

    // Per-coordinate min/max exponent over the support (0 for the zero poly).
    IntVec min_exponents() const;
    IntVec max_exponents() const;

    std::string str() const;

    size_t hash() const {
        size_t h = 0xcbf29ce484222325ull;
        IntVecHash ivh;
        for (const auto& [e, c] : terms_) {
            h = h * 1099511628211ull ^ ivh(e);
            h = h * 1099511628211ull ^ c;
        }
        return h;
    }

    // Construction helper: bulk insert then normalize.
    static Poly from_terms(RingPtr ring, std::vector<Term> terms);

private:
    RingPtr ring_;
    std::vector<Term> terms_;
};

// f^(p^k): termwise exponent scaling by p^k, coefficients fixed by Frobenius.
Poly frobenius_pow(const Poly& f, uint32_t k);

// (1 - X^(z a)) / (1 - X^a) as a polynomial: sum of z monomials for z > 0,
// zero for z = 0, minus the mirrored sum for z < 0. Rejects a = 0.
Poly geom_sum(RingPtr ring, const IntVec& a, int64_t z);

// Textual syntax: terms `c*X1^e1*...*Xn^en` joined by `+`; `1` is the empty
// monomial. Whitespace-insensitive. Throws std::invalid_argument on errors.
Poly parse_poly(const RingPtr& ring, const std::string& text);

}  // namespace lamp
