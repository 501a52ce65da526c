#pragma once

#include <optional>

#include "lamplighter/module.hpp"

namespace lamp {

// Monomial order on a polynomial-encoded ring (no negative exponents):
// block elimination order with graded lex inside each block. Block 0 is
// eliminated first (its monomials dominate). Module terms are compared
// position-over-term with smaller positions dominating.
struct MonOrder {
    std::vector<uint32_t> block_of_var;  // defaults to a single block

    static MonOrder single_block(uint32_t nvars) {
        MonOrder o;
        o.block_of_var.assign(nvars, 0);
        return o;
    }
    // Variables in `eliminated` go to block 0, the rest to block 1.
    static MonOrder elimination(uint32_t nvars, const std::vector<uint32_t>& eliminated) {
        MonOrder o;
        o.block_of_var.assign(nvars, 1);
        for (uint32_t v : eliminated) o.block_of_var.at(v) = 0;
        return o;
    }

    uint32_t nblocks() const {
        uint32_t m = 0;
        for (uint32_t b : block_of_var) m = std::max(m, b);
        return m + 1;
    }

    int cmp_mono(const IntVec& a, const IntVec& b) const;  // -1, 0, 1
    // (pos,mono) comparison, POT.
    int cmp_term(uint32_t pa, const IntVec& a, uint32_t pb, const IntVec& b) const;
};

struct LeadTerm {
    uint32_t pos = 0;
    IntVec exp;
    uint32_t coeff = 0;
};

std::optional<LeadTerm> leading_term(const ModElem& f, const MonOrder& ord);

// Reduced Groebner basis of a submodule of R^d over the polynomial encoding.
// Optionally tracks expressions of basis elements in the input generators.
class GroebnerBasis {
public:
    GroebnerBasis(RingPtr ring, uint32_t rank, std::vector<ModElem> gens, MonOrder order,
                  bool track_expr = false);

    const std::vector<ModElem>& gens() const { return basis_; }
    const MonOrder& order() const { return order_; }
    uint32_t rank() const { return rank_; }
    const RingPtr& ring() const { return ring_; }

    // Full normal form. If `quot` is given it receives the division
    // coefficients over the basis: f = sum quot[i]*basis[i] + nf.
    ModElem normal_form(const ModElem& f, std::vector<Poly>* quot = nullptr) const;

    bool contains(const ModElem& f) const { return normal_form(f).is_zero(); }

    // basis[i] = sum_j expr(i)[j] * input_gens[j] (only when tracking).
    const std::vector<Poly>& expr(size_t i) const { return expr_.at(i); }
    bool tracked() const { return !expr_.empty() || basis_.empty(); }

    // Syzygies of the input generators (Schreyer construction); requires
    // tracking. Vectors live in R^{#input_gens}.
    const std::vector<ModElem>& input_syzygies() const { return syzygies_; }

    // Standard monomials (pos, exponent) if the quotient R^d/<gens> is a
    // finite F_p-space; nullopt otherwise.
    std::optional<std::vector<std::pair<uint32_t, IntVec>>> standard_monomials(
        size_t limit = 1 << 20) const;

private:
    RingPtr ring_;
    uint32_t rank_;
    MonOrder order_;
    std::vector<ModElem> basis_;
    std::vector<LeadTerm> leads_;
    std::vector<std::vector<Poly>> expr_;
    std::vector<ModElem> syzygies_;
    std::vector<ModElem> inputs_;

    void run(std::vector<ModElem> gens, bool track);
    ModElem reduce_full(ModElem f, std::vector<Poly>* quot, std::vector<Poly>* expr_acc) const;
};

}  // namespace lamp
