#pragma once

#include <memory>

#include "lamplighter/groebner.hpp"

namespace lamp {

// Multiply all generators by one monomial X^s so exponents become >= 0.
// Returns the shifted generators and s.
std::pair<std::vector<ModElem>, IntVec> laurent_shift(const std::vector<ModElem>& gens);

// Polynomial encoding of a mixed Laurent ring: one fresh inverse variable per
// invertible variable, with ring congruences x_i * x_i' = 1.
struct EncodedRing {
    RingPtr laurent;
    RingPtr poly;
    std::vector<int> inv_index;  // per original var, index of its inverse or -1

    Poly encode(const Poly& f) const;
    Poly decode(const Poly& f) const;
    ModElem encode(const ModElem& x) const;
    ModElem decode(const ModElem& x) const;
    std::vector<ModElem> inverse_relations(uint32_t rank) const;
};

EncodedRing make_encoded(const RingPtr& ring);

// Reduced Groebner basis of a submodule of R^d, polynomial encoding (inputs
// must have nonnegative exponents; Laurent callers shift first).
std::vector<ModElem> reduced_groebner(const std::vector<ModElem>& gens);

// Canonical normal forms in a finitely presented module R^d/N. Backed by a
// Groebner basis over the polynomial encoding; representatives are canonical,
// so equality in the quotient is syntactic equality of normal forms.
class NFContext {
public:
    explicit NFContext(ModulePresentation pres);

    const ModulePresentation& pres() const { return pres_; }
    const RingPtr& ring() const { return pres_.ring; }
    uint32_t rank() const { return pres_.rank; }

    ModElem nf(const ModElem& x) const;
    Poly nf(const Poly& f) const;  // rank-1 convenience
    bool is_zero(const ModElem& x) const { return nf(x).is_zero(); }

private:
    ModulePresentation pres_;
    EncodedRing enc_;
    std::shared_ptr<const GroebnerBasis> gb_;
};

struct MembershipResult {
    bool member = false;
    std::vector<Poly> certificate;  // over the input generators, Laurent coefficients
};

// y in sum_i R.gens[i]? Certificate satisfies sum cert[i]*gens[i] = y.
MembershipResult submodule_membership(const ModElem& y, const std::vector<ModElem>& gens);

// Presentation of the submodule generated by gens: R^k / syzygies.
ModulePresentation syzygy_presentation(const std::vector<ModElem>& gens);

std::vector<ModElem> intersect_modules(const std::vector<ModElem>& a, const std::vector<ModElem>& b);
std::vector<ModElem> sum_modules(const std::vector<ModElem>& a, const std::vector<ModElem>& b);

// ambient/(sub): relations of the ambient plus the sub generators.
ModulePresentation quotient_presentation(const ModulePresentation& ambient,
                                         const std::vector<ModElem>& sub);

// The F_p[X^Lambda]-module generated by `elements` inside ambient, presented
// over a fresh ring with variables Y_j <-> X^lambda_j. Built by adjoining the
// Y-variables with binding relations and eliminating the ambient variables.
class SubringModule {
public:
    SubringModule(std::vector<IntVec> lambda_basis, std::vector<ModElem> elements,
                  ModulePresentation ambient);

    const RingPtr& subring() const { return sub_ring_; }
    const std::vector<IntVec>& lambda() const { return lambda_; }
    const std::vector<ModElem>& generators() const { return elements_; }
    const ModulePresentation& presentation() const { return pres_; }

    // Coefficients s with u = sum s_i * elements[i] over F_p[X^Lambda], if u
    // lies in the module (modulo the ambient relations).
    std::optional<std::vector<Poly>> express(const ModElem& u) const;

    // Evaluate a subring polynomial back into the ambient ring (Y -> X^lambda).
    Poly eval_ambient(const Poly& s) const;

private:
    std::vector<IntVec> lambda_;
    std::vector<ModElem> elements_;
    ModulePresentation ambient_;
    RingPtr sub_ring_;
    ModulePresentation pres_;

    RingPtr big_;  // x-encoding + y-variables
    std::vector<int> xinv_of_;
    std::vector<int> yvar_;   // index of y_j in big ring
    std::vector<int> yinv_;   // index of yinv_j or -1
    std::shared_ptr<const GroebnerBasis> gb_;
    uint32_t dpart_ = 0;

    ModElem embed(const ModElem& u) const;
    std::optional<Poly> to_subring(const Poly& big_poly) const;
};

struct FpDimension {
    bool finite = false;
    uint64_t dim = 0;
    std::vector<ModElem> basis;  // normal-form monomial basis (Laurent form)
};

// F_p-dimension of R^d/N with invertibility of variables enforced.
FpDimension fp_dimension(const ModulePresentation& pres, size_t limit = 1 << 16);

}  // namespace lamp
