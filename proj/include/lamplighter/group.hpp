#pragma once

#include "lamplighter/modcalc.hpp"

namespace lamp {

// Ambient group Y x| Z^n for a finitely presented module Y. Holds the shared
// normal-form machinery so element equality is syntactic.
struct GroupContext {
    ModulePresentation pres;
    std::shared_ptr<const NFContext> nf;

    explicit GroupContext(ModulePresentation p)
        : pres(std::move(p)), nf(std::make_shared<const NFContext>(pres)) {}

    const RingPtr& ring() const { return pres.ring; }
    uint32_t nvars() const { return pres.ring->nvars; }
    uint32_t rank() const { return pres.rank; }
};

using GroupCtxPtr = std::shared_ptr<const GroupContext>;

inline GroupCtxPtr make_group(ModulePresentation pres) {
    return std::make_shared<const GroupContext>(std::move(pres));
}

// Element (y, a); y stored in Groebner normal form.
struct GroupElement {
    GroupCtxPtr ctx;
    ModElem y;
    IntVec a;

    static GroupElement make(const GroupCtxPtr& ctx, const ModElem& y, IntVec a) {
        if (a.size() != ctx->nvars()) throw std::invalid_argument("group element arity");
        return GroupElement{ctx, ctx->nf->nf(y), std::move(a)};
    }
    static GroupElement identity(const GroupCtxPtr& ctx) {
        return GroupElement{ctx, ModElem(ctx->ring(), ctx->rank()), iv_zero(ctx->nvars())};
    }

    bool is_identity() const { return y.is_zero() && iv_is_zero(a); }
    bool operator==(const GroupElement& o) const { return y == o.y && a == o.a; }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
    std::string str() const;
};

GroupElement gmul(const GroupElement& g, const GroupElement& h);
GroupElement ginv(const GroupElement& g);
// Closed-form power via the geometric-sum polynomial.
GroupElement gpow(const GroupElement& g, int64_t z);

// Word over generators: ordered product of gens[idx]^exp.
using Word = std::vector<std::pair<size_t, int64_t>>;
GroupElement eval_word(const std::vector<GroupElement>& gens, const Word& w);
Word word_inverse(const Word& w);
Word word_concat(const Word& a, const Word& b);
Word word_power(const Word& w, int64_t k);

// Structure of the subgroup H generated by `gens`: the lattice pi(H) with
// lifts realizing its basis, and Y `intersect` H as a finitely presented
// module over F_p[X^pi(H)].
struct SubgroupData {
    std::vector<GroupElement> gens;
    Lattice pi_lattice;
    std::vector<GroupElement> lifts;
    std::vector<Word> lift_words;
    std::vector<ModElem> kernel_gens;     // y-parts of kernel generators
    std::vector<Word> kernel_words;
    std::shared_ptr<SubringModule> kernel_module;  // over F_p[X^pi(H)]

    // word in the input generators realizing z1*b1 + ... + zd*bd on pi
    Word lift_word_for(const IntVec& lattice_coords) const;
};

SubgroupData subgroup_data(const std::vector<GroupElement>& gens);

// Data of the conjugate subgroup q H q^{-1}.
SubgroupData conjugated_subgroup(const SubgroupData& h, const GroupElement& q);

}  // namespace lamp
