#include "lamplighter/modcalc.hpp"

#include <stdexcept>

namespace lamp {

std::pair<std::vector<ModElem>, IntVec> laurent_shift(const std::vector<ModElem>& gens) {
    if (gens.empty()) return {gens, IntVec()};
    const RingPtr& ring = gens[0].ring();
    IntVec shift = iv_zero(ring->nvars);
    for (const auto& g : gens) {
        for (const auto& c : g.coords) {
            if (c.is_zero()) continue;
            IntVec m = c.min_exponents();
            for (size_t i = 0; i < shift.size(); ++i) shift[i] = std::min(shift[i], m[i]);
        }
    }
    for (auto& s : shift) s = -s;
    std::vector<ModElem> out;
    out.reserve(gens.size());
    for (const auto& g : gens) {
        ModElem e;
        e.coords.reserve(g.coords.size());
        for (const auto& c : g.coords) e.coords.push_back(c.shifted(shift));
        out.push_back(std::move(e));
    }
    return {out, shift};
}

EncodedRing make_encoded(const RingPtr& ring) {
    EncodedRing er;
    er.laurent = ring;
    std::vector<std::string> names = ring->names;
    std::vector<bool> inv;
    inv.assign(ring->nvars, false);
    er.inv_index.assign(ring->nvars, -1);
    for (uint32_t i = 0; i < ring->nvars; ++i) {
        if (ring->invertible[i]) {
            er.inv_index[i] = static_cast<int>(names.size());
            names.push_back(ring->names[i] + "'");
        }
    }
    inv.resize(names.size(), false);
    er.poly = make_ring(ring->p, std::move(names), std::move(inv));
    return er;
}

Poly EncodedRing::encode(const Poly& f) const {
    std::vector<Poly::Term> ts;
    ts.reserve(f.nterms());
    for (const auto& [e, c] : f.terms()) {
        IntVec be = iv_zero(poly->nvars);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] >= 0)
                be[i] = e[i];
            else {
                if (inv_index[i] < 0)
                    throw std::invalid_argument("negative exponent on non-invertible variable");
                be[inv_index[i]] = -e[i];
            }
        }
        ts.emplace_back(std::move(be), c);
    }
    return Poly::from_terms(poly, std::move(ts));
}

Poly EncodedRing::decode(const Poly& f) const {
    std::vector<Poly::Term> ts;
    ts.reserve(f.nterms());
    for (const auto& [e, c] : f.terms()) {
        IntVec le = iv_zero(laurent->nvars);
        for (uint32_t i = 0; i < laurent->nvars; ++i) {
            le[i] = e[i];
            if (inv_index[i] >= 0) le[i] -= e[inv_index[i]];
        }
        ts.emplace_back(std::move(le), c);
    }
    return Poly::from_terms(laurent, std::move(ts));
}

ModElem EncodedRing::encode(const ModElem& x) const {
    ModElem r;
    r.coords.reserve(x.coords.size());
    for (const auto& c : x.coords) r.coords.push_back(encode(c));
    return r;
}

ModElem EncodedRing::decode(const ModElem& x) const {
    ModElem r;
    r.coords.reserve(x.coords.size());
    for (const auto& c : x.coords) r.coords.push_back(decode(c));
    return r;
}

std::vector<ModElem> EncodedRing::inverse_relations(uint32_t rank) const {
    std::vector<ModElem> rels;
    for (uint32_t i = 0; i < laurent->nvars; ++i) {
        if (inv_index[i] < 0) continue;
        IntVec e = iv_zero(poly->nvars);
        e[i] = 1;
        e[inv_index[i]] = 1;
        Poly rel = Poly::monomial(poly, e, 1) - Poly::constant(poly, 1);
        for (uint32_t k = 0; k < rank; ++k) rels.push_back(ModElem::unit(poly, rank, k, rel));
    }
    return rels;
}

std::vector<ModElem> reduced_groebner(const std::vector<ModElem>& gens) {
    if (gens.empty()) return {};
    const RingPtr& ring = gens[0].ring();
    uint32_t rank = static_cast<uint32_t>(gens[0].rank());
    GroebnerBasis gb(ring, rank, gens, MonOrder::single_block(ring->nvars), false);
    return gb.gens();
}

NFContext::NFContext(ModulePresentation pres) : pres_(std::move(pres)), enc_(make_encoded(pres_.ring)) {
    std::vector<ModElem> gens;
    for (const auto& r : pres_.relations) gens.push_back(enc_.encode(r));
    for (auto& r : enc_.inverse_relations(pres_.rank)) gens.push_back(std::move(r));
    gb_ = std::make_shared<const GroebnerBasis>(enc_.poly, pres_.rank, std::move(gens),
                                                MonOrder::single_block(enc_.poly->nvars), false);
}

ModElem NFContext::nf(const ModElem& x) const {
    if (x.coords.size() != pres_.rank) throw std::invalid_argument("rank mismatch in nf");
    return enc_.decode(gb_->normal_form(enc_.encode(x)));
}

Poly NFContext::nf(const Poly& f) const {
    if (pres_.rank != 1) throw std::invalid_argument("nf(Poly) needs rank 1");
    return nf(ModElem::single(f)).coords[0];
}

MembershipResult submodule_membership(const ModElem& y, const std::vector<ModElem>& gens) {
    MembershipResult res;
    for (const auto& g : gens)
        if (g.rank() != y.rank()) throw std::invalid_argument("rank mismatch in membership");
    if (y.is_zero()) {
        res.member = true;
        res.certificate.assign(gens.size(), Poly(y.coords.empty() ? RingPtr() : y.ring()));
        return res;
    }
    const RingPtr& ring = y.ring();
    EncodedRing enc = make_encoded(ring);
    uint32_t rank = static_cast<uint32_t>(y.rank());
    std::vector<ModElem> egens;
    for (const auto& g : gens) egens.push_back(enc.encode(g));
    size_t ngens = egens.size();
    for (auto& r : enc.inverse_relations(rank)) egens.push_back(std::move(r));
    GroebnerBasis gb(enc.poly, rank, egens, MonOrder::single_block(enc.poly->nvars), true);
    std::vector<Poly> quot;
    ModElem nf = gb.normal_form(enc.encode(y), &quot);
    if (!nf.is_zero()) return res;
    res.member = true;
    res.certificate.assign(gens.size(), Poly(ring));
    // y = sum quot[k]*basis[k]; expand basis expressions over the inputs and
    // keep the first ngens columns (inverse relations decode to zero).
    for (size_t k = 0; k < gb.gens().size(); ++k) {
        if (quot[k].is_zero()) continue;
        for (size_t j = 0; j < ngens; ++j) {
            const Poly& e = gb.expr(k)[j];
            if (e.is_zero()) continue;
            res.certificate[j] = res.certificate[j] + enc.decode(quot[k] * e);
        }
    }
    return res;
}

ModulePresentation syzygy_presentation(const std::vector<ModElem>& gens) {
    if (gens.empty()) return ModulePresentation();
    const RingPtr& ring = gens[0].ring();
    uint32_t rank = static_cast<uint32_t>(gens[0].rank());
    EncodedRing enc = make_encoded(ring);
    std::vector<ModElem> egens;
    for (const auto& g : gens) egens.push_back(enc.encode(g));
    size_t ngens = egens.size();
    for (auto& r : enc.inverse_relations(rank)) egens.push_back(std::move(r));
    GroebnerBasis gb(enc.poly, rank, egens, MonOrder::single_block(enc.poly->nvars), true);
    ModulePresentation pres(ring, static_cast<uint32_t>(ngens));
    for (const auto& syz : gb.input_syzygies()) {
        ModElem s(ring, ngens);
        bool nonzero = false;
        for (size_t j = 0; j < ngens; ++j) {
            s.coords[j] = enc.decode(syz.coords[j]);
            nonzero = nonzero || !s.coords[j].is_zero();
        }
        if (nonzero) pres.relations.push_back(std::move(s));
    }
    return pres;
}

std::vector<ModElem> intersect_modules(const std::vector<ModElem>& a,
                                       const std::vector<ModElem>& b) {
    if (a.empty() || b.empty()) return {};
    const RingPtr& ring = a[0].ring();
    uint32_t rank = static_cast<uint32_t>(a[0].rank());
    for (const auto& x : b)
        if (x.rank() != rank) throw std::invalid_argument("rank mismatch in intersect");
    EncodedRing enc = make_encoded(ring);
    std::vector<ModElem> egens;
    for (const auto& g : a) egens.push_back(enc.encode(g));
    for (const auto& g : b) egens.push_back(enc.encode(g));
    size_t na = a.size(), ntot = egens.size();
    for (auto& r : enc.inverse_relations(rank)) egens.push_back(std::move(r));
    GroebnerBasis gb(enc.poly, rank, egens, MonOrder::single_block(enc.poly->nvars), true);
    std::vector<ModElem> out;
    for (const auto& syz : gb.input_syzygies()) {
        // syzygy over [a|b|invrels]: sum_i r_i a_i = -(sum_j s_j b_j + inv part)
        ModElem u(ring, rank);
        bool any = false;
        for (size_t i = 0; i < na; ++i) {
            if (syz.coords[i].is_zero()) continue;
            any = true;
            u = u + a[i].scaled_by(enc.decode(syz.coords[i]));
        }
        (void)ntot;
        if (any && !u.is_zero()) out.push_back(std::move(u));
    }
    return out;
}

std::vector<ModElem> sum_modules(const std::vector<ModElem>& a, const std::vector<ModElem>& b) {
    std::vector<ModElem> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

ModulePresentation quotient_presentation(const ModulePresentation& ambient,
                                         const std::vector<ModElem>& sub) {
    for (const auto& s : sub)
        if (s.rank() != ambient.rank) throw std::invalid_argument("quotient: rank mismatch");
    ModulePresentation pres = ambient;
    for (const auto& s : sub) pres.relations.push_back(s);
    return pres;
}

// ---------------------------------------------------------------------------
// SubringModule

SubringModule::SubringModule(std::vector<IntVec> lambda_basis, std::vector<ModElem> elements,
                             ModulePresentation ambient)
    : lambda_(std::move(lambda_basis)), elements_(std::move(elements)), ambient_(std::move(ambient)) {
    const RingPtr& ring = ambient_.ring;
    uint32_t n = ring->nvars;
    // independence of the lambda basis
    {
        Lattice l = hermite_lattice(n, lambda_);
        if (l.dim() != lambda_.size()) throw std::invalid_argument("dependent lattice basis");
    }
    // big ring: x vars, xinv for invertible, y_j, yinv_j where X^lambda_j is a unit
    std::vector<std::string> names = ring->names;
    xinv_of_.assign(n, -1);
    for (uint32_t i = 0; i < n; ++i)
        if (ring->invertible[i]) {
            xinv_of_[i] = static_cast<int>(names.size());
            names.push_back(ring->names[i] + "'");
        }
    yvar_.assign(lambda_.size(), -1);
    yinv_.assign(lambda_.size(), -1);
    std::vector<bool> y_invertible(lambda_.size(), true);
    for (size_t j = 0; j < lambda_.size(); ++j) {
        for (uint32_t i = 0; i < n; ++i) {
            if (lambda_[j][i] != 0 && !ring->invertible[i]) y_invertible[j] = false;
            if (lambda_[j][i] < 0 && !ring->invertible[i])
                throw std::invalid_argument("lattice vector needs an invertible variable");
        }
    }
    for (size_t j = 0; j < lambda_.size(); ++j) {
        yvar_[j] = static_cast<int>(names.size());
        names.push_back("Y" + std::to_string(j + 1));
    }
    for (size_t j = 0; j < lambda_.size(); ++j) {
        if (y_invertible[j]) {
            yinv_[j] = static_cast<int>(names.size());
            names.push_back("Y" + std::to_string(j + 1) + "'");
        }
    }
    size_t nbig = names.size();
    big_ = make_ring(ring->p, std::move(names), std::vector<bool>(nbig, false));

    // subring for the presentation output
    {
        std::vector<std::string> ynames;
        std::vector<bool> yinv;
        for (size_t j = 0; j < lambda_.size(); ++j) {
            ynames.push_back("Y" + std::to_string(j + 1));
            yinv.push_back(y_invertible[j]);
        }
        sub_ring_ = make_ring(ring->p, std::move(ynames), std::move(yinv));
    }

    uint32_t d = ambient_.rank;
    uint32_t t = static_cast<uint32_t>(elements_.size());
    dpart_ = d;
    uint32_t rank = d + t;

    auto encode_x = [&](const Poly& f) {
        std::vector<Poly::Term> ts;
        for (const auto& [e, c] : f.terms()) {
            IntVec be = iv_zero(big_->nvars);
            for (uint32_t i = 0; i < n; ++i) {
                if (e[i] >= 0)
                    be[i] = e[i];
                else
                    be[xinv_of_[i]] = -e[i];
            }
            ts.emplace_back(std::move(be), c);
        }
        return Poly::from_terms(big_, std::move(ts));
    };

    std::vector<ModElem> gens;
    // elements: (enc(m_i) | -e_i)
    for (uint32_t i = 0; i < t; ++i) {
        ModElem g(big_, rank);
        for (uint32_t k = 0; k < d; ++k) g.coords[k] = encode_x(elements_[i].coords[k]);
        g.coords[d + i] = -Poly::constant(big_, 1);
        gens.push_back(std::move(g));
    }
    // ambient relations on the d-part
    for (const auto& rel : ambient_.relations) {
        ModElem g(big_, rank);
        for (uint32_t k = 0; k < d; ++k) g.coords[k] = encode_x(rel.coords[k]);
        gens.push_back(std::move(g));
    }
    // ring congruences on every position: x*x'-1, y*y'-1, y_j - X^lambda_j
    std::vector<Poly> congruences;
    for (uint32_t i = 0; i < n; ++i) {
        if (xinv_of_[i] < 0) continue;
        IntVec e = iv_zero(big_->nvars);
        e[i] = 1;
        e[xinv_of_[i]] = 1;
        congruences.push_back(Poly::monomial(big_, e, 1) - Poly::constant(big_, 1));
    }
    for (size_t j = 0; j < lambda_.size(); ++j) {
        if (yinv_[j] < 0) continue;
        IntVec e = iv_zero(big_->nvars);
        e[yvar_[j]] = 1;
        e[yinv_[j]] = 1;
        congruences.push_back(Poly::monomial(big_, e, 1) - Poly::constant(big_, 1));
    }
    for (size_t j = 0; j < lambda_.size(); ++j) {
        IntVec ye = iv_zero(big_->nvars);
        ye[yvar_[j]] = 1;
        Poly binding = Poly::monomial(big_, ye, 1) - encode_x(Poly::monomial(ring, lambda_[j], 1));
        congruences.push_back(std::move(binding));
    }
    for (const auto& c : congruences)
        for (uint32_t k = 0; k < rank; ++k) gens.push_back(ModElem::unit(big_, rank, k, c));

    // eliminate the x-block
    std::vector<uint32_t> elim;
    for (uint32_t i = 0; i < n; ++i) elim.push_back(i);
    for (uint32_t i = 0; i < n; ++i)
        if (xinv_of_[i] >= 0) elim.push_back(static_cast<uint32_t>(xinv_of_[i]));
    MonOrder order = MonOrder::elimination(static_cast<uint32_t>(big_->nvars), elim);
    gb_ = std::make_shared<const GroebnerBasis>(big_, rank, std::move(gens), order, false);

    // collect relations: basis elements with zero d-part and x-free t-part
    pres_ = ModulePresentation(sub_ring_, t);
    for (const auto& g : gb_->gens()) {
        bool dzero = true;
        for (uint32_t k = 0; k < d; ++k)
            if (!g.coords[k].is_zero()) {
                dzero = false;
                break;
            }
        if (!dzero) continue;
        ModElem rel(sub_ring_, t);
        bool ok = true;
        for (uint32_t i = 0; i < t && ok; ++i) {
            auto s = to_subring(g.coords[d + i]);
            if (!s) {
                ok = false;
                break;
            }
            rel.coords[i] = std::move(*s);
        }
        if (ok && !rel.is_zero()) pres_.relations.push_back(std::move(rel));
    }
    // prune relations implied by the others
    for (size_t i = pres_.relations.size(); i-- > 0;) {
        std::vector<ModElem> rest;
        for (size_t j = 0; j < pres_.relations.size(); ++j)
            if (j != i) rest.push_back(pres_.relations[j]);
        if (!rest.empty() && submodule_membership(pres_.relations[i], rest).member)
            pres_.relations.erase(pres_.relations.begin() + i);
    }
}

std::optional<Poly> SubringModule::to_subring(const Poly& big_poly) const {
    uint32_t n = ambient_.ring->nvars;
    std::vector<Poly::Term> ts;
    for (const auto& [e, c] : big_poly.terms()) {
        for (uint32_t i = 0; i < n; ++i) {
            if (e[i] != 0) return std::nullopt;
            if (xinv_of_[i] >= 0 && e[xinv_of_[i]] != 0) return std::nullopt;
        }
        IntVec ye = iv_zero(sub_ring_->nvars);
        for (size_t j = 0; j < lambda_.size(); ++j) {
            ye[j] = e[yvar_[j]];
            if (yinv_[j] >= 0) ye[j] -= e[yinv_[j]];
        }
        ts.emplace_back(std::move(ye), c);
    }
    return Poly::from_terms(sub_ring_, std::move(ts));
}

ModElem SubringModule::embed(const ModElem& u) const {
    uint32_t n = ambient_.ring->nvars;
    uint32_t rank = dpart_ + static_cast<uint32_t>(elements_.size());
    ModElem g(big_, rank);
    for (uint32_t k = 0; k < dpart_; ++k) {
        std::vector<Poly::Term> ts;
        for (const auto& [e, c] : u.coords[k].terms()) {
            IntVec be = iv_zero(big_->nvars);
            for (uint32_t i = 0; i < n; ++i) {
                if (e[i] >= 0)
                    be[i] = e[i];
                else
                    be[xinv_of_[i]] = -e[i];
            }
            ts.emplace_back(std::move(be), c);
        }
        g.coords[k] = Poly::from_terms(big_, std::move(ts));
    }
    return g;
}

std::optional<std::vector<Poly>> SubringModule::express(const ModElem& u) const {
    ModElem nf = gb_->normal_form(embed(u));
    for (uint32_t k = 0; k < dpart_; ++k)
        if (!nf.coords[k].is_zero()) return std::nullopt;
    std::vector<Poly> out;
    out.reserve(elements_.size());
    for (size_t i = 0; i < elements_.size(); ++i) {
        auto s = to_subring(nf.coords[dpart_ + i]);
        if (!s) return std::nullopt;
        out.push_back(-*s);
    }
    return out;
}

Poly SubringModule::eval_ambient(const Poly& s) const {
    const RingPtr& ring = ambient_.ring;
    std::vector<Poly::Term> ts;
    for (const auto& [e, c] : s.terms()) {
        IntVec xe = iv_zero(ring->nvars);
        for (size_t j = 0; j < lambda_.size(); ++j)
            xe = iv_add(xe, iv_scale(lambda_[j], e[j]));
        ts.emplace_back(std::move(xe), c);
    }
    return Poly::from_terms(ring, std::move(ts));
}

FpDimension fp_dimension(const ModulePresentation& pres, size_t limit) {
    EncodedRing enc = make_encoded(pres.ring);
    std::vector<ModElem> gens;
    for (const auto& r : pres.relations) gens.push_back(enc.encode(r));
    for (auto& r : enc.inverse_relations(pres.rank)) gens.push_back(std::move(r));
    GroebnerBasis gb(enc.poly, pres.rank, std::move(gens), MonOrder::single_block(enc.poly->nvars),
                     false);
    FpDimension out;
    auto sm = gb.standard_monomials(limit);
    if (!sm) return out;
    out.finite = true;
    out.dim = sm->size();
    for (const auto& [pos, e] : *sm) {
        ModElem b(pres.ring, pres.rank);
        b.coords[pos] = enc.decode(Poly::monomial(enc.poly, e, 1));
        out.basis.push_back(std::move(b));
    }
    return out;
}

}  // namespace lamp
