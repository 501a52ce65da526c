#include "lamplighter/group.hpp"

#include <sstream>

namespace lamp {

std::string GroupElement::str() const {
    std::ostringstream os;
    os << "( ";
    for (size_t i = 0; i < y.coords.size(); ++i) {
        if (i) os << " , ";
        os << y.coords[i].str();
    }
    os << " ; ";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) os << " ";
        os << a[i];
    }
    os << " )";
    return os.str();
}

GroupElement gmul(const GroupElement& g, const GroupElement& h) {
    if (g.ctx != h.ctx && !(same_ring(g.ctx->ring(), h.ctx->ring()) && g.ctx->rank() == h.ctx->rank()))
        throw std::invalid_argument("group context mismatch");
    ModElem y = g.y;
    Poly shift = Poly::monomial(g.ctx->ring(), g.a, 1);
    y = y + h.y.scaled_by(shift);
    return GroupElement::make(g.ctx, y, iv_add(g.a, h.a));
}

GroupElement ginv(const GroupElement& g) {
    Poly shift = Poly::monomial(g.ctx->ring(), iv_neg(g.a), 1);
    ModElem y = (-g.y).scaled_by(shift);
    return GroupElement::make(g.ctx, y, iv_neg(g.a));
}

GroupElement gpow(const GroupElement& g, int64_t z) {
    if (iv_is_zero(g.a)) {
        // torsion part: (y,0)^z = (z y, 0) and p y = 0
        int64_t p = g.ctx->ring()->p;
        uint32_t c = static_cast<uint32_t>(((z % p) + p) % p);
        ModElem y(g.ctx->ring(), g.ctx->rank());
        for (size_t i = 0; i < y.coords.size(); ++i) y.coords[i] = g.y.coords[i].scaled(c);
        return GroupElement::make(g.ctx, y, iv_zero(g.ctx->nvars()));
    }
    Poly gs = geom_sum(g.ctx->ring(), g.a, z);
    return GroupElement::make(g.ctx, g.y.scaled_by(gs), iv_scale(g.a, z));
}

GroupElement eval_word(const std::vector<GroupElement>& gens, const Word& w) {
    if (gens.empty()) throw std::invalid_argument("eval_word: no generators");
    GroupElement acc = GroupElement::identity(gens[0].ctx);
    for (const auto& [idx, exp] : w) acc = gmul(acc, gpow(gens.at(idx), exp));
    return acc;
}

Word word_inverse(const Word& w) {
    Word r(w.rbegin(), w.rend());
    for (auto& [idx, exp] : r) exp = -exp;
    return r;
}

Word word_concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Word word_power(const Word& w, int64_t k) {
    Word base = k >= 0 ? w : word_inverse(w);
    int64_t n = k >= 0 ? k : -k;
    Word r;
    for (int64_t i = 0; i < n; ++i) r = word_concat(r, base);
    return r;
}

Word SubgroupData::lift_word_for(const IntVec& lattice_coords) const {
    Word w;
    for (size_t j = 0; j < lift_words.size(); ++j)
        if (lattice_coords[j] != 0) w = word_concat(w, word_power(lift_words[j], lattice_coords[j]));
    return w;
}

SubgroupData subgroup_data(const std::vector<GroupElement>& gens) {
    if (gens.empty()) throw std::invalid_argument("subgroup_data: empty generator list");
    const GroupCtxPtr& ctx = gens[0].ctx;
    uint32_t n = ctx->nvars();

    SubgroupData out;
    out.gens = gens;

    std::vector<IntVec> pis;
    pis.reserve(gens.size());
    for (const auto& g : gens) pis.push_back(g.a);
    std::vector<IntVec> combos;
    out.pi_lattice = hermite_lattice(n, pis, &combos);
    uint32_t d = out.pi_lattice.dim();

    // lifts realizing the Hermite basis vectors
    for (uint32_t i = 0; i < d; ++i) {
        Word w;
        for (size_t j = 0; j < gens.size(); ++j)
            if (combos[i][j] != 0) w.emplace_back(j, combos[i][j]);
        out.lift_words.push_back(w);
        out.lifts.push_back(eval_word(gens, w));
    }

    auto push_kernel = [&](const GroupElement& k, Word w) {
        if (!iv_is_zero(k.a)) throw std::logic_error("kernel word has nonzero projection");
        if (k.y.is_zero()) return;
        for (const auto& seen : out.kernel_gens)
            if (seen == k.y) return;
        out.kernel_gens.push_back(k.y);
        out.kernel_words.push_back(std::move(w));
    };

    // defect of each generator against the lift word for its projection
    for (size_t i = 0; i < gens.size(); ++i) {
        auto coords = out.pi_lattice.coordinates(gens[i].a);
        if (!coords) throw std::logic_error("projection outside its own lattice");
        Word lw = out.lift_word_for(*coords);
        Word w = word_concat(word_inverse(lw), {{i, 1}});
        push_kernel(gmul(ginv(eval_word(gens, lw)), gens[i]), w);
    }
    // relation-lattice words of the projections
    for (const auto& rel : integer_kernel(pis, n)) {
        Word w;
        for (size_t j = 0; j < gens.size(); ++j)
            if (rel[j] != 0) w.emplace_back(j, rel[j]);
        if (!w.empty()) push_kernel(eval_word(gens, w), w);
    }
    // commutators of the lifts
    for (uint32_t i = 0; i < d; ++i) {
        for (uint32_t j = i + 1; j < d; ++j) {
            Word w = word_concat(
                word_concat(out.lift_words[i], out.lift_words[j]),
                word_concat(word_inverse(out.lift_words[i]), word_inverse(out.lift_words[j])));
            push_kernel(gmul(gmul(out.lifts[i], out.lifts[j]),
                             gmul(ginv(out.lifts[i]), ginv(out.lifts[j]))),
                        w);
        }
    }

    // saturation under the lift action: X^{±a_i} * y must stay in the module;
    // a_i lies in the lattice so one pass suffices, but run the worklist until
    // the module stabilizes as a check.
    std::vector<IntVec> lambda(out.pi_lattice.basis);
    auto build = [&]() {
        return std::make_shared<SubringModule>(lambda, [&] {
            std::vector<ModElem> els;
            for (const auto& y : out.kernel_gens) els.push_back(y);
            return els;
        }(), ctx->pres);
    };
    out.kernel_module = build();
    bool stable = false;
    int guard = 0;
    while (!stable && guard++ < 8) {
        stable = true;
        std::vector<std::pair<ModElem, Word>> fresh;
        for (size_t k = 0; k < out.kernel_gens.size(); ++k) {
            for (uint32_t i = 0; i < d; ++i) {
                for (int s : {+1, -1}) {
                    Poly mono = Poly::monomial(ctx->ring(), iv_scale(out.pi_lattice.basis[i], s), 1);
                    ModElem cand = ctx->nf->nf(out.kernel_gens[k].scaled_by(mono));
                    if (cand.is_zero()) continue;
                    if (!out.kernel_module->express(cand).has_value()) {
                        Word w = word_concat(
                            word_concat(word_power(out.lift_words[i], s), out.kernel_words[k]),
                            word_power(out.lift_words[i], -s));
                        fresh.emplace_back(cand, std::move(w));
                    }
                }
            }
        }
        if (!fresh.empty()) {
            stable = false;
            for (auto& [y, w] : fresh) {
                out.kernel_gens.push_back(y);
                out.kernel_words.push_back(std::move(w));
            }
            out.kernel_module = build();
        }
    }
    if (!stable) throw std::logic_error("subgroup_data: saturation did not stabilize");
    return out;
}

SubgroupData conjugated_subgroup(const SubgroupData& h, const GroupElement& q) {
    SubgroupData out;
    const GroupCtxPtr& ctx = q.ctx;
    out.gens.reserve(h.gens.size());
    for (const auto& g : h.gens) out.gens.push_back(gmul(gmul(q, g), ginv(q)));
    out.pi_lattice = h.pi_lattice;
    out.lift_words = h.lift_words;
    out.lifts.reserve(h.lifts.size());
    for (const auto& l : h.lifts) out.lifts.push_back(gmul(gmul(q, l), ginv(q)));
    Poly shift = Poly::monomial(ctx->ring(), q.a, 1);
    out.kernel_words = h.kernel_words;
    for (const auto& y : h.kernel_gens)
        out.kernel_gens.push_back(ctx->nf->nf(y.scaled_by(shift)));
    out.kernel_module = std::make_shared<SubringModule>(
        out.pi_lattice.basis,
        [&] {
            std::vector<ModElem> els;
            for (const auto& y : out.kernel_gens) els.push_back(y);
            return els;
        }(),
        ctx->pres);
    return out;
}

}  // namespace lamp
