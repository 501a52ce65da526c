#include "lamplighter/groebner.hpp"

#include <deque>
#include <set>
#include <stdexcept>

namespace lamp {

int MonOrder::cmp_mono(const IntVec& a, const IntVec& b) const {
    uint32_t nb = nblocks();
    for (uint32_t blk = 0; blk < nb; ++blk) {
        int64_t da = 0, db = 0;
        for (size_t v = 0; v < a.size(); ++v) {
            if (block_of_var[v] != blk) continue;
            da += a[v];
            db += b[v];
        }
        if (da != db) return da < db ? -1 : 1;
        for (size_t v = 0; v < a.size(); ++v) {
            if (block_of_var[v] != blk) continue;
            if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;  // lex: earlier var bigger exponent wins
        }
    }
    return 0;
}

int MonOrder::cmp_term(uint32_t pa, const IntVec& a, uint32_t pb, const IntVec& b) const {
    if (pa != pb) return pa < pb ? 1 : -1;  // smaller position dominates
    return cmp_mono(a, b);
}

std::optional<LeadTerm> leading_term(const ModElem& f, const MonOrder& ord) {
    std::optional<LeadTerm> best;
    for (uint32_t pos = 0; pos < f.coords.size(); ++pos) {
        for (const auto& [e, c] : f.coords[pos].terms()) {
            if (!best || ord.cmp_term(pos, e, best->pos, best->exp) > 0) {
                best = LeadTerm{pos, e, c};
            }
        }
    }
    return best;
}

namespace {

bool divides(const IntVec& a, const IntVec& b) {  // a | b componentwise
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

int64_t total_deg(const IntVec& e) {
    int64_t d = 0;
    for (int64_t x : e) d += x;
    return d;
}

void check_poly_encoded(const ModElem& f) {
    for (const auto& c : f.coords)
        for (const auto& [e, co] : c.terms())
            for (int64_t x : e)
                if (x < 0) throw std::invalid_argument("groebner: negative exponent in input");
}

}  // namespace

GroebnerBasis::GroebnerBasis(RingPtr ring, uint32_t rank, std::vector<ModElem> gens, MonOrder order,
                             bool track_expr)
    : ring_(std::move(ring)), rank_(rank), order_(std::move(order)) {
    for (const auto& g : gens) check_poly_encoded(g);
    run(std::move(gens), track_expr);
}

ModElem GroebnerBasis::reduce_full(ModElem f, std::vector<Poly>* quot,
                                   std::vector<Poly>* expr_acc) const {
    const uint32_t p = ring_->p;
    ModElem rem(ring_, rank_);
    if (quot) quot->assign(basis_.size(), Poly(ring_));
    while (true) {
        auto lt = leading_term(f, order_);
        if (!lt) break;
        bool reduced = false;
        for (size_t i = 0; i < basis_.size(); ++i) {
            if (leads_[i].pos != lt->pos || !divides(leads_[i].exp, lt->exp)) continue;
            IntVec shift = iv_sub(lt->exp, leads_[i].exp);
            uint32_t c = mod_mul(lt->coeff, mod_inv(leads_[i].coeff, p), p);
            Poly mult = Poly::monomial(ring_, shift, c);
            f = f - basis_[i].scaled_by(mult);
            if (quot) (*quot)[i] = (*quot)[i] + mult;
            if (expr_acc && !expr_.empty()) {
                for (size_t j = 0; j < expr_acc->size(); ++j)
                    (*expr_acc)[j] = (*expr_acc)[j] - mult * expr_[i][j];
            }
            reduced = true;
            break;
        }
        if (!reduced) {
            // move leading term to remainder
            Poly mono = Poly::monomial(ring_, lt->exp, lt->coeff);
            rem.coords[lt->pos] = rem.coords[lt->pos] + mono;
            f.coords[lt->pos] = f.coords[lt->pos] - mono;
        }
    }
    return rem;
}

ModElem GroebnerBasis::normal_form(const ModElem& f, std::vector<Poly>* quot) const {
    check_poly_encoded(f);
    return reduce_full(f, quot, nullptr);
}

void GroebnerBasis::run(std::vector<ModElem> gens, bool track) {
    const uint32_t p = ring_->p;
    inputs_ = gens;
    size_t ngens = gens.size();

    struct Item {
        ModElem g;
        LeadTerm lt;
        std::vector<Poly> expr;
        int64_t sugar;
    };
    std::vector<Item> work;

    auto make_monic = [&](ModElem& g, std::vector<Poly>* expr) {
        auto lt = leading_term(g, order_);
        if (!lt) return false;
        if (lt->coeff != 1) {
            uint32_t inv = mod_inv(lt->coeff, p);
            Poly c = Poly::constant(ring_, inv);
            g = g.scaled_by(c);
            if (expr)
                for (auto& e : *expr) e = e * c;
        }
        return true;
    };

    auto sugar_of = [&](const ModElem& g) {
        int64_t s = 0;
        for (const auto& c : g.coords)
            for (const auto& [e, co] : c.terms()) s = std::max(s, total_deg(e));
        return s;
    };

    // Reduce a candidate against `work`, tracking expression and quotients.
    auto reduce_against = [&](ModElem f, std::vector<Poly> expr,
                              std::vector<Poly>* used) -> std::pair<ModElem, std::vector<Poly>> {
        if (used) used->assign(work.size(), Poly(ring_));
        ModElem rem(ring_, rank_);
        while (true) {
            auto lt = leading_term(f, order_);
            if (!lt) break;
            bool reduced = false;
            for (size_t i = 0; i < work.size(); ++i) {
                if (work[i].lt.pos != lt->pos || !divides(work[i].lt.exp, lt->exp)) continue;
                IntVec shift = iv_sub(lt->exp, work[i].lt.exp);
                uint32_t c = mod_mul(lt->coeff, mod_inv(work[i].lt.coeff, p), p);
                Poly mult = Poly::monomial(ring_, shift, c);
                f = f - work[i].g.scaled_by(mult);
                if (track)
                    for (size_t j = 0; j < expr.size(); ++j)
                        expr[j] = expr[j] - mult * work[i].expr[j];
                if (used) (*used)[i] = (*used)[i] + mult;
                reduced = true;
                break;
            }
            if (!reduced) {
                Poly mono = Poly::monomial(ring_, lt->exp, lt->coeff);
                rem.coords[lt->pos] = rem.coords[lt->pos] + mono;
                f.coords[lt->pos] = f.coords[lt->pos] - mono;
            }
        }
        return {rem, std::move(expr)};
    };

    // Seed with inputs.
    for (size_t i = 0; i < ngens; ++i) {
        std::vector<Poly> expr;
        if (track) {
            expr.assign(ngens, Poly(ring_));
            expr[i] = Poly::constant(ring_, 1);
        }
        auto [nf, nexpr] = reduce_against(gens[i], std::move(expr), nullptr);
        if (nf.is_zero()) {
            if (track) {
                // input dependent on earlier ones: 0 = g_i - sum(...): syzygy
                ModElem syz(ring_, static_cast<uint32_t>(ngens));
                for (size_t j = 0; j < ngens; ++j) syz.coords[j] = nexpr[j];
                if (!syz.is_zero()) syzygies_.push_back(std::move(syz));
            }
            continue;
        }
        ModElem g = std::move(nf);
        make_monic(g, track ? &nexpr : nullptr);
        auto lt = leading_term(g, order_);
        work.push_back(Item{std::move(g), *lt, std::move(nexpr), 0});
        work.back().sugar = sugar_of(work.back().g);
    }

    // S-pair queue: (sugar, i, j). No pair criteria; everything is reduced.
    struct Pair {
        int64_t sugar;
        size_t i, j;
        bool operator<(const Pair& o) const {
            if (sugar != o.sugar) return sugar < o.sugar;
            if (j != o.j) return j < o.j;
            return i < o.i;
        }
    };
    std::set<Pair> pairs;
    auto push_pairs_for = [&](size_t k) {
        for (size_t i = 0; i < k; ++i) {
            if (work[i].lt.pos != work[k].lt.pos) continue;
            IntVec lcm(work[i].lt.exp.size());
            for (size_t v = 0; v < lcm.size(); ++v)
                lcm[v] = std::max(work[i].lt.exp[v], work[k].lt.exp[v]);
            int64_t s = std::max(work[i].sugar + total_deg(iv_sub(lcm, work[i].lt.exp)),
                                 work[k].sugar + total_deg(iv_sub(lcm, work[k].lt.exp)));
            pairs.insert(Pair{s, i, k});
        }
    };
    for (size_t k = 0; k < work.size(); ++k) push_pairs_for(k);

    while (!pairs.empty()) {
        Pair pr = *pairs.begin();
        pairs.erase(pairs.begin());
        const Item &a = work[pr.i], &b = work[pr.j];
        IntVec lcm(a.lt.exp.size());
        for (size_t v = 0; v < lcm.size(); ++v) lcm[v] = std::max(a.lt.exp[v], b.lt.exp[v]);
        Poly ma = Poly::monomial(ring_, iv_sub(lcm, a.lt.exp), 1);
        Poly mb = Poly::monomial(ring_, iv_sub(lcm, b.lt.exp), 1);
        ModElem spair = a.g.scaled_by(ma) - b.g.scaled_by(mb);
        std::vector<Poly> expr;
        if (track) {
            expr.assign(ngens, Poly(ring_));
            for (size_t j = 0; j < ngens; ++j) expr[j] = ma * a.expr[j] - mb * b.expr[j];
        }
        auto [nf, nexpr] = reduce_against(std::move(spair), std::move(expr), nullptr);
        if (nf.is_zero()) {
            if (track) {
                ModElem syz(ring_, static_cast<uint32_t>(ngens));
                for (size_t j = 0; j < ngens; ++j) syz.coords[j] = nexpr[j];
                if (!syz.is_zero()) syzygies_.push_back(std::move(syz));
            }
            continue;
        }
        ModElem g = std::move(nf);
        make_monic(g, track ? &nexpr : nullptr);
        auto lt = leading_term(g, order_);
        int64_t sg = std::max<int64_t>(pr.sugar, sugar_of(g));
        work.push_back(Item{std::move(g), *lt, std::move(nexpr), sg});
        push_pairs_for(work.size() - 1);
    }

    // Inter-reduce to the unique reduced basis: drop elements whose lead is
    // divisible by another lead, then reduce tails.
    std::vector<size_t> keep;
    for (size_t i = 0; i < work.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < work.size() && !redundant; ++j) {
            if (i == j || work[j].lt.pos != work[i].lt.pos) continue;
            if (divides(work[j].lt.exp, work[i].lt.exp) &&
                (work[j].lt.exp != work[i].lt.exp || j < i))
                redundant = true;
        }
        if (!redundant) keep.push_back(i);
    }

    std::vector<Item> final_items;
    for (size_t idx : keep) final_items.push_back(std::move(work[idx]));
    // deterministic order: by leading term, descending
    std::sort(final_items.begin(), final_items.end(), [&](const Item& x, const Item& y) {
        return order_.cmp_term(x.lt.pos, x.lt.exp, y.lt.pos, y.lt.exp) > 0;
    });

    // tail-reduce each against the others
    basis_.clear();
    leads_.clear();
    expr_.clear();
    for (size_t i = 0; i < final_items.size(); ++i) {
        basis_.push_back(final_items[i].g);
        leads_.push_back(final_items[i].lt);
        if (track) expr_.push_back(final_items[i].expr);
    }
    for (size_t i = 0; i < basis_.size(); ++i) {
        ModElem lead_only(ring_, rank_);
        lead_only.coords[leads_[i].pos] = Poly::monomial(ring_, leads_[i].exp, leads_[i].coeff);
        ModElem tail = basis_[i] - lead_only;
        ModElem red(ring_, rank_);
        std::vector<Poly> expr_delta(track ? inputs_.size() : 0, Poly(ring_));
        while (true) {
            auto lt = leading_term(tail, order_);
            if (!lt) break;
            bool reduced = false;
            for (size_t j = 0; j < basis_.size(); ++j) {
                if (j == i || leads_[j].pos != lt->pos || !divides(leads_[j].exp, lt->exp)) continue;
                IntVec shift = iv_sub(lt->exp, leads_[j].exp);
                uint32_t c = mod_mul(lt->coeff, mod_inv(leads_[j].coeff, ring_->p), ring_->p);
                Poly mult = Poly::monomial(ring_, shift, c);
                tail = tail - basis_[j].scaled_by(mult);
                if (track)
                    for (size_t t = 0; t < expr_delta.size(); ++t)
                        expr_delta[t] = expr_delta[t] + mult * expr_[j][t];
                reduced = true;
                break;
            }
            if (!reduced) {
                Poly mono = Poly::monomial(ring_, lt->exp, lt->coeff);
                red.coords[lt->pos] = red.coords[lt->pos] + mono;
                tail.coords[lt->pos] = tail.coords[lt->pos] - mono;
            }
        }
        basis_[i] = lead_only + red;
        if (track)
            for (size_t t = 0; t < expr_delta.size(); ++t)
                expr_[i][t] = expr_[i][t] - expr_delta[t];
    }

    if (track) {
        // Complete the syzygy set: input_i - sum(div coefficients)*basis = 0.
        for (size_t i = 0; i < inputs_.size(); ++i) {
            std::vector<Poly> quot;
            ModElem nf = reduce_full(inputs_[i], &quot, nullptr);
            if (!nf.is_zero()) throw std::logic_error("groebner: input does not reduce to zero");
            // input_i = sum quot[k] basis_k = sum_j (sum_k quot[k] expr[k][j]) input_j
            ModElem syz(ring_, static_cast<uint32_t>(inputs_.size()));
            for (size_t j = 0; j < inputs_.size(); ++j) {
                Poly s(ring_);
                for (size_t k = 0; k < basis_.size(); ++k) s = s + quot[k] * expr_[k][j];
                if (i == j) s = s - Poly::constant(ring_, 1);
                syz.coords[j] = std::move(s);
            }
            if (!syz.is_zero()) syzygies_.push_back(std::move(syz));
        }
    }
}

std::optional<std::vector<std::pair<uint32_t, IntVec>>> GroebnerBasis::standard_monomials(
    size_t limit) const {
    uint32_t nv = ring_->nvars;
    // finiteness: for each position, every variable must appear as a pure
    // power among the leading terms of that position
    std::vector<std::vector<IntVec>> leads_by_pos(rank_);
    for (const auto& lt : leads_) leads_by_pos[lt.pos].push_back(lt.exp);
    std::vector<std::vector<int64_t>> bound(rank_, std::vector<int64_t>(nv, -1));
    for (uint32_t pos = 0; pos < rank_; ++pos) {
        bool killed = false;  // position entirely reduced away by a constant lead
        for (const auto& e : leads_by_pos[pos])
            if (iv_is_zero(e)) killed = true;
        if (killed) {
            for (uint32_t v = 0; v < nv; ++v) bound[pos][v] = 0;
            continue;
        }
        for (const auto& e : leads_by_pos[pos]) {
            int nz = -1;
            bool pure = true;
            for (uint32_t v = 0; v < nv; ++v) {
                if (e[v] != 0) {
                    if (nz >= 0) pure = false;
                    nz = static_cast<int>(v);
                }
            }
            if (pure && nz >= 0) {
                int64_t d = e[nz];
                if (bound[pos][nz] < 0 || d < bound[pos][nz]) bound[pos][nz] = d;
            }
        }
        for (uint32_t v = 0; v < nv; ++v)
            if (bound[pos][v] < 0) return std::nullopt;
    }
    // enumerate standard monomials under the bounds
    std::vector<std::pair<uint32_t, IntVec>> out;
    for (uint32_t pos = 0; pos < rank_; ++pos) {
        IntVec e = iv_zero(nv);
        while (true) {
            bool reducible = false;
            for (const auto& l : leads_by_pos[pos])
                if (divides(l, e)) {
                    reducible = true;
                    break;
                }
            if (!reducible) {
                out.emplace_back(pos, e);
                if (out.size() > limit) return std::nullopt;
            }
            // next exponent tuple under bounds
            uint32_t v = 0;
            while (v < nv) {
                ++e[v];
                if (e[v] < bound[pos][v]) break;
                e[v] = 0;
                ++v;
            }
            if (v == nv) break;
        }
    }
    return out;
}

}  // namespace lamp
