#include <map>

#include "lamplighter/sunit.hpp"

namespace lamp {

namespace {

// Laurent polynomial as a fraction with monomial denominator.
RatFun ratfun_of_laurent(const Poly& f) {
    if (f.is_zero()) return RatFun::zero(f.ring());
    IntVec mins = f.min_exponents();
    IntVec shift(mins.size(), 0);
    bool any = false;
    for (size_t i = 0; i < mins.size(); ++i)
        if (mins[i] < 0) {
            shift[i] = -mins[i];
            any = true;
        }
    if (!any) return RatFun(f);
    return RatFun(f.shifted(shift), Poly::monomial(f.ring(), shift, 1));
}

// substitute one variable by a rational value inside a polynomial
RatFun subst_var_poly(const Poly& f, uint32_t var, const RatFun& value) {
    const RingPtr& ring = f.ring();
    RatFun acc = RatFun::zero(ring);
    for (const auto& [e, c] : f.terms()) {
        IntVec rest = e;
        int64_t k = rest[var];
        rest[var] = 0;
        RatFun term = ratfun_of_laurent(Poly::monomial(ring, rest, c));
        if (k != 0) term = term * value.pow(k);
        acc = acc + term;
    }
    return acc;
}

RatFun subst_var(const RatFun& f, uint32_t var, const RatFun& value) {
    RatFun num = subst_var_poly(f.num(), var, value);
    RatFun den = subst_var_poly(f.den(), var, value);
    return num / den;
}

int64_t max_exp_in(const Poly& f, uint32_t var) {
    int64_t d = 0;
    for (const auto& [e, c] : f.terms()) d = std::max(d, e[var]);
    return d;
}

Poly coeff_in(const Poly& f, uint32_t var, int64_t k) {
    std::vector<Poly::Term> ts;
    for (const auto& [e, c] : f.terms()) {
        if (e[var] != k) continue;
        IntVec e2 = e;
        e2[var] = 0;
        ts.emplace_back(std::move(e2), c);
    }
    return Poly::from_terms(f.ring(), std::move(ts));
}

// finite F_p-dimension route
std::optional<MatrixForm> route_finite(const ModulePresentation& pres,
                                       const std::vector<ModElem>& consts) {
    auto fpd = fp_dimension(pres, 4096);
    if (!fpd.finite) return std::nullopt;
    const RingPtr& ring = pres.ring;
    MatrixForm mf;
    mf.route = "finite";
    mf.kring = make_ring(ring->p, 0);
    mf.D = static_cast<uint32_t>(fpd.dim);
    if (mf.D == 0) {
        // zero module: no embedding needed; caller handles all-zero constants
        return std::nullopt;
    }
    NFContext nf(pres);
    // index the basis monomials
    std::map<std::pair<uint32_t, IntVec>, uint32_t> index;
    for (uint32_t k = 0; k < mf.D; ++k) {
        const ModElem& b = fpd.basis[k];
        for (uint32_t pos = 0; pos < pres.rank; ++pos)
            for (const auto& [e, c] : b.coords[pos].terms()) index[{pos, e}] = k;
    }
    auto coords_of = [&](const ModElem& x) -> std::optional<std::vector<RatFun>> {
        std::vector<RatFun> v(mf.D, RatFun::zero(mf.kring));
        for (uint32_t pos = 0; pos < pres.rank; ++pos) {
            for (const auto& [e, c] : x.coords[pos].terms()) {
                auto it = index.find({pos, e});
                if (it == index.end()) return std::nullopt;
                v[it->second] = v[it->second] + RatFun(Poly::constant(mf.kring, c));
            }
        }
        return v;
    };
    for (uint32_t j = 0; j < ring->nvars; ++j) {
        KMat a = KMat::zero(mf.kring, mf.D);
        Poly xj = Poly::variable(ring, j);
        for (uint32_t k = 0; k < mf.D; ++k) {
            auto col = coords_of(nf.nf(fpd.basis[k].scaled_by(xj)));
            if (!col) return std::nullopt;
            for (uint32_t i = 0; i < mf.D; ++i) a.at(i, k) = (*col)[i];
        }
        mf.action_inv.push_back(a.inverse());
        mf.action.push_back(std::move(a));
    }
    for (const auto& c : consts) {
        auto v = coords_of(nf.nf(c));
        if (!v) return std::nullopt;
        mf.constants.push_back(std::move(*v));
    }
    return mf;
}

// rank-1 linear elimination: solve relations for variables with a monomial
// linear coefficient, landing in the fraction field of the remaining ones
std::optional<MatrixForm> route_linear(const ModulePresentation& pres,
                                       const std::vector<ModElem>& consts) {
    if (pres.rank != 1) return std::nullopt;
    const RingPtr& ring = pres.ring;
    uint32_t n = ring->nvars;
    std::vector<RatFun> pending;
    for (const auto& r : pres.relations)
        if (!r.coords[0].is_zero()) pending.push_back(ratfun_of_laurent(r.coords[0]));
    std::vector<std::optional<RatFun>> image(n);

    bool progress = true;
    while (progress) {
        progress = false;
        // drop vanished relations
        std::vector<RatFun> still;
        for (auto& f : pending)
            if (!f.is_zero()) still.push_back(f);
        pending = std::move(still);
        for (size_t t = 0; t < pending.size() && !progress; ++t) {
            const Poly& num = pending[t].num();
            for (uint32_t v = 0; v < n && !progress; ++v) {
                if (image[v]) continue;
                int64_t dmax = max_exp_in(num, v);
                // normalize so the smallest exponent of v is zero
                int64_t dmin = dmax;
                for (const auto& [e, c] : num.terms()) dmin = std::min(dmin, e[v]);
                if (dmax - dmin != 1) continue;
                IntVec unshift = iv_zero(n);
                unshift[v] = -dmin;
                Poly norm = num.shifted(unshift);
                Poly a = coeff_in(norm, v, 1);
                Poly b = coeff_in(norm, v, 0);
                if (!a.is_monomial()) continue;
                RatFun value = ratfun_of_laurent(-b) / ratfun_of_laurent(a);
                // substitute everywhere
                for (auto& f : pending) f = subst_var(f, v, value);
                for (auto& img : image)
                    if (img) *img = subst_var(*img, v, value);
                image[v] = value;
                progress = true;
            }
        }
    }
    for (auto& f : pending)
        if (!f.is_zero()) return std::nullopt;

    MatrixForm mf;
    mf.route = "eliminate";
    mf.kring = ring;
    mf.D = 1;
    for (uint32_t j = 0; j < n; ++j) {
        RatFun val = image[j] ? *image[j]
                              : ratfun_of_laurent(Poly::variable(ring, j));
        KMat a;
        a.n = 1;
        a.a.push_back(val);
        if (!val.is_zero()) {
            KMat inv;
            inv.n = 1;
            inv.a.push_back(val.inverse());
            mf.action_inv.push_back(std::move(inv));
        } else {
            mf.action_inv.push_back(std::nullopt);
        }
        mf.action.push_back(std::move(a));
    }
    for (const auto& c : consts) {
        RatFun v = ratfun_of_laurent(c.coords[0]);
        for (uint32_t j = 0; j < n; ++j)
            if (image[j]) v = subst_var(v, j, *image[j]);
        mf.constants.push_back({v});
    }
    return mf;
}

// rank-1 split: relations generate a finite coefficient ring over a sublattice,
// tensored with a free Laurent part
std::optional<MatrixForm> route_split(const ModulePresentation& pres,
                                      const std::vector<ModElem>& consts) {
    if (pres.rank != 1) return std::nullopt;
    const RingPtr& ring = pres.ring;
    uint32_t n = ring->nvars;
    std::vector<Poly> gens;
    for (const auto& r : pres.relations)
        if (!r.coords[0].is_zero()) gens.push_back(r.coords[0]);
    if (gens.empty()) return std::nullopt;

    // lattice spanned by support differences plus non-invertible support axes
    std::vector<IntVec> span;
    for (const auto& g : gens) {
        const IntVec& base = g.terms()[0].first;
        for (const auto& [e, c] : g.terms()) {
            IntVec d = iv_sub(e, base);
            if (!iv_is_zero(d)) span.push_back(d);
        }
        for (uint32_t v = 0; v < n; ++v) {
            bool appears = false;
            for (const auto& [e, c] : g.terms())
                if (e[v] != 0) appears = true;
            if (appears && !ring->invertible[v]) {
                IntVec ev = iv_zero(n);
                ev[v] = 1;
                span.push_back(ev);
            }
        }
    }
    if (span.empty()) return std::nullopt;
    auto lambda = saturation_basis(n, span);
    uint32_t r = static_cast<uint32_t>(lambda.size());
    if (r == 0 || r == n) return std::nullopt;  // nothing split off
    auto comp = lattice_complement(n, lambda);
    uint32_t s = static_cast<uint32_t>(comp.size());

    // full basis matrix [lambda; comp] and its inverse for coordinates
    std::vector<IntVec> full = lambda;
    full.insert(full.end(), comp.begin(), comp.end());
    // invert over Z via the Hermite trick: full is unimodular by construction
    std::vector<IntVec> inv(n, IntVec(n, 0));
    {
        // augmented [full^T | I] row-reduced to [I | M] over Z (unimodular)
        std::vector<IntVec> aug(n, IntVec(2 * n, 0));
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = 0; j < n; ++j) aug[i][j] = full[j][i];  // transpose
        for (uint32_t i = 0; i < n; ++i) aug[i][n + i] = 1;
        // fraction-free Gauss-Jordan for a unimodular matrix
        for (uint32_t col = 0; col < n; ++col) {
            uint32_t piv = n;
            for (uint32_t i = col; i < n; ++i)
                if (aug[i][col] == 1 || aug[i][col] == -1) {
                    piv = i;
                    break;
                }
            if (piv == n) {
                for (uint32_t i = col; i < n; ++i)
                    if (aug[i][col] != 0) {
                        piv = i;
                        break;
                    }
            }
            if (piv == n) return std::nullopt;
            std::swap(aug[col], aug[piv]);
            // make pivot 1 by Euclid with other rows if needed
            int guard = 0;
            while (std::abs(aug[col][col]) != 1 && guard++ < 64) {
                uint32_t other = n;
                for (uint32_t i = col + 1; i < n; ++i)
                    if (aug[i][col] != 0) {
                        other = i;
                        break;
                    }
                if (other == n) return std::nullopt;
                int64_t q = aug[col][col] / aug[other][col];
                for (uint32_t j = 0; j < 2 * n; ++j) aug[col][j] -= q * aug[other][j];
                if (aug[col][col] == 0) std::swap(aug[col], aug[other]);
            }
            if (std::abs(aug[col][col]) != 1) return std::nullopt;
            if (aug[col][col] == -1)
                for (uint32_t j = 0; j < 2 * n; ++j) aug[col][j] = -aug[col][j];
            for (uint32_t i = 0; i < n; ++i) {
                if (i == col || aug[i][col] == 0) continue;
                int64_t q = aug[i][col];
                for (uint32_t j = 0; j < 2 * n; ++j) aug[i][j] -= q * aug[col][j];
            }
        }
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    }
    // coords(e) = inv * e split into (lambda part, comp part)
    auto coords_of_exp = [&](const IntVec& e) {
        IntVec mu(r, 0), w(s, 0);
        for (uint32_t i = 0; i < n; ++i) {
            int64_t x = 0;
            for (uint32_t j = 0; j < n; ++j) x += inv[i][j] * e[j];
            if (i < r)
                mu[i] = x;
            else
                w[i - r] = x;
        }
        return std::make_pair(mu, w);
    };

    // coefficient ring on the lattice coordinates
    std::vector<std::string> tnames;
    std::vector<bool> tinv;
    for (uint32_t i = 0; i < r; ++i) {
        tnames.push_back("T" + std::to_string(i + 1));
        bool invertible = true;
        for (uint32_t v = 0; v < n; ++v)
            if (lambda[i][v] != 0 && !ring->invertible[v]) invertible = false;
        tinv.push_back(invertible);
    }
    RingPtr cring = make_ring(ring->p, tnames, tinv);

    std::vector<ModElem> cgens;
    for (const auto& g : gens) {
        IntVec basew;
        bool first = true;
        std::vector<Poly::Term> ts;
        for (const auto& [e, c] : g.terms()) {
            auto [mu, w] = coords_of_exp(e);
            if (first) {
                basew = w;
                first = false;
            } else if (w != basew) {
                return std::nullopt;  // not supported on one coset
            }
            ts.emplace_back(std::move(mu), c);
        }
        // absolute lattice exponents; strip only the invertible directions
        // (their monomials are units, the rest carries real content)
        Poly ghat = Poly::from_terms(cring, std::move(ts));
        IntVec mins = ghat.min_exponents();
        IntVec shift(r, 0);
        for (uint32_t i = 0; i < r; ++i)
            if (tinv[i]) shift[i] = -mins[i];
        ghat = ghat.shifted(shift);
        cgens.push_back(ModElem::single(ghat));
    }
    ModulePresentation cpres(cring, 1, cgens);
    auto fpd = fp_dimension(cpres, 1024);
    if (!fpd.finite || fpd.dim == 0) return std::nullopt;
    uint32_t theta = static_cast<uint32_t>(fpd.dim);
    NFContext cnf(cpres);
    std::map<IntVec, uint32_t> cindex;
    for (uint32_t k = 0; k < theta; ++k)
        for (const auto& [e, c] : fpd.basis[k].coords[0].terms()) cindex[e] = k;

    // parameter ring for the free directions
    std::vector<std::string> wnames;
    for (uint32_t i = 0; i < s; ++i) wnames.push_back("W" + std::to_string(i + 1));
    RingPtr kring = make_ring(ring->p, wnames, std::vector<bool>(s, false));

    auto cmatrix_of_tpow = [&](const IntVec& mu) -> std::optional<std::vector<uint32_t>> {
        // theta x theta matrix over F_p, row-major
        for (uint32_t i = 0; i < r; ++i)
            if (mu[i] < 0 && !tinv[i]) return std::nullopt;
        std::vector<uint32_t> m(static_cast<size_t>(theta) * theta, 0);
        Poly tmu = Poly::monomial(cring, mu, 1);
        for (uint32_t k = 0; k < theta; ++k) {
            ModElem img = cnf.nf(fpd.basis[k].scaled_by(tmu));
            for (const auto& [e, c] : img.coords[0].terms()) {
                auto it = cindex.find(e);
                if (it == cindex.end()) return std::nullopt;
                m[static_cast<size_t>(it->second) * theta + k] =
                    mod_add(m[static_cast<size_t>(it->second) * theta + k], c, ring->p);
            }
        }
        return m;
    };

    MatrixForm mf;
    mf.route = "split";
    mf.kring = kring;
    mf.D = theta;
    for (uint32_t j = 0; j < n; ++j) {
        IntVec ej = iv_zero(n);
        ej[j] = 1;
        auto [mu, w] = coords_of_exp(ej);
        auto cm = cmatrix_of_tpow(mu);
        if (!cm) return std::nullopt;
        RatFun wmono = ratfun_of_laurent(Poly::monomial(kring, w, 1));
        KMat a = KMat::zero(kring, theta);
        for (uint32_t i = 0; i < theta; ++i)
            for (uint32_t k = 0; k < theta; ++k) {
                uint32_t c = (*cm)[static_cast<size_t>(i) * theta + k];
                if (c) a.at(i, k) = RatFun(Poly::constant(kring, c)) * wmono;
            }
        mf.action_inv.push_back(a.inverse());
        mf.action.push_back(std::move(a));
    }
    for (const auto& c : consts) {
        std::vector<RatFun> v(theta, RatFun::zero(kring));
        for (const auto& [e, coef] : c.coords[0].terms()) {
            auto [mu, w] = coords_of_exp(e);
            // split mu into a representable part: negative non-invertible
            // directions cannot appear in constants of a genuine module element
            for (uint32_t i = 0; i < r; ++i)
                if (mu[i] < 0 && !tinv[i]) return std::nullopt;
            Poly tmu = Poly::monomial(cring, mu, 1);
            ModElem img = cnf.nf(ModElem::single(tmu));
            RatFun wmono = ratfun_of_laurent(Poly::monomial(kring, w, coef));
            for (const auto& [be, bc] : img.coords[0].terms()) {
                auto it = cindex.find(be);
                if (it == cindex.end()) return std::nullopt;
                v[it->second] = v[it->second] + RatFun(Poly::constant(kring, bc)) * wmono;
            }
        }
        mf.constants.push_back(std::move(v));
    }
    return mf;
}

// free module: X_j acts as itself on K^d
std::optional<MatrixForm> route_free(const ModulePresentation& pres,
                                     const std::vector<ModElem>& consts) {
    for (const auto& rel : pres.relations)
        if (!rel.is_zero()) return std::nullopt;
    const RingPtr& ring = pres.ring;
    MatrixForm mf;
    mf.route = "free";
    mf.kring = ring;
    mf.D = pres.rank;
    for (uint32_t j = 0; j < ring->nvars; ++j) {
        RatFun xj = ratfun_of_laurent(Poly::variable(ring, j));
        KMat a = KMat::zero(ring, mf.D);
        KMat inv = KMat::zero(ring, mf.D);
        for (uint32_t i = 0; i < mf.D; ++i) {
            a.at(i, i) = xj;
            inv.at(i, i) = xj.inverse();
        }
        mf.action.push_back(std::move(a));
        mf.action_inv.push_back(std::move(inv));
    }
    for (const auto& c : consts) {
        std::vector<RatFun> v;
        for (uint32_t i = 0; i < mf.D; ++i) v.push_back(ratfun_of_laurent(c.coords[i]));
        mf.constants.push_back(std::move(v));
    }
    return mf;
}

}  // namespace

std::optional<MatrixForm> component_matrix_form(const ModulePresentation& pres,
                                                const std::vector<ModElem>& constants_with_c0,
                                                std::string* why) {
    if (auto mf = route_finite(pres, constants_with_c0)) return mf;
    if (auto mf = route_free(pres, constants_with_c0)) return mf;
    if (auto mf = route_linear(pres, constants_with_c0)) return mf;
    if (auto mf = route_split(pres, constants_with_c0)) return mf;
    if (why) *why = "no matrix-form route applies";
    return std::nullopt;
}

}  // namespace lamp
