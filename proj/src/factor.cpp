#include "lamplighter/factor.hpp"

#include <random>
#include <stdexcept>

#include "lamplighter/fraction.hpp"

namespace lamp {

int64_t uni_deg(const UniPoly& f) {
    for (size_t i = f.size(); i-- > 0;)
        if (f[i]) return static_cast<int64_t>(i);
    return -1;
}

UniPoly uni_trim(UniPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

UniPoly uni_mul(const UniPoly& a, const UniPoly& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    UniPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + static_cast<uint64_t>(a[i]) * b[j]) % p;
    }
    return uni_trim(std::move(r));
}

UniPoly uni_mod(UniPoly a, const UniPoly& b, uint32_t p) {
    a = uni_trim(std::move(a));
    int64_t db = uni_deg(b);
    if (db < 0) throw std::invalid_argument("uni_mod by zero");
    uint32_t binv = mod_inv(b[db], p);
    while (uni_deg(a) >= db) {
        int64_t da = uni_deg(a);
        uint32_t c = mod_mul(a[da], binv, p);
        for (int64_t i = 0; i <= db; ++i)
            a[da - db + i] = mod_sub(a[da - db + i], mod_mul(c, b[i], p), p);
        a = uni_trim(std::move(a));
    }
    return a;
}

UniPoly uni_divexact(const UniPoly& a, const UniPoly& b, uint32_t p) {
    UniPoly rem = uni_trim(a);
    int64_t db = uni_deg(b);
    if (db < 0) throw std::invalid_argument("uni_divexact by zero");
    uint32_t binv = mod_inv(b[db], p);
    UniPoly q(rem.size(), 0);
    while (uni_deg(rem) >= db) {
        int64_t da = uni_deg(rem);
        uint32_t c = mod_mul(rem[da], binv, p);
        q[da - db] = c;
        for (int64_t i = 0; i <= db; ++i)
            rem[da - db + i] = mod_sub(rem[da - db + i], mod_mul(c, b[i], p), p);
        rem = uni_trim(std::move(rem));
    }
    if (!rem.empty()) throw std::invalid_argument("uni_divexact: not divisible");
    return uni_trim(std::move(q));
}

UniPoly uni_gcd(UniPoly a, UniPoly b, uint32_t p) {
    a = uni_trim(std::move(a));
    b = uni_trim(std::move(b));
    while (!b.empty()) {
        UniPoly r = uni_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        uint32_t inv = mod_inv(a[uni_deg(a)], p);
        for (auto& c : a) c = mod_mul(c, inv, p);
    }
    return a;
}

UniPoly uni_powmod(const UniPoly& base, uint64_t e, const UniPoly& mod, uint32_t p) {
    UniPoly acc{1};
    UniPoly b = uni_mod(base, mod, p);
    while (e) {
        if (e & 1) acc = uni_mod(uni_mul(acc, b, p), mod, p);
        b = uni_mod(uni_mul(b, b, p), mod, p);
        e >>= 1;
    }
    return acc;
}

UniPoly uni_derivative(const UniPoly& f, uint32_t p) {
    UniPoly r;
    for (size_t i = 1; i < f.size(); ++i)
        r.push_back(mod_mul(f[i], static_cast<uint32_t>(i % p), p));
    return uni_trim(std::move(r));
}

namespace {

UniPoly uni_pth_root(const UniPoly& f, uint32_t p) {
    UniPoly r;
    for (size_t i = 0; i < f.size(); i += p) r.push_back(f[i]);  // c^(1/p) = c
    for (size_t i = 0; i < f.size(); ++i)
        if (i % p != 0 && f[i] != 0) throw std::invalid_argument("uni_pth_root: not a p-th power");
    return uni_trim(std::move(r));
}

// squarefree decomposition: f = prod g_i^i with g_i squarefree, coprime
std::vector<std::pair<UniPoly, uint32_t>> uni_squarefree(UniPoly f, uint32_t p) {
    std::vector<std::pair<UniPoly, uint32_t>> out;
    f = uni_trim(std::move(f));
    if (uni_deg(f) <= 0) return out;
    UniPoly fd = uni_derivative(f, p);
    if (fd.empty()) {
        UniPoly h = uni_pth_root(f, p);
        for (auto& [g, m] : uni_squarefree(h, p)) out.emplace_back(g, m * p);
        if (out.empty() && uni_deg(h) > 0) out.emplace_back(h, p);
        return out;
    }
    UniPoly c = uni_gcd(f, fd, p);
    UniPoly w = uni_divexact(f, c, p);  // product of squarefree factors with p∤e
    uint32_t i = 1;
    while (uni_deg(w) > 0) {
        UniPoly y = uni_gcd(w, c, p);
        UniPoly exact = uni_divexact(w, y, p);  // factors with multiplicity exactly i
        if (uni_deg(exact) > 0) out.emplace_back(exact, i);
        w = std::move(y);
        if (uni_deg(w) > 0) c = uni_divexact(c, w, p);
        ++i;
    }
    // remaining c: all multiplicities divisible by p
    if (uni_deg(c) > 0) {
        UniPoly h = uni_pth_root(c, p);
        for (auto& [g, m] : uni_squarefree(h, p)) out.emplace_back(g, m * p);
    }
    return out;
}

// distinct-degree then equal-degree splitting of a squarefree monic f
void uni_factor_squarefree(const UniPoly& f, uint32_t p, std::mt19937_64& rng,
                           std::vector<UniPoly>& out) {
    int64_t n = uni_deg(f);
    if (n <= 0) return;
    if (n == 1) {
        out.push_back(f);
        return;
    }
    // distinct degree
    UniPoly x{0, 1};
    UniPoly h = x;
    UniPoly rest = f;
    for (int64_t d = 1; 2 * d <= uni_deg(rest); ++d) {
        h = uni_powmod(h, p, rest, p);
        UniPoly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = mod_sub(hx[1], 1, p);
        UniPoly g = uni_gcd(rest, uni_trim(std::move(hx)), p);
        if (uni_deg(g) > 0) {
            // equal-degree split of g into irreducibles of degree d
            std::vector<UniPoly> stack{g};
            while (!stack.empty()) {
                UniPoly cur = stack.back();
                stack.pop_back();
                if (uni_deg(cur) == d) {
                    out.push_back(cur);
                    continue;
                }
                // random splitter
                while (true) {
                    UniPoly r(uni_deg(cur), 0);
                    for (auto& c : r) c = static_cast<uint32_t>(rng() % p);
                    r = uni_trim(std::move(r));
                    if (r.empty()) continue;
                    UniPoly split;
                    if (p == 2) {
                        // trace map over F_{2^d}
                        UniPoly t = uni_mod(r, cur, p);
                        UniPoly acc = t;
                        for (int64_t i = 1; i < d; ++i) {
                            t = uni_mod(uni_mul(t, t, p), cur, p);
                            acc.resize(std::max(acc.size(), t.size()), 0);
                            for (size_t k = 0; k < t.size(); ++k) acc[k] = acc[k] ^ t[k];
                            acc = uni_trim(std::move(acc));
                        }
                        split = uni_gcd(cur, acc, p);
                    } else {
                        uint64_t e = 1;
                        for (int64_t i = 0; i < d; ++i) e *= p;
                        UniPoly v = uni_powmod(r, (e - 1) / 2, cur, p);
                        if (!v.empty())
                            v[0] = mod_sub(v[0], 1, p);
                        else
                            v = UniPoly{mod_sub(0, 1, p)};
                        split = uni_gcd(cur, uni_trim(std::move(v)), p);
                    }
                    int64_t ds = uni_deg(split);
                    if (ds > 0 && ds < uni_deg(cur)) {
                        stack.push_back(split);
                        stack.push_back(uni_divexact(cur, split, p));
                        break;
                    }
                }
            }
            rest = uni_divexact(rest, g, p);
            h = uni_mod(h, rest, p);
        }
    }
    if (uni_deg(rest) > 0) out.push_back(rest);
}

}  // namespace

std::vector<std::pair<UniPoly, uint32_t>> uni_factor(const UniPoly& f, uint32_t p, uint64_t seed) {
    std::vector<std::pair<UniPoly, uint32_t>> out;
    UniPoly g = uni_trim(f);
    if (uni_deg(g) <= 0) return out;
    // make monic
    uint32_t inv = mod_inv(g[uni_deg(g)], p);
    for (auto& c : g) c = mod_mul(c, inv, p);
    std::mt19937_64 rng(seed);
    for (const auto& [sq, mult] : uni_squarefree(g, p)) {
        std::vector<UniPoly> irr;
        uni_factor_squarefree(sq, p, rng, irr);
        std::sort(irr.begin(), irr.end());
        for (auto& fac : irr) out.emplace_back(fac, mult);
    }
    return out;
}

UniPoly uni_from_poly(const Poly& f, uint32_t var) {
    UniPoly r;
    for (const auto& [e, c] : f.terms()) {
        for (size_t v = 0; v < e.size(); ++v) {
            if (v == var) {
                if (e[v] < 0) throw std::invalid_argument("uni_from_poly: negative exponent");
            } else if (e[v] != 0) {
                throw std::invalid_argument("uni_from_poly: not univariate");
            }
        }
        size_t k = static_cast<size_t>(e[var]);
        if (r.size() <= k) r.resize(k + 1, 0);
        r[k] = c;
    }
    return r;
}

Poly uni_to_poly(const RingPtr& ring, uint32_t var, const UniPoly& f) {
    std::vector<Poly::Term> ts;
    for (size_t i = 0; i < f.size(); ++i) {
        if (!f[i]) continue;
        IntVec e = iv_zero(ring->nvars);
        e[var] = static_cast<int64_t>(i);
        ts.emplace_back(std::move(e), f[i]);
    }
    return Poly::from_terms(ring, std::move(ts));
}

// ---------------------------------------------------------------------------
// coprime factorization of multivariate generators

namespace {

// divide out g^k maximally; returns multiplicity
uint32_t divide_out(Poly& f, const Poly& g) {
    uint32_t m = 0;
    while (true) {
        auto q = divide_exact(f, g);
        if (!q) return m;
        f = std::move(*q);
        ++m;
    }
}

// effective single variable up to a monomial change of basis: the support
// differences span a rank-1 lattice; returns its primitive direction
std::optional<IntVec> single_direction(const Poly& f) {
    std::vector<IntVec> diffs;
    const IntVec* base = nullptr;
    for (const auto& [e, c] : f.terms()) {
        if (!base)
            base = &e;
        else
            diffs.push_back(iv_sub(e, *base));
    }
    if (diffs.empty()) return std::nullopt;  // monomial
    auto sat = saturation_basis(static_cast<uint32_t>(base->size()), diffs);
    if (sat.size() != 1) return std::nullopt;
    return sat[0];
}

}  // namespace

std::vector<CoprimeFactor> coprime_factorization(const Poly& g) {
    const RingPtr& ring = g.ring();
    if (g.is_zero()) throw std::invalid_argument("coprime_factorization of zero");
    uint32_t p = ring->p;

    // peel the monomial part; non-invertible variable powers stay as factors
    IntVec mono = g.min_exponents();
    Poly rest = g.shifted(iv_neg(mono));
    std::vector<CoprimeFactor> out;
    for (uint32_t v = 0; v < ring->nvars; ++v) {
        if (mono[v] > 0 && !ring->invertible[v])
            out.push_back(CoprimeFactor{Poly::variable(ring, v), static_cast<uint32_t>(mono[v]), true});
    }
    if (rest.is_constant()) return out;

    // gcd-free basis seeded by derivative gcds and p-th roots
    struct Work {
        Poly f;
        uint32_t mult;
    };
    std::vector<Work> queue{{rest, 1}};
    std::vector<Work> basis;
    int guard = 0;
    while (!queue.empty() && guard++ < 256) {
        Work w = queue.back();
        queue.pop_back();
        w.f = w.f.shifted(iv_neg(w.f.min_exponents()));
        if (w.f.is_constant()) continue;
        if (is_pth_power(w.f)) {
            queue.push_back(Work{pth_root(w.f), w.mult * p});
            continue;
        }
        // try to split off gcd(f, df/dx_v)
        bool split = false;
        for (uint32_t v = 0; v < ring->nvars && !split; ++v) {
            Poly d = derivative(w.f, v);
            if (d.is_zero()) continue;
            Poly c = poly_gcd(w.f, d);
            if (c.is_constant()) continue;
            Poly q = *divide_exact(w.f, c);
            if (q.is_constant()) continue;
            queue.push_back(Work{c, w.mult});
            queue.push_back(Work{q, w.mult});
            split = true;
        }
        if (split) continue;
        // refine against the existing basis
        bool merged = false;
        for (auto& b : basis) {
            Poly c = poly_gcd(w.f, b.f);
            if (c.is_constant()) continue;
            Poly wq = *divide_exact(w.f, c);
            Poly bq = *divide_exact(b.f, c);
            // replace b by its coprime pieces and re-queue everything
            std::vector<Work> requeue;
            if (!bq.is_constant()) requeue.push_back(Work{bq, b.mult});
            requeue.push_back(Work{c, b.mult + w.mult});
            if (!wq.is_constant()) requeue.push_back(Work{wq, w.mult});
            b = basis.back();
            basis.pop_back();
            for (auto& r : requeue) queue.push_back(std::move(r));
            merged = true;
            break;
        }
        if (!merged) basis.push_back(std::move(w));
    }
    if (!queue.empty()) throw std::runtime_error("coprime_factorization: refinement budget");

    // univariate-in-disguise factors split completely
    std::vector<CoprimeFactor> final_out = std::move(out);
    for (const auto& b : basis) {
        auto dir = single_direction(b.f);
        bool factored = false;
        if (dir) {
            // write f = unit * u(t), t = X^dir; exponents along the direction
            // relative to the base point
            const IntVec& base = b.f.terms()[0].first;
            bool ok = true;
            int64_t minstep = 0, maxstep = 0;
            std::vector<std::pair<int64_t, uint32_t>> steps;
            for (const auto& [e, c] : b.f.terms()) {
                IntVec diff = iv_sub(e, base);
                // diff = k * dir for integer k
                int64_t k = 0;
                bool found = false;
                for (size_t i = 0; i < diff.size(); ++i)
                    if ((*dir)[i] != 0) {
                        k = diff[i] / (*dir)[i];
                        found = true;
                        break;
                    }
                if (!found || iv_sub(diff, iv_scale(*dir, k)) != iv_zero(diff.size())) {
                    ok = false;
                    break;
                }
                steps.emplace_back(k, c);
                minstep = std::min(minstep, k);
                maxstep = std::max(maxstep, k);
            }
            if (ok) {
                UniPoly u(static_cast<size_t>(maxstep - minstep + 1), 0);
                for (auto& [k, c] : steps) u[static_cast<size_t>(k - minstep)] = c;
                auto factors = uni_factor(u, p);
                // rebuild factors as polynomials in X^dir; the t^j content is a
                // monomial handled by the caller's unit/monomial logic
                for (const auto& [fac, mult] : factors) {
                    if (uni_deg(fac) == 0) continue;
                    if (uni_deg(fac) == 1 && fac[0] == 0) {
                        // factor t: a monomial; unit if the direction is invertible
                        IntVec mexp = *dir;
                        bool unit = true;
                        for (size_t i = 0; i < mexp.size(); ++i)
                            if (mexp[i] != 0 && !ring->invertible[i]) unit = false;
                        if (!unit)
                            final_out.push_back(CoprimeFactor{
                                Poly::monomial(ring, mexp, 1), mult * b.mult, true});
                        continue;
                    }
                    std::vector<Poly::Term> ts;
                    for (size_t i = 0; i < fac.size(); ++i)
                        if (fac[i]) ts.emplace_back(iv_scale(*dir, static_cast<int64_t>(i)), fac[i]);
                    Poly fp = Poly::from_terms(ring, std::move(ts));
                    final_out.push_back(CoprimeFactor{fp, mult * b.mult, true});
                }
                factored = true;
            }
        }
        if (!factored)
            final_out.push_back(CoprimeFactor{b.f, b.mult, false});
    }
    return final_out;
}

}  // namespace lamp
