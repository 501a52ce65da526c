#include "lamplighter/fraction.hpp"

#include <sstream>
#include <stdexcept>

namespace lamp {

namespace {

// strip the monomial content (unit part for gcd purposes); returns shifted poly
Poly strip_monomial(const Poly& f) {
    if (f.is_zero()) return f;
    return f.shifted(iv_neg(f.min_exponents()));
}

// leading coefficient normalization: make the grlex-leading coefficient 1
Poly make_monic(const Poly& f) {
    if (f.is_zero()) return f;
    // grlex leading term: highest total degree, then lex
    const Poly::Term* lead = nullptr;
    int64_t best_deg = -1;
    for (const auto& t : f.terms()) {
        int64_t deg = 0;
        for (int64_t e : t.first) deg += e;
        if (deg > best_deg || (deg == best_deg && iv_cmp_lex(t.first, lead->first) > 0)) {
            best_deg = deg;
            lead = &t;
        }
    }
    uint32_t inv = mod_inv(lead->second, f.ring()->p);
    return f.scaled(inv);
}

int64_t degree_in(const Poly& f, uint32_t var) {
    int64_t d = -1;
    for (const auto& [e, c] : f.terms()) d = std::max(d, e[var]);
    return d;
}

// coefficient of x^k viewed as polynomial in the other variables (exponent of
// var zeroed out)
Poly coeff_of(const Poly& f, uint32_t var, int64_t k) {
    std::vector<Poly::Term> ts;
    for (const auto& [e, c] : f.terms()) {
        if (e[var] != k) continue;
        IntVec e2 = e;
        e2[var] = 0;
        ts.emplace_back(std::move(e2), c);
    }
    return Poly::from_terms(f.ring(), std::move(ts));
}

Poly mul_var_pow(const Poly& f, uint32_t var, int64_t k) {
    IntVec e = iv_zero(f.ring()->nvars);
    e[var] = k;
    return f.shifted(e);
}

}  // namespace

std::optional<Poly> divide_exact(const Poly& f, const Poly& g) {
    if (g.is_zero()) return std::nullopt;
    if (f.is_zero()) return Poly::zero(f.ring());
    // normalize monomial parts: they are units in the Laurent ring
    IntVec fshift = f.min_exponents(), gshift = g.min_exponents();
    Poly fn = f.shifted(iv_neg(fshift));
    Poly gn = g.shifted(iv_neg(gshift));
    // leading-term elimination under grlex
    auto grlex_lead = [](const Poly& h) {
        const Poly::Term* lead = nullptr;
        int64_t best = -1;
        for (const auto& t : h.terms()) {
            int64_t deg = 0;
            for (int64_t e : t.first) deg += e;
            if (deg > best || (deg == best && iv_cmp_lex(t.first, lead->first) > 0)) {
                best = deg;
                lead = &t;
            }
        }
        return *lead;
    };
    Poly q(f.ring());
    Poly rem = fn;
    auto [lg, cg] = grlex_lead(gn);
    uint32_t cginv = mod_inv(cg, f.ring()->p);
    while (!rem.is_zero()) {
        auto [lr, cr] = grlex_lead(rem);
        IntVec diff = iv_sub(lr, lg);
        for (int64_t x : diff)
            if (x < 0) return std::nullopt;
        Poly m = Poly::monomial(f.ring(), diff, mod_mul(cr, cginv, f.ring()->p));
        q = q + m;
        rem = rem - m * gn;
    }
    return q.shifted(iv_sub(fshift, gshift));
}

Poly derivative(const Poly& f, uint32_t var) {
    std::vector<Poly::Term> ts;
    uint32_t p = f.ring()->p;
    for (const auto& [e, c] : f.terms()) {
        int64_t k = e[var];
        uint32_t factor = static_cast<uint32_t>(((k % p) + p) % p);
        if (factor == 0) continue;
        IntVec e2 = e;
        e2[var] -= 1;
        ts.emplace_back(std::move(e2), mod_mul(c, factor, p));
    }
    return Poly::from_terms(f.ring(), std::move(ts));
}

bool is_pth_power(const Poly& f) {
    uint32_t p = f.ring()->p;
    for (const auto& [e, c] : f.terms())
        for (int64_t x : e)
            if (((x % p) + p) % p != 0) return false;
    return true;
}

Poly pth_root(const Poly& f) {
    uint32_t p = f.ring()->p;
    std::vector<Poly::Term> ts;
    for (const auto& [e, c] : f.terms()) {
        IntVec e2(e.size());
        for (size_t i = 0; i < e.size(); ++i) {
            if (((e[i] % p) + p) % p != 0) throw std::invalid_argument("not a p-th power");
            e2[i] = e[i] / p;  // exact for negatives too since divisible
        }
        ts.emplace_back(std::move(e2), c);  // c^(1/p) = c in F_p
    }
    return Poly::from_terms(f.ring(), std::move(ts));
}

namespace {

Poly gcd_rec(Poly f, Poly g, int depth);

// content of f with respect to var: gcd of its coefficients
Poly content_wrt(const Poly& f, uint32_t var, int depth) {
    Poly c = Poly::zero(f.ring());
    for (int64_t k = 0; k <= degree_in(f, var); ++k) {
        Poly ck = coeff_of(f, var, k);
        if (ck.is_zero()) continue;
        c = c.is_zero() ? strip_monomial(ck) : gcd_rec(c, ck, depth + 1);
        if (c.is_constant()) break;
    }
    return c.is_zero() ? Poly::constant(f.ring(), 1) : c;
}

Poly gcd_rec(Poly f, Poly g, int depth) {
    if (depth > 24) throw std::runtime_error("poly_gcd: recursion budget exceeded");
    const RingPtr& ring = f.ring();
    if (f.is_zero()) return make_monic(strip_monomial(g));
    if (g.is_zero()) return make_monic(strip_monomial(f));
    f = strip_monomial(f);
    g = strip_monomial(g);
    if (f.is_constant() || g.is_constant()) return Poly::constant(ring, 1);
    // pick the main variable: the highest-index variable appearing in both;
    // a variable present in only one side cannot divide a primitive gcd
    int var = -1;
    for (int v = static_cast<int>(ring->nvars) - 1; v >= 0; --v) {
        if (degree_in(f, static_cast<uint32_t>(v)) > 0 && degree_in(g, static_cast<uint32_t>(v)) > 0) {
            var = v;
            break;
        }
    }
    if (var < 0) {
        // disjoint variable supports: gcd of contents only
        return Poly::constant(ring, 1);
    }
    uint32_t x = static_cast<uint32_t>(var);
    Poly cf = content_wrt(f, x, depth);
    Poly cg = content_wrt(g, x, depth);
    Poly fp = *divide_exact(f, cf);
    Poly gp = *divide_exact(g, cg);
    Poly cont = gcd_rec(cf, cg, depth + 1);

    // primitive pseudo-remainder sequence on fp, gp
    while (true) {
        int64_t df = degree_in(fp, x), dg = degree_in(gp, x);
        if (dg < 0) break;
        if (df < dg) {
            std::swap(fp, gp);
            continue;
        }
        // pseudo-remainder: eliminate the leading x-term
        Poly lf = coeff_of(fp, x, df);
        Poly lg = coeff_of(gp, x, dg);
        Poly r = fp * lg - mul_var_pow(lf * gp, x, df - dg);
        fp = gp;
        gp = r.is_zero() ? r : *divide_exact(r, content_wrt(r, x, depth + 1));
        gp = strip_monomial(gp);
        if (gp.is_zero()) break;
        if (degree_in(gp, x) <= 0 && !gp.is_zero() && !gp.is_constant()) {
            // no x left: gcd in x is trivial
            gp = Poly::zero(ring);
            fp = Poly::constant(ring, 1);
            break;
        }
        if (gp.is_constant()) {
            fp = Poly::constant(ring, 1);
            break;
        }
    }
    Poly result = cont * fp;
    return make_monic(strip_monomial(result));
}

}  // namespace

Poly poly_gcd(const Poly& f, const Poly& g) { return gcd_rec(f, g, 0); }

// ---------------------------------------------------------------------------
// RatFun

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("zero denominator");
    normalize();
}

void RatFun::normalize() {
    const RingPtr& r = num_.ring();
    if (num_.is_zero()) {
        den_ = Poly::constant(r, 1);
        return;
    }
    // clear monomial parts into the numerator (units)
    IntVec dshift = den_.min_exponents();
    den_ = den_.shifted(iv_neg(dshift));
    num_ = num_.shifted(iv_neg(dshift));
    Poly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = *divide_exact(num_, g);
        den_ = *divide_exact(den_, g);
    }
    // monic denominator
    const Poly::Term* lead = nullptr;
    int64_t best = -1;
    for (const auto& t : den_.terms()) {
        int64_t deg = 0;
        for (int64_t e : t.first) deg += e;
        if (deg > best || (deg == best && iv_cmp_lex(t.first, lead->first) > 0)) {
            best = deg;
            lead = &t;
        }
    }
    uint32_t inv = mod_inv(lead->second, r->p);
    den_ = den_.scaled(inv);
    num_ = num_.scaled(inv);
    // keep denominators free of negative exponents
    IntVec nmin = den_.min_exponents();
    bool shift_needed = false;
    for (int64_t x : nmin)
        if (x < 0) shift_needed = true;
    if (shift_needed) {
        IntVec s(nmin.size());
        for (size_t i = 0; i < nmin.size(); ++i) s[i] = nmin[i] < 0 ? -nmin[i] : 0;
        den_ = den_.shifted(s);
        num_ = num_.shifted(s);
    }
}

RatFun RatFun::operator+(const RatFun& o) const {
    return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RatFun RatFun::operator-(const RatFun& o) const {
    return RatFun(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RatFun RatFun::operator*(const RatFun& o) const { return RatFun(num_ * o.num_, den_ * o.den_); }
RatFun RatFun::operator/(const RatFun& o) const {
    if (o.is_zero()) throw std::invalid_argument("division by zero");
    return RatFun(num_ * o.den_, den_ * o.num_);
}
RatFun RatFun::operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFun RatFun::inverse() const {
    if (is_zero()) throw std::invalid_argument("inverse of zero");
    return RatFun(den_, num_);
}

RatFun RatFun::pow(int64_t e) const {
    RatFun base = e >= 0 ? *this : inverse();
    uint64_t k = static_cast<uint64_t>(e >= 0 ? e : -e);
    RatFun acc = RatFun::one(ring());
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

RatFun RatFun::frobenius() const {
    return RatFun(frobenius_pow(num_, 1), frobenius_pow(den_, 1));
}

bool RatFun::is_pth_power() const { return lamp::is_pth_power(num_) && lamp::is_pth_power(den_); }

RatFun RatFun::pth_root() const { return RatFun(lamp::pth_root(num_), lamp::pth_root(den_)); }

std::string RatFun::str() const {
    if (den_ == Poly::constant(ring(), 1)) return num_.str();
    std::ostringstream os;
    os << "(" << num_.str() << ")/(" << den_.str() << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// KMat

KMat KMat::identity(const RingPtr& r, uint32_t n) {
    KMat m;
    m.n = n;
    m.a.assign(static_cast<size_t>(n) * n, RatFun::zero(r));
    for (uint32_t i = 0; i < n; ++i) m.at(i, i) = RatFun::one(r);
    return m;
}

KMat KMat::zero(const RingPtr& r, uint32_t n) {
    KMat m;
    m.n = n;
    m.a.assign(static_cast<size_t>(n) * n, RatFun::zero(r));
    return m;
}

KMat KMat::operator*(const KMat& o) const {
    KMat r = KMat::zero(a[0].ring(), n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t k = 0; k < n; ++k) {
            if (at(i, k).is_zero()) continue;
            for (uint32_t j = 0; j < n; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
            }
        }
    return r;
}

std::vector<RatFun> KMat::apply(const std::vector<RatFun>& v) const {
    std::vector<RatFun> r(n, RatFun::zero(a[0].ring()));
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) {
            if (at(i, j).is_zero() || v[j].is_zero()) continue;
            r[i] = r[i] + at(i, j) * v[j];
        }
    return r;
}

std::optional<KMat> KMat::inverse() const {
    const RingPtr& ring = a[0].ring();
    KMat m = *this;
    KMat inv = KMat::identity(ring, n);
    for (uint32_t col = 0; col < n; ++col) {
        uint32_t piv = n;
        for (uint32_t i = col; i < n; ++i)
            if (!m.at(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv == n) return std::nullopt;
        for (uint32_t j = 0; j < n; ++j) {
            std::swap(m.a[piv * n + j], m.a[col * n + j]);
            std::swap(inv.a[piv * n + j], inv.a[col * n + j]);
        }
        RatFun d = m.at(col, col).inverse();
        for (uint32_t j = 0; j < n; ++j) {
            m.at(col, j) = m.at(col, j) * d;
            inv.at(col, j) = inv.at(col, j) * d;
        }
        for (uint32_t i = 0; i < n; ++i) {
            if (i == col || m.at(i, col).is_zero()) continue;
            RatFun f = m.at(i, col);
            for (uint32_t j = 0; j < n; ++j) {
                m.at(i, j) = m.at(i, j) - f * m.at(col, j);
                inv.at(i, j) = inv.at(i, j) - f * inv.at(col, j);
            }
        }
    }
    return inv;
}

KMat KMat::pow_u(uint64_t e) const {
    KMat acc = KMat::identity(a[0].ring(), n);
    KMat base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

KMat KMat::frobenius() const {
    KMat r = *this;
    for (auto& x : r.a) x = x.frobenius();
    return r;
}

}  // namespace lamp
