#pragma once

#include "lamplighter/poly.hpp"

namespace lamp {

// Exact multivariate polynomial division; nullopt when not divisible.
// Accepts Laurent inputs (monomial parts are units).
std::optional<Poly> divide_exact(const Poly& f, const Poly& g);

// Multivariate gcd over F_p via content + primitive pseudo-remainder
// sequences. Inputs may be Laurent; the result is defined up to a unit and is
// returned with nonnegative exponents, monic leading coefficient.
Poly poly_gcd(const Poly& f, const Poly& g);

// Partial derivative.
Poly derivative(const Poly& f, uint32_t var);

// f = g^p? (all exponents divisible by p); root via exponent division.
bool is_pth_power(const Poly& f);
Poly pth_root(const Poly& f);

// Fraction num/den over F_p[W1..Ws], gcd-normalized, monic denominator.
class RatFun {
public:
    RatFun() = default;
    explicit RatFun(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.ring(), 1)) {}
    RatFun(Poly num, Poly den);

    static RatFun zero(const RingPtr& r) { return RatFun(Poly::zero(r)); }
    static RatFun one(const RingPtr& r) { return RatFun(Poly::constant(r, 1)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const RingPtr& ring() const { return num_.ring(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }

    RatFun operator+(const RatFun& o) const;
    RatFun operator-(const RatFun& o) const;
    RatFun operator*(const RatFun& o) const;
    RatFun operator/(const RatFun& o) const;
    RatFun operator-() const;
    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

    RatFun inverse() const;
    RatFun pow(int64_t e) const;
    RatFun frobenius() const;  // p-th power
    bool is_pth_power() const;
    RatFun pth_root() const;

    size_t hash() const { return num_.hash() * 1099511628211ull ^ den_.hash(); }
    std::string str() const;

private:
    Poly num_, den_;
    void normalize();
};

// Small dense matrix over RatFun.
struct KMat {
    uint32_t n = 0;
    std::vector<RatFun> a;  // row-major

    static KMat identity(const RingPtr& r, uint32_t n);
    static KMat zero(const RingPtr& r, uint32_t n);
    RatFun& at(uint32_t i, uint32_t j) { return a[i * n + j]; }
    const RatFun& at(uint32_t i, uint32_t j) const { return a[i * n + j]; }
    KMat operator*(const KMat& o) const;
    std::vector<RatFun> apply(const std::vector<RatFun>& v) const;
    std::optional<KMat> inverse() const;
    KMat pow_u(uint64_t e) const;
    bool operator==(const KMat& o) const { return n == o.n && a == o.a; }
    KMat frobenius() const;
    size_t hash() const {
        size_t h = n;
        for (const auto& x : a) h = h * 1099511628211ull ^ x.hash();
        return h;
    }
};

}  // namespace lamp
