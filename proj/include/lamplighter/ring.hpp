#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace lamp {

// Deterministic primality check by trial division; p stays small in practice.
inline bool is_prime_u32(uint32_t p) {
    if (p < 2) return false;
    for (uint64_t q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

struct Prime {
    uint32_t value;
    explicit Prime(uint32_t p) : value(p) {
        if (!is_prime_u32(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
    }
};

// Coefficient ring F_p with a tuple of variables. Each variable is either
// invertible (Laurent, exponents range over Z) or polynomial-only.
struct Ring {
    uint32_t p;
    uint32_t nvars;
    std::vector<std::string> names;
    std::vector<bool> invertible;

    Ring(Prime prime, uint32_t n) : p(prime.value), nvars(n) {
        names.reserve(n);
        for (uint32_t i = 0; i < n; ++i) names.push_back("X" + std::to_string(i + 1));
        invertible.assign(n, true);
    }

    Ring(Prime prime, std::vector<std::string> vnames, std::vector<bool> inv)
        : p(prime.value), nvars(static_cast<uint32_t>(vnames.size())),
          names(std::move(vnames)), invertible(std::move(inv)) {
        if (invertible.size() != nvars) throw std::invalid_argument("ring flag size mismatch");
    }

    bool all_invertible() const {
        for (bool b : invertible)
            if (!b) return false;
        return true;
    }

    int var_index(const std::string& name) const {
        for (uint32_t i = 0; i < nvars; ++i)
            if (names[i] == name) return static_cast<int>(i);
        return -1;
    }
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(uint32_t p, uint32_t nvars) {
    return std::make_shared<const Ring>(Prime(p), nvars);
}

inline RingPtr make_ring(uint32_t p, std::vector<std::string> names, std::vector<bool> inv) {
    return std::make_shared<const Ring>(Prime(p), std::move(names), std::move(inv));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b) return true;
    return a->p == b->p && a->nvars == b->nvars && a->invertible == b->invertible;
}

// Arithmetic mod p.
inline uint32_t mod_add(uint32_t a, uint32_t b, uint32_t p) { return (a + b) % p; }
inline uint32_t mod_sub(uint32_t a, uint32_t b, uint32_t p) { return (a + p - b % p) % p; }
inline uint32_t mod_mul(uint32_t a, uint32_t b, uint32_t p) {
    return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
}
inline uint32_t mod_pow(uint32_t a, uint64_t e, uint32_t p) {
    uint64_t r = 1, base = a % p;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<uint32_t>(r);
}
inline uint32_t mod_inv(uint32_t a, uint32_t p) { return mod_pow(a % p, p - 2, p); }

}  // namespace lamp
