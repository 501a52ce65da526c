#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace lamp {

// Integer vectors used for monomial exponents and Z^n lattice points.
using IntVec = std::vector<int64_t>;

inline IntVec iv_zero(size_t n) { return IntVec(n, 0); }

inline IntVec iv_add(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IntVec iv_sub(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline IntVec iv_neg(const IntVec& a) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline IntVec iv_scale(const IntVec& a, int64_t k) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
    return r;
}

inline bool iv_is_zero(const IntVec& a) {
    for (int64_t x : a)
        if (x != 0) return false;
    return true;
}

inline int64_t iv_dot(const IntVec& a, const IntVec& b) {
    int64_t s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Lexicographic compare, first index most significant.
inline int iv_cmp_lex(const IntVec& a, const IntVec& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

inline int64_t iv_linf(const IntVec& a) {
    int64_t m = 0;
    for (int64_t x : a) m = std::max(m, x < 0 ? -x : x);
    return m;
}

struct IntVecHash {
    size_t operator()(const IntVec& v) const {
        size_t h = 1469598103934665603ull;
        for (int64_t x : v) {
            h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

}  // namespace lamp
