#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lamplighter/intvec.hpp"

namespace lamp {

// Solver status carried by every automaton: Exact, or verified only on a
// bounded window.
struct SolveStatus {
    enum Kind { Exact, WindowVerified } kind = Exact;
    int64_t window = 0;

    static SolveStatus exact() { return {Exact, 0}; }
    static SolveStatus window_verified(int64_t b) { return {WindowVerified, b}; }
    bool is_exact() const { return kind == Exact; }
    std::string str() const {
        return kind == Exact ? "Exact" : "WindowVerified(" + std::to_string(window) + ")";
    }
};

inline SolveStatus weakest(const SolveStatus& a, const SolveStatus& b) {
    if (a.kind == SolveStatus::Exact) return b;
    if (b.kind == SolveStatus::Exact) return a;
    return SolveStatus::window_verified(std::min(a.window, b.window));
}

// Alphabet {+,-}^d followed by digit tuples {0..p-1}^d. Sign letters occupy
// indices [0, 2^d); digit letters follow, base-p encoded.
struct DigitAlphabet {
    uint32_t p = 2, d = 1;

    uint32_t nsigns() const { return 1u << d; }
    uint32_t ndigit_letters() const {
        uint32_t n = 1;
        for (uint32_t i = 0; i < d; ++i) n *= p;
        return n;
    }
    uint32_t size() const { return nsigns() + ndigit_letters(); }
    bool is_sign(uint32_t letter) const { return letter < nsigns(); }

    uint32_t sign_letter(const std::vector<bool>& neg) const {
        uint32_t m = 0;
        for (uint32_t i = 0; i < d; ++i)
            if (neg[i]) m |= 1u << i;
        return m;
    }
    std::vector<bool> signs_of(uint32_t letter) const {
        std::vector<bool> neg(d);
        for (uint32_t i = 0; i < d; ++i) neg[i] = (letter >> i) & 1u;
        return neg;
    }
    uint32_t digit_letter(const std::vector<uint32_t>& digits) const {
        uint32_t code = 0, mul = 1;
        for (uint32_t i = 0; i < d; ++i) {
            code += digits[i] * mul;
            mul *= p;
        }
        return nsigns() + code;
    }
    std::vector<uint32_t> digits_of(uint32_t letter) const {
        uint32_t code = letter - nsigns();
        std::vector<uint32_t> digits(d);
        for (uint32_t i = 0; i < d; ++i) {
            digits[i] = code % p;
            code /= p;
        }
        return digits;
    }
    bool digit_is_zero(uint32_t letter) const { return letter == nsigns(); }
    std::string letter_str(uint32_t letter) const;
};

// Canonical encoding of z in Z^d: one sign letter (zero gets '+'), then the
// shortest LSD-first base-p digit tuples, padded with trailing zeros only up
// to the longest coordinate.
std::vector<uint32_t> encode_vec(uint32_t p, const IntVec& z);
// Inverse; rejects non-canonical words.
IntVec decode_word(uint32_t p, uint32_t d, const std::vector<uint32_t>& word);
std::string word_str(uint32_t p, uint32_t d, const std::vector<uint32_t>& word);

// Complete DFA accepting exactly the canonical encodings of a subset of Z^d.
class DigitAutomaton {
public:
    uint32_t p = 2, d = 1;
    uint32_t initial = 0;
    std::vector<uint32_t> trans;  // nstates x alphabet size, row-major
    std::vector<char> finals;
    SolveStatus status = SolveStatus::exact();

    DigitAlphabet alphabet() const { return DigitAlphabet{p, d}; }
    uint32_t nstates() const { return static_cast<uint32_t>(finals.size()); }
    uint32_t step(uint32_t s, uint32_t letter) const { return trans[s * alphabet().size() + letter]; }

    static DigitAutomaton empty_set(uint32_t p, uint32_t d);
    static DigitAutomaton full_set(uint32_t p, uint32_t d);
    static DigitAutomaton from_points(uint32_t p, uint32_t d, const std::vector<IntVec>& pts);

    bool member(const IntVec& z) const;
    bool is_empty() const;
    std::vector<IntVec> enumerate_window(int64_t bound) const;
    std::optional<IntVec> find_accepted(uint32_t max_digits = 64) const;

    DigitAutomaton minimized() const;
    bool same_language(const DigitAutomaton& o) const;

    std::string to_text() const;
    static DigitAutomaton from_text(const std::string& text);
    std::string to_dot() const;
};

DigitAutomaton intersect(const DigitAutomaton& a, const DigitAutomaton& b);
DigitAutomaton unite(const DigitAutomaton& a, const DigitAutomaton& b);
DigitAutomaton complement(const DigitAutomaton& a);

// phi given as rows (output coordinates), each of input arity. linear_image
// computes phi(S); linear_preimage computes phi^{-1}(S) where S has dimension
// = number of rows.
DigitAutomaton linear_image(const std::vector<IntVec>& phi, const DigitAutomaton& s);
DigitAutomaton linear_preimage(const std::vector<IntVec>& phi, const DigitAutomaton& s);

struct Congruence {
    IntVec coeffs;
    int64_t residue = 0;
    int64_t modulus = 1;
};

// {z : A z = b, congruences hold}. A rows have length dim; b matches rows.
DigitAutomaton from_linear_system(uint32_t p, uint32_t dim, const std::vector<IntVec>& a,
                                  const IntVec& b, const std::vector<Congruence>& congruences = {});

// Affine translate {z + shift : z in S}.
DigitAutomaton translate(const DigitAutomaton& s, const IntVec& shift);

// {p^k * e - shift : k >= 0} as a subset of Z^dim (e, shift fixed vectors).
DigitAutomaton power_scaled_point(uint32_t p, const IntVec& e, const IntVec& shift);

}  // namespace lamp
