#include "lamplighter/poly.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace lamp {

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
    Poly r(std::move(ring));
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return iv_cmp_lex(a.first, b.first) < 0; });
    const uint32_t p = r.ring_->p;
    for (auto& t : terms) {
        uint32_t c = t.second % p;
        if (c == 0) continue;
        if (!r.terms_.empty() && r.terms_.back().first == t.first) {
            uint32_t s = mod_add(r.terms_.back().second, c, p);
            if (s == 0)
                r.terms_.pop_back();
            else
                r.terms_.back().second = s;
        } else {
            r.terms_.emplace_back(std::move(t.first), c);
        }
    }
    return r;
}

Poly Poly::constant(RingPtr ring, uint32_t c) {
    uint32_t n = ring->nvars;
    std::vector<Term> ts;
    if (c % ring->p != 0) ts.emplace_back(iv_zero(n), c % ring->p);
    return from_terms(std::move(ring), std::move(ts));
}

Poly Poly::monomial(RingPtr ring, const IntVec& e, uint32_t c) {
    if (e.size() != ring->nvars) throw std::invalid_argument("exponent arity mismatch");
    std::vector<Term> ts;
    if (c % ring->p != 0) ts.emplace_back(e, c % ring->p);
    return from_terms(std::move(ring), std::move(ts));
}

Poly Poly::variable(RingPtr ring, uint32_t i) {
    IntVec e = iv_zero(ring->nvars);
    e.at(i) = 1;
    return monomial(std::move(ring), e, 1);
}

uint32_t Poly::coeff(const IntVec& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const IntVec& k) { return iv_cmp_lex(t.first, k) < 0; });
    if (it != terms_.end() && it->first == e) return it->second;
    return 0;
}

Poly Poly::operator+(const Poly& o) const {
    if (!same_ring(ring_, o.ring_)) throw std::invalid_argument("ring mismatch in add");
    Poly r(ring_);
    const uint32_t p = ring_->p;
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = iv_cmp_lex(terms_[i].first, o.terms_[j].first);
        if (c < 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c > 0) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            uint32_t s = mod_add(terms_[i].second, o.terms_[j].second, p);
            if (s != 0) r.terms_.emplace_back(terms_[i].first, s);
            ++i, ++j;
        }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
}

Poly Poly::operator-() const {
    Poly r(ring_);
    r.terms_ = terms_;
    const uint32_t p = ring_->p;
    for (auto& t : r.terms_) t.second = p - t.second;
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (!same_ring(ring_, o.ring_)) throw std::invalid_argument("ring mismatch in mul");
    const uint32_t p = ring_->p;
    std::map<IntVec, uint32_t> acc;
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            IntVec e = iv_add(ea, eb);
            auto [it, fresh] = acc.emplace(std::move(e), 0u);
            it->second = mod_add(it->second, mod_mul(ca, cb, p), p);
        }
    }
    Poly r(ring_);
    for (auto& [e, c] : acc)
        if (c != 0) r.terms_.emplace_back(e, c);
    return r;
}

Poly Poly::scaled(uint32_t c) const {
    const uint32_t p = ring_->p;
    c %= p;
    if (c == 0) return Poly(ring_);
    Poly r(ring_);
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.second = mod_mul(t.second, c, p);
    return r;
}

Poly Poly::shifted(const IntVec& e) const {
    Poly r(ring_);
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.first = iv_add(t.first, e);
    return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
    if (images.size() != ring_->nvars) throw std::invalid_argument("substitute arity mismatch");
    RingPtr target = images.empty() ? ring_ : images[0].ring();
    Poly acc = Poly::zero(target);
    for (const auto& [e, c] : terms_) {
        Poly t = Poly::constant(target, c);
        for (size_t i = 0; i < images.size(); ++i) {
            if (e[i] < 0) throw std::invalid_argument("substitute: negative exponent");
            for (int64_t k = 0; k < e[i]; ++k) t = t * images[i];
        }
        acc = acc + t;
    }
    return acc;
}

IntVec Poly::min_exponents() const {
    IntVec m = iv_zero(ring_->nvars);
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (first) {
            m = e;
            first = false;
        } else {
            for (size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
        }
    }
    return m;
}

IntVec Poly::max_exponents() const {
    IntVec m = iv_zero(ring_->nvars);
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (first) {
            m = e;
            first = false;
        } else {
            for (size_t i = 0; i < m.size(); ++i) m[i] = std::max(m[i], e[i]);
        }
    }
    return m;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << "+";
        first = false;
        bool any_var = !iv_is_zero(e);
        if (c != 1 || !any_var) os << c;
        bool star = (c != 1 || !any_var);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (star) os << "*";
            star = true;
            os << ring_->names[i];
            if (e[i] != 1) os << "^" << e[i];
        }
    }
    return os.str();
}

Poly frobenius_pow(const Poly& f, uint32_t k) {
    // Freshman's dream: (sum c X^e)^(p^k) = sum c X^(p^k e) over F_p.
    int64_t q = 1;
    for (uint32_t i = 0; i < k; ++i) q *= f.ring()->p;
    std::vector<Poly::Term> ts;
    ts.reserve(f.nterms());
    for (const auto& [e, c] : f.terms()) ts.emplace_back(iv_scale(e, q), c);
    return Poly::from_terms(f.ring(), std::move(ts));
}

Poly geom_sum(RingPtr ring, const IntVec& a, int64_t z) {
    if (iv_is_zero(a)) throw std::invalid_argument("geom_sum: zero direction");
    std::vector<Poly::Term> ts;
    if (z > 0) {
        for (int64_t i = 0; i < z; ++i) ts.emplace_back(iv_scale(a, i), 1u);
    } else if (z < 0) {
        uint32_t c = ring->p - 1;  // minus one
        for (int64_t i = z; i <= -1; ++i) ts.emplace_back(iv_scale(a, i), c);
    }
    return Poly::from_terms(std::move(ring), std::move(ts));
}

namespace {

struct PolyLexer {
    const std::string& s;
    size_t pos = 0;
    explicit PolyLexer(const std::string& str) : s(str) {}
    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip();
        return pos >= s.size();
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    int64_t integer() {
        skip();
        bool neg = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = (s[pos++] == '-');
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw std::invalid_argument("expected integer at position " + std::to_string(pos));
        int64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            v = v * 10 + (s[pos++] - '0');
        return neg ? -v : v;
    }
    std::string ident() {
        skip();
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' || s[pos] == '\''))
            ++pos;
        return s.substr(start, pos - start);
    }
};

}  // namespace

Poly parse_poly(const RingPtr& ring, const std::string& text) {
    PolyLexer lx(text);
    std::vector<Poly::Term> ts;
    if (lx.eof()) throw std::invalid_argument("empty polynomial");
    while (true) {
        uint32_t coeff = 1;
        IntVec e = iv_zero(ring->nvars);
        bool saw_factor = false;
        // term: [coeff] factors separated by '*'
        if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            int64_t c = lx.integer();
            coeff = static_cast<uint32_t>(((c % ring->p) + ring->p) % ring->p);
            saw_factor = true;
        }
        while (true) {
            if (lx.peek() == '*') {
                lx.eat('*');
            } else if (saw_factor) {
                break;
            }
            char c = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                int64_t v = lx.integer();
                coeff = mod_mul(coeff, static_cast<uint32_t>(((v % ring->p) + ring->p) % ring->p),
                                ring->p);
                saw_factor = true;
                continue;
            }
            if (!std::isalpha(static_cast<unsigned char>(c)))
                throw std::invalid_argument("expected variable or coefficient near position " +
                                            std::to_string(lx.pos));
            std::string name = lx.ident();
            int idx = ring->var_index(name);
            if (idx < 0) throw std::invalid_argument("unknown variable '" + name + "'");
            int64_t exp = 1;
            if (lx.eat('^')) exp = lx.integer();
            if (exp < 0 && !ring->invertible[idx])
                throw std::invalid_argument("negative exponent on non-invertible variable '" + name +
                                            "'");
            e[idx] += exp;
            saw_factor = true;
        }
        if (!saw_factor) throw std::invalid_argument("empty term");
        ts.emplace_back(std::move(e), coeff);
        if (lx.eof()) break;
        if (!lx.eat('+'))
            throw std::invalid_argument("expected '+' at position " + std::to_string(lx.pos));
    }
    return Poly::from_terms(ring, std::move(ts));
}

}  // namespace lamp
