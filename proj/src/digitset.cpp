#include "lamplighter/digitset.hpp"

#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace lamp {

std::string DigitAlphabet::letter_str(uint32_t letter) const {
    std::string s = "(";
    if (is_sign(letter)) {
        auto neg = signs_of(letter);
        for (uint32_t i = 0; i < d; ++i) {
            if (i) s += ",";
            s += neg[i] ? "-" : "+";
        }
    } else {
        auto digits = digits_of(letter);
        for (uint32_t i = 0; i < d; ++i) {
            if (i) s += ",";
            s += std::to_string(digits[i]);
        }
    }
    return s + ")";
}

std::vector<uint32_t> encode_vec(uint32_t p, const IntVec& z) {
    uint32_t d = static_cast<uint32_t>(z.size());
    DigitAlphabet ab{p, d};
    std::vector<bool> neg(d);
    std::vector<std::vector<uint32_t>> digits(d);
    size_t len = 1;
    for (uint32_t i = 0; i < d; ++i) {
        neg[i] = z[i] < 0;
        uint64_t m = static_cast<uint64_t>(z[i] < 0 ? -z[i] : z[i]);
        while (m) {
            digits[i].push_back(static_cast<uint32_t>(m % p));
            m /= p;
        }
        if (digits[i].empty()) digits[i].push_back(0);
        len = std::max(len, digits[i].size());
    }
    std::vector<uint32_t> word{ab.sign_letter(neg)};
    for (size_t k = 0; k < len; ++k) {
        std::vector<uint32_t> tup(d, 0);
        for (uint32_t i = 0; i < d; ++i)
            if (k < digits[i].size()) tup[i] = digits[i][k];
        word.push_back(ab.digit_letter(tup));
    }
    return word;
}

IntVec decode_word(uint32_t p, uint32_t d, const std::vector<uint32_t>& word) {
    DigitAlphabet ab{p, d};
    if (word.size() < 2 || !ab.is_sign(word[0]))
        throw std::invalid_argument("decode: malformed word");
    for (size_t k = 1; k < word.size(); ++k)
        if (ab.is_sign(word[k])) throw std::invalid_argument("decode: sign inside word");
    if (word.size() > 2 && ab.digit_is_zero(word.back()))
        throw std::invalid_argument("decode: non-canonical padding");
    auto neg = ab.signs_of(word[0]);
    IntVec z(d, 0);
    int64_t scale = 1;
    for (size_t k = 1; k < word.size(); ++k) {
        auto digits = ab.digits_of(word[k]);
        for (uint32_t i = 0; i < d; ++i) z[i] += scale * digits[i];
        scale *= p;
    }
    for (uint32_t i = 0; i < d; ++i) {
        if (neg[i]) {
            if (z[i] == 0) throw std::invalid_argument("decode: negative zero");
            z[i] = -z[i];
        }
    }
    return z;
}

std::string word_str(uint32_t p, uint32_t d, const std::vector<uint32_t>& word) {
    DigitAlphabet ab{p, d};
    if (d == 1) {
        // compact single-track spelling, e.g. +001
        std::string s;
        for (uint32_t letter : word) {
            if (ab.is_sign(letter))
                s += ab.signs_of(letter)[0] ? "-" : "+";
            else
                s += std::to_string(ab.digits_of(letter)[0]);
        }
        return s;
    }
    std::string s;
    for (uint32_t letter : word) s += ab.letter_str(letter);
    return s;
}

// ---------------------------------------------------------------------------
// internal DFA helpers

namespace {

struct RawDfa {
    uint32_t nletters = 0;
    uint32_t initial = 0;
    std::vector<uint32_t> trans;
    std::vector<char> finals;
    uint32_t nstates() const { return static_cast<uint32_t>(finals.size()); }
    uint32_t step(uint32_t s, uint32_t a) const { return trans[s * nletters + a]; }
};

RawDfa raw_of(const DigitAutomaton& a) {
    return RawDfa{a.alphabet().size(), a.initial, a.trans, a.finals};
}

DigitAutomaton wrap(uint32_t p, uint32_t d, RawDfa r, SolveStatus st) {
    DigitAutomaton a;
    a.p = p;
    a.d = d;
    a.initial = r.initial;
    a.trans = std::move(r.trans);
    a.finals = std::move(r.finals);
    a.status = st;
    return a;
}

// Moore minimization with dead/unreachable collapse; deterministic output.
RawDfa minimize_raw(const RawDfa& in) {
    uint32_t n = in.nstates(), L = in.nletters;
    // reachable
    std::vector<int> reach(n, -1);
    std::deque<uint32_t> bfs{in.initial};
    reach[in.initial] = 0;
    while (!bfs.empty()) {
        uint32_t s = bfs.front();
        bfs.pop_front();
        for (uint32_t a = 0; a < L; ++a) {
            uint32_t t = in.step(s, a);
            if (reach[t] < 0) {
                reach[t] = 1;
                bfs.push_back(t);
            }
        }
    }
    // live: can reach a final state
    std::vector<std::vector<uint32_t>> rev(n);
    for (uint32_t s = 0; s < n; ++s)
        if (reach[s] >= 0)
            for (uint32_t a = 0; a < L; ++a) rev[in.step(s, a)].push_back(s);
    std::vector<char> live(n, 0);
    for (uint32_t s = 0; s < n; ++s)
        if (reach[s] >= 0 && in.finals[s] && !live[s]) {
            live[s] = 1;
            bfs.push_back(s);
        }
    while (!bfs.empty()) {
        uint32_t s = bfs.front();
        bfs.pop_front();
        for (uint32_t q : rev[s])
            if (!live[q]) {
                live[q] = 1;
                bfs.push_back(q);
            }
    }
    // classes: start with dead-sink (0) vs final (2) vs rest (1)
    std::vector<uint32_t> cls(n, 0);
    uint32_t nclasses = 1;
    {
        bool any_mid = false, any_fin = false;
        for (uint32_t s = 0; s < n; ++s) {
            if (reach[s] < 0 || !live[s]) {
                cls[s] = 0;
            } else if (in.finals[s]) {
                cls[s] = 2;
                any_fin = true;
            } else {
                cls[s] = 1;
                any_mid = true;
            }
        }
        nclasses = 1 + (any_mid ? 1 : 0) + (any_fin ? 1 : 0);
        if (!any_mid) {
            for (uint32_t s = 0; s < n; ++s)
                if (cls[s] == 2) cls[s] = 1;
        }
    }
    while (true) {
        std::map<std::vector<uint32_t>, uint32_t> sig_to_class;
        std::vector<uint32_t> next(n, 0);
        for (uint32_t s = 0; s < n; ++s) {
            std::vector<uint32_t> sig;
            sig.reserve(L + 1);
            sig.push_back(cls[s]);
            if (reach[s] >= 0 && live[s])
                for (uint32_t a = 0; a < L; ++a) sig.push_back(cls[in.step(s, a)]);
            auto [it, fresh] = sig_to_class.emplace(std::move(sig), static_cast<uint32_t>(sig_to_class.size()));
            next[s] = it->second;
        }
        uint32_t m = static_cast<uint32_t>(sig_to_class.size());
        if (m == nclasses) {
            cls = std::move(next);
            break;
        }
        nclasses = m;
        cls = std::move(next);
    }
    // canonical BFS renumber from the initial class
    std::vector<uint32_t> class_rep(nclasses, UINT32_MAX);
    for (uint32_t s = 0; s < n; ++s)
        if (class_rep[cls[s]] == UINT32_MAX) class_rep[cls[s]] = s;
    std::vector<int64_t> renum(nclasses, -1);
    std::vector<uint32_t> order;
    std::deque<uint32_t> q{cls[in.initial]};
    renum[cls[in.initial]] = 0;
    order.push_back(cls[in.initial]);
    while (!q.empty()) {
        uint32_t c = q.front();
        q.pop_front();
        uint32_t rep = class_rep[c];
        bool dead = (reach[rep] < 0 || !live[rep]);
        for (uint32_t a = 0; a < L; ++a) {
            uint32_t tc = dead ? c : cls[in.step(rep, a)];
            if (renum[tc] < 0) {
                renum[tc] = static_cast<int64_t>(order.size());
                order.push_back(tc);
                q.push_back(tc);
            }
        }
    }
    RawDfa out;
    out.nletters = L;
    out.initial = 0;
    uint32_t m = static_cast<uint32_t>(order.size());
    out.trans.assign(static_cast<size_t>(m) * L, 0);
    out.finals.assign(m, 0);
    for (uint32_t i = 0; i < m; ++i) {
        uint32_t c = order[i];
        uint32_t rep = class_rep[c];
        bool dead = (reach[rep] < 0 || !live[rep]);
        out.finals[i] = dead ? 0 : in.finals[rep];
        for (uint32_t a = 0; a < L; ++a) {
            uint32_t tc = dead ? c : cls[in.step(rep, a)];
            out.trans[static_cast<size_t>(i) * L + a] = static_cast<uint32_t>(renum[tc]);
        }
    }
    return out;
}

RawDfa product_raw(const RawDfa& a, const RawDfa& b, bool(*combine)(bool, bool)) {
    uint32_t L = a.nletters;
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> idx;
    std::vector<std::pair<uint32_t, uint32_t>> states;
    auto get = [&](uint32_t x, uint32_t y) {
        auto [it, fresh] = idx.emplace(std::make_pair(x, y), static_cast<uint32_t>(states.size()));
        if (fresh) states.emplace_back(x, y);
        return it->second;
    };
    RawDfa out;
    out.nletters = L;
    out.initial = get(a.initial, b.initial);
    for (uint32_t s = 0; s < states.size(); ++s) {
        auto [x, y] = states[s];
        out.finals.push_back(combine(a.finals[x], b.finals[y]) ? 1 : 0);
        for (uint32_t letter = 0; letter < L; ++letter) {
            uint32_t t = get(a.step(x, letter), b.step(y, letter));
            out.trans.push_back(t);
        }
    }
    return out;
}

// Recognizer of all canonical encodings of Z^d (strict: no padding).
RawDfa canonical_universe(uint32_t p, uint32_t d) {
    DigitAlphabet ab{p, d};
    uint32_t L = ab.size();
    // state: 0 = presign, 1 = sink; else encoded (pending_mask, lenclass, lastzero)
    // lenclass: 0 no digits, 1 one digit, 2 two or more
    auto code = [&](uint32_t pending, uint32_t lenclass, bool lastzero) {
        return 2 + (pending * 3 + lenclass) * 2 + (lastzero ? 1 : 0);
    };
    uint32_t n = 2 + (1u << d) * 3 * 2;
    RawDfa out;
    out.nletters = L;
    out.initial = 0;
    out.trans.assign(static_cast<size_t>(n) * L, 1);
    out.finals.assign(n, 0);
    auto set = [&](uint32_t s, uint32_t a, uint32_t t) { out.trans[s * L + a] = t; };
    for (uint32_t a = 0; a < ab.nsigns(); ++a) set(0, a, code(a, 0, false));
    for (uint32_t pending = 0; pending < (1u << d); ++pending) {
        for (uint32_t lenclass = 0; lenclass < 3; ++lenclass) {
            for (int lz = 0; lz < 2; ++lz) {
                uint32_t s = code(pending, lenclass, lz);
                if (lenclass >= 1 && pending == 0 && (lenclass == 1 || !lz)) out.finals[s] = 1;
                for (uint32_t a = ab.nsigns(); a < L; ++a) {
                    auto digits = ab.digits_of(a);
                    uint32_t np = pending;
                    bool allzero = true;
                    for (uint32_t i = 0; i < d; ++i)
                        if (digits[i] != 0) {
                            np &= ~(1u << i);
                            allzero = false;
                        }
                    uint32_t nl = lenclass >= 1 ? 2 : 1;
                    set(s, a, code(np, nl, allzero));
                }
            }
        }
    }
    return out;
}

DigitAutomaton scrub(uint32_t p, uint32_t d, const RawDfa& r, SolveStatus st) {
    static std::map<std::pair<uint32_t, uint32_t>, RawDfa> cache;
    auto key = std::make_pair(p, d);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, canonical_universe(p, d)).first;
    RawDfa prod = product_raw(r, it->second, [](bool x, bool y) { return x && y; });
    return wrap(p, d, minimize_raw(prod), st);
}

// Pad closure: accepts u . (zero digit)^j whenever u accepted.
RawDfa pad_close(const RawDfa& in, uint32_t zero_letter) {
    RawDfa out;
    out.nletters = in.nletters;
    // state = 2*s + flag
    out.initial = 2 * in.initial + (in.finals[in.initial] ? 1 : 0);
    uint32_t n = in.nstates();
    out.trans.assign(static_cast<size_t>(2) * n * in.nletters, 0);
    out.finals.assign(2 * n, 0);
    for (uint32_t s = 0; s < n; ++s) {
        for (int flag = 0; flag < 2; ++flag) {
            uint32_t id = 2 * s + flag;
            out.finals[id] = in.finals[s] || flag;
            for (uint32_t a = 0; a < in.nletters; ++a) {
                uint32_t t = in.step(s, a);
                bool nf = (a == zero_letter) && (flag || in.finals[s]);
                out.trans[static_cast<size_t>(id) * in.nletters + a] = 2 * t + (nf ? 1 : 0);
            }
        }
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// DigitAutomaton basics

DigitAutomaton DigitAutomaton::empty_set(uint32_t p, uint32_t d) {
    DigitAutomaton a;
    a.p = p;
    a.d = d;
    a.initial = 0;
    a.trans.assign(a.alphabet().size(), 0);
    a.finals.assign(1, 0);
    return a;
}

DigitAutomaton DigitAutomaton::full_set(uint32_t p, uint32_t d) {
    RawDfa all;
    all.nletters = DigitAlphabet{p, d}.size();
    all.initial = 0;
    all.trans.assign(all.nletters, 0);
    all.finals.assign(1, 1);
    return scrub(p, d, all, SolveStatus::exact());
}

DigitAutomaton DigitAutomaton::from_points(uint32_t p, uint32_t d, const std::vector<IntVec>& pts) {
    // trie over the canonical encodings
    DigitAlphabet ab{p, d};
    uint32_t L = ab.size();
    std::vector<std::map<uint32_t, uint32_t>> next(1);
    std::vector<char> fin(1, 0);
    for (const auto& z : pts) {
        auto w = encode_vec(p, z);
        uint32_t s = 0;
        for (uint32_t letter : w) {
            auto it = next[s].find(letter);
            if (it == next[s].end()) {
                next[s][letter] = static_cast<uint32_t>(next.size());
                s = static_cast<uint32_t>(next.size());
                next.emplace_back();
                fin.push_back(0);
            } else {
                s = it->second;
            }
        }
        fin[s] = 1;
    }
    RawDfa r;
    r.nletters = L;
    r.initial = 0;
    uint32_t n = static_cast<uint32_t>(next.size());
    uint32_t sink = n;
    r.trans.assign(static_cast<size_t>(n + 1) * L, sink);
    r.finals.assign(n + 1, 0);
    for (uint32_t s = 0; s < n; ++s) {
        r.finals[s] = fin[s];
        for (const auto& [a, t] : next[s]) r.trans[static_cast<size_t>(s) * L + a] = t;
    }
    return scrub(p, d, r, SolveStatus::exact());
}

bool DigitAutomaton::member(const IntVec& z) const {
    if (z.size() != d) throw std::invalid_argument("member: dimension mismatch");
    uint32_t s = initial;
    for (uint32_t letter : encode_vec(p, z)) s = step(s, letter);
    return finals[s];
}

bool DigitAutomaton::is_empty() const {
    std::vector<char> seen(nstates(), 0);
    std::deque<uint32_t> q{initial};
    seen[initial] = 1;
    while (!q.empty()) {
        uint32_t s = q.front();
        q.pop_front();
        if (finals[s]) return false;
        for (uint32_t a = 0; a < alphabet().size(); ++a) {
            uint32_t t = step(s, a);
            if (!seen[t]) {
                seen[t] = 1;
                q.push_back(t);
            }
        }
    }
    return true;
}

std::vector<IntVec> DigitAutomaton::enumerate_window(int64_t bound) const {
    DigitAlphabet ab = alphabet();
    uint32_t maxlen = 1;
    {
        int64_t v = bound;
        uint32_t len = 0;
        while (v > 0) {
            v /= p;
            ++len;
        }
        maxlen = std::max(1u, len);
    }
    // live states
    std::vector<char> live(nstates(), 0);
    {
        std::vector<std::vector<uint32_t>> rev(nstates());
        for (uint32_t s = 0; s < nstates(); ++s)
            for (uint32_t a = 0; a < ab.size(); ++a) rev[step(s, a)].push_back(s);
        std::deque<uint32_t> q;
        for (uint32_t s = 0; s < nstates(); ++s)
            if (finals[s]) {
                live[s] = 1;
                q.push_back(s);
            }
        while (!q.empty()) {
            uint32_t s = q.front();
            q.pop_front();
            for (uint32_t t : rev[s])
                if (!live[t]) {
                    live[t] = 1;
                    q.push_back(t);
                }
        }
    }
    std::vector<IntVec> out;
    // DFS over sign letter then digit letters
    struct Node {
        uint32_t state;
        uint32_t depth;
        IntVec value;
        int64_t scale;
    };
    for (uint32_t sl = 0; sl < ab.nsigns(); ++sl) {
        uint32_t s1 = step(initial, sl);
        if (!live[s1]) continue;
        auto neg = ab.signs_of(sl);
        std::vector<Node> stack{{s1, 0, IntVec(d, 0), 1}};
        while (!stack.empty()) {
            Node nd = stack.back();
            stack.pop_back();
            if (nd.depth >= 1 && finals[nd.state]) {
                IntVec z = nd.value;
                bool inwin = true;
                for (uint32_t i = 0; i < d; ++i) {
                    if (neg[i]) z[i] = -z[i];
                    if (z[i] < -bound || z[i] > bound) inwin = false;
                }
                if (inwin) out.push_back(std::move(z));
            }
            if (nd.depth >= maxlen) continue;
            for (uint32_t a = ab.nsigns(); a < ab.size(); ++a) {
                uint32_t t = step(nd.state, a);
                if (!live[t]) continue;
                auto digits = ab.digits_of(a);
                Node ch{t, nd.depth + 1, nd.value, nd.scale * p};
                bool over = false;
                for (uint32_t i = 0; i < d; ++i) {
                    ch.value[i] += nd.scale * digits[i];
                    if (ch.value[i] > bound) over = true;
                }
                if (!over) stack.push_back(std::move(ch));
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<IntVec> DigitAutomaton::find_accepted(uint32_t max_digits) const {
    // BFS for the shortest accepted word
    struct Item {
        uint32_t state;
        std::vector<uint32_t> word;
    };
    std::set<uint32_t> seen{initial};
    std::deque<Item> q{{initial, {}}};
    DigitAlphabet ab = alphabet();
    while (!q.empty()) {
        Item it = q.front();
        q.pop_front();
        if (finals[it.state] && it.word.size() >= 2) return decode_word(p, d, it.word);
        if (it.word.size() > max_digits) continue;
        for (uint32_t a = 0; a < ab.size(); ++a) {
            if (it.word.empty() != ab.is_sign(a)) continue;
            uint32_t t = step(it.state, a);
            if (seen.count(t)) continue;
            seen.insert(t);
            Item ch{t, it.word};
            ch.word.push_back(a);
            q.push_back(std::move(ch));
        }
    }
    return std::nullopt;
}

DigitAutomaton DigitAutomaton::minimized() const {
    return wrap(p, d, minimize_raw(raw_of(*this)), status);
}

bool DigitAutomaton::same_language(const DigitAutomaton& o) const {
    if (p != o.p || d != o.d) return false;
    RawDfa prod = product_raw(raw_of(*this), raw_of(o), [](bool x, bool y) { return x != y; });
    std::vector<char> seen(prod.nstates(), 0);
    std::deque<uint32_t> q{prod.initial};
    seen[prod.initial] = 1;
    while (!q.empty()) {
        uint32_t s = q.front();
        q.pop_front();
        if (prod.finals[s]) return false;
        for (uint32_t a = 0; a < prod.nletters; ++a) {
            uint32_t t = prod.step(s, a);
            if (!seen[t]) {
                seen[t] = 1;
                q.push_back(t);
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// boolean operations

DigitAutomaton intersect(const DigitAutomaton& a, const DigitAutomaton& b) {
    if (a.p != b.p || a.d != b.d) throw std::invalid_argument("automata (p,d) mismatch");
    RawDfa prod = product_raw(raw_of(a), raw_of(b), [](bool x, bool y) { return x && y; });
    return wrap(a.p, a.d, minimize_raw(prod), weakest(a.status, b.status));
}

DigitAutomaton unite(const DigitAutomaton& a, const DigitAutomaton& b) {
    if (a.p != b.p || a.d != b.d) throw std::invalid_argument("automata (p,d) mismatch");
    RawDfa prod = product_raw(raw_of(a), raw_of(b), [](bool x, bool y) { return x || y; });
    return wrap(a.p, a.d, minimize_raw(prod), weakest(a.status, b.status));
}

DigitAutomaton complement(const DigitAutomaton& a) {
    RawDfa r = raw_of(a);
    for (auto& f : r.finals) f = f ? 0 : 1;
    return scrub(a.p, a.d, r, a.status);
}

// ---------------------------------------------------------------------------
// linear machinery

namespace {

int64_t p_floor_div(int64_t t, int64_t p, int64_t& digit) {
    digit = ((t % p) + p) % p;
    return (t - digit) / p;
}

// Affine preimage {x in Z^n : phi(x) + offset in S}; phi rows have length n.
DigitAutomaton preimage_affine(const std::vector<IntVec>& phi, const IntVec& offset,
                               const DigitAutomaton& sset) {
    uint32_t r = static_cast<uint32_t>(phi.size());
    if (r != sset.d) throw std::invalid_argument("preimage: row count mismatch");
    uint32_t n = r ? static_cast<uint32_t>(phi[0].size()) : 0;
    uint32_t p = sset.p;
    DigitAlphabet in_ab{p, n};
    DigitAlphabet out_ab{p, r};
    RawDfa spad = pad_close(raw_of(sset), out_ab.digit_letter(std::vector<uint32_t>(r, 0)));

    struct Branch {
        uint32_t sstate;
        uint32_t rho;
        IntVec carry;
        auto key() const { return std::tie(sstate, rho, carry); }
        bool operator<(const Branch& o) const { return key() < o.key(); }
        bool operator==(const Branch& o) const { return sstate == o.sstate && rho == o.rho && carry == o.carry; }
    };
    using Subset = std::vector<Branch>;

    auto flush_ok = [&](Branch br) -> bool {
        while (true) {
            bool all01 = true, allzero = true;
            for (int64_t c : br.carry) {
                if (c != 0) allzero = false;
                if (c != 0 && c != -1) all01 = false;
            }
            if (allzero) return spad.finals[br.sstate];
            if (all01) return false;  // -1 components never drain
            std::vector<uint32_t> od(r);
            for (uint32_t i = 0; i < r; ++i) {
                int64_t digit;
                br.carry[i] = p_floor_div(br.carry[i], p, digit);
                od[i] = static_cast<uint32_t>(digit);
            }
            br.sstate = spad.step(br.sstate, out_ab.digit_letter(od));
        }
    };

    struct DState {
        uint32_t phase;  // 0 presign, 1 digits, 2 sink
        uint32_t tau = 0;
        Subset sub;
        auto key() const { return std::tie(phase, tau, sub); }
        bool operator<(const DState& o) const { return key() < o.key(); }
    };
    std::map<DState, uint32_t> idx;
    std::vector<const DState*> states;
    auto get = [&](DState st) {
        std::sort(st.sub.begin(), st.sub.end());
        st.sub.erase(std::unique(st.sub.begin(), st.sub.end()), st.sub.end());
        auto [it, fresh] = idx.emplace(std::move(st), static_cast<uint32_t>(idx.size()));
        if (fresh) states.push_back(&it->first);
        return it->second;
    };

    RawDfa out;
    out.nletters = in_ab.size();
    out.initial = get(DState{0, 0, {}});
    uint32_t sink = get(DState{2, 0, {}});
    for (uint32_t s = 0; s < states.size(); ++s) {
        DState cur = *states[s];  // copy: `states` may reallocate while we append
        bool fin = false;
        if (cur.phase == 1)
            for (const auto& br : cur.sub)
                if (flush_ok(br)) {
                    fin = true;
                    break;
                }
        out.finals.push_back(fin ? 1 : 0);
        for (uint32_t a = 0; a < in_ab.size(); ++a) {
            uint32_t target = sink;
            if (cur.phase == 0 && in_ab.is_sign(a)) {
                DState nxt{1, a, {}};
                auto taus = in_ab.signs_of(a);
                for (uint32_t rho = 0; rho < out_ab.nsigns(); ++rho) {
                    auto rs = out_ab.signs_of(rho);
                    Branch br;
                    br.rho = rho;
                    br.sstate = spad.step(spad.initial, rho);
                    br.carry.assign(r, 0);
                    for (uint32_t i = 0; i < r; ++i)
                        br.carry[i] = (rs[i] ? -1 : 1) * offset[i];
                    nxt.sub.push_back(std::move(br));
                }
                target = get(std::move(nxt));
            } else if (cur.phase == 1 && !in_ab.is_sign(a)) {
                auto digits = in_ab.digits_of(a);
                auto taus = in_ab.signs_of(cur.tau);
                DState nxt{1, cur.tau, {}};
                for (const auto& br : cur.sub) {
                    auto rs = out_ab.signs_of(br.rho);
                    Branch nb;
                    nb.rho = br.rho;
                    nb.carry.assign(r, 0);
                    std::vector<uint32_t> od(r);
                    for (uint32_t i = 0; i < r; ++i) {
                        int64_t t = br.carry[i];
                        for (uint32_t j = 0; j < n; ++j) {
                            int64_t coef = phi[i][j] * (rs[i] ? -1 : 1) * (taus[j] ? -1 : 1);
                            t += coef * static_cast<int64_t>(digits[j]);
                        }
                        int64_t digit;
                        nb.carry[i] = p_floor_div(t, p, digit);
                        od[i] = static_cast<uint32_t>(digit);
                    }
                    nb.sstate = spad.step(br.sstate, out_ab.digit_letter(od));
                    nxt.sub.push_back(std::move(nb));
                }
                target = get(std::move(nxt));
            }
            out.trans.push_back(target);
        }
    }
    return scrub(p, n, out, sset.status);
}

}  // namespace

DigitAutomaton linear_preimage(const std::vector<IntVec>& phi, const DigitAutomaton& s) {
    IntVec offset(phi.size(), 0);
    return preimage_affine(phi, offset, s);
}

DigitAutomaton translate(const DigitAutomaton& s, const IntVec& shift) {
    std::vector<IntVec> id(s.d, IntVec(s.d, 0));
    for (uint32_t i = 0; i < s.d; ++i) id[i][i] = 1;
    return preimage_affine(id, iv_neg(shift), s);
}

DigitAutomaton from_linear_system(uint32_t p, uint32_t dim, const std::vector<IntVec>& a,
                                  const IntVec& b, const std::vector<Congruence>& congruences) {
    DigitAlphabet ab{p, dim};
    size_t rows = a.size();
    for (const auto& row : a)
        if (row.size() != dim) throw std::invalid_argument("from_linear_system: row arity");
    size_t nc = congruences.size();

    struct St {
        uint32_t phase;  // 0 presign, 1 digits, 2 sink
        uint32_t tau = 0;
        IntVec rem;      // remaining targets per row
        IntVec acc;      // accumulated residues per congruence
        IntVec pk;       // p^k mod q per congruence
        auto key() const { return std::tie(phase, tau, rem, acc, pk); }
        bool operator<(const St& o) const { return key() < o.key(); }
    };
    std::map<St, uint32_t> idx;
    std::vector<const St*> states;
    auto get = [&](St st) {
        auto [it, fresh] = idx.emplace(std::move(st), static_cast<uint32_t>(idx.size()));
        if (fresh) states.push_back(&it->first);
        return it->second;
    };

    RawDfa out;
    out.nletters = ab.size();
    out.initial = get(St{0, 0, {}, {}, {}});
    uint32_t sink = get(St{2, 0, {}, {}, {}});
    for (uint32_t s = 0; s < states.size(); ++s) {
        St cur = *states[s];
        bool fin = false;
        if (cur.phase == 1) {
            fin = iv_is_zero(cur.rem);
            for (size_t c = 0; c < nc && fin; ++c) {
                int64_t q = congruences[c].modulus;
                if (((cur.acc[c] - congruences[c].residue) % q + q) % q != 0) fin = false;
            }
        }
        out.finals.push_back(fin ? 1 : 0);
        for (uint32_t letter = 0; letter < ab.size(); ++letter) {
            uint32_t target = sink;
            if (cur.phase == 0 && ab.is_sign(letter)) {
                St nxt{1, letter, IntVec(rows), IntVec(nc), IntVec(nc)};
                nxt.rem.assign(b.begin(), b.end());
                for (size_t c = 0; c < nc; ++c) {
                    nxt.acc[c] = 0;
                    nxt.pk[c] = 1 % congruences[c].modulus;
                }
                target = get(std::move(nxt));
            } else if (cur.phase == 1 && !ab.is_sign(letter)) {
                auto digits = ab.digits_of(letter);
                auto taus = ab.signs_of(cur.tau);
                St nxt{1, cur.tau, IntVec(rows), IntVec(nc), IntVec(nc)};
                bool ok = true;
                for (size_t i = 0; i < rows && ok; ++i) {
                    int64_t t = 0;
                    for (uint32_t j = 0; j < dim; ++j)
                        t += a[i][j] * (taus[j] ? -1 : 1) * static_cast<int64_t>(digits[j]);
                    int64_t diff = cur.rem[i] - t;
                    if (((diff % p) + p) % p != 0) ok = false;
                    else nxt.rem[i] = diff / static_cast<int64_t>(p);
                }
                for (size_t c = 0; c < nc && ok; ++c) {
                    int64_t q = congruences[c].modulus;
                    int64_t contrib = 0;
                    for (uint32_t j = 0; j < dim; ++j)
                        contrib += congruences[c].coeffs[j] * (taus[j] ? -1 : 1) *
                                   static_cast<int64_t>(digits[j]);
                    nxt.acc[c] = ((cur.acc[c] + cur.pk[c] * contrib) % q + q) % q;
                    nxt.pk[c] = (cur.pk[c] * p) % q;
                }
                if (ok) target = get(std::move(nxt));
            }
            out.trans.push_back(target);
        }
    }
    return scrub(p, dim, out, SolveStatus::exact());
}

DigitAutomaton linear_image(const std::vector<IntVec>& phi, const DigitAutomaton& sset) {
    uint32_t r = static_cast<uint32_t>(phi.size());  // output dim
    uint32_t n = sset.d;                             // input dim
    for (const auto& row : phi)
        if (row.size() != n) throw std::invalid_argument("image: row arity mismatch");
    uint32_t p = sset.p;
    DigitAlphabet in_ab{p, n};
    DigitAlphabet out_ab{p, r};
    RawDfa spad = pad_close(raw_of(sset), in_ab.digit_letter(std::vector<uint32_t>(n, 0)));

    struct Branch {
        uint32_t sstate;
        uint32_t tau;
        IntVec carry;
        auto key() const { return std::tie(sstate, tau, carry); }
        bool operator<(const Branch& o) const { return key() < o.key(); }
        bool operator==(const Branch& o) const { return sstate == o.sstate && tau == o.tau && carry == o.carry; }
    };
    using Subset = std::vector<Branch>;

    // acceptance: can we extend with input digits while all remaining output
    // digits are zero, draining carries and landing on an accepting S state?
    // bounded search: carries contract, so the zero-output graph is finite
    auto can_finish = [&](const Branch& br, uint32_t rho) -> bool {
        // iterative worklist over the reachable zero-output graph
        std::set<Branch> visited;
        std::deque<Branch> work{br};
        visited.insert(br);
        auto rs = out_ab.signs_of(rho);
        while (!work.empty()) {
            Branch cur = work.front();
            work.pop_front();
            if (iv_is_zero(cur.carry) && spad.finals[cur.sstate]) return true;
            auto taus = in_ab.signs_of(cur.tau);
            for (uint32_t dl = 0; dl < in_ab.ndigit_letters(); ++dl) {
                auto digits = in_ab.digits_of(in_ab.nsigns() + dl);
                Branch nb;
                nb.tau = cur.tau;
                nb.carry.assign(r, 0);
                bool ok = true;
                for (uint32_t i = 0; i < r && ok; ++i) {
                    int64_t t = cur.carry[i];
                    for (uint32_t j = 0; j < n; ++j)
                        t += phi[i][j] * (rs[i] ? -1 : 1) * (taus[j] ? -1 : 1) *
                             static_cast<int64_t>(digits[j]);
                    if (((t % p) + p) % p != 0) ok = false;
                    else nb.carry[i] = t / static_cast<int64_t>(p);
                }
                if (!ok) continue;
                // carry growth guard: stay within a sane ball
                bool sane = true;
                for (int64_t c : nb.carry)
                    if (c > int64_t(1) << 20 || c < -(int64_t(1) << 20)) sane = false;
                if (!sane) continue;
                nb.sstate = spad.step(cur.sstate, in_ab.nsigns() + dl);
                if (visited.insert(nb).second) work.push_back(nb);
            }
        }
        return false;
    };

    struct DState {
        uint32_t phase;  // 0 presign, 1 digits, 2 sink
        uint32_t rho = 0;
        Subset sub;
        auto key() const { return std::tie(phase, rho, sub); }
        bool operator<(const DState& o) const { return key() < o.key(); }
    };
    std::map<DState, uint32_t> idx;
    std::vector<const DState*> states;
    auto get = [&](DState st) {
        std::sort(st.sub.begin(), st.sub.end());
        st.sub.erase(std::unique(st.sub.begin(), st.sub.end()), st.sub.end());
        auto [it, fresh] = idx.emplace(std::move(st), static_cast<uint32_t>(idx.size()));
        if (fresh) states.push_back(&it->first);
        return it->second;
    };

    RawDfa out;
    out.nletters = out_ab.size();
    out.initial = get(DState{0, 0, {}});
    uint32_t sink = get(DState{2, 0, {}});
    for (uint32_t s = 0; s < states.size(); ++s) {
        DState cur = *states[s];
        bool fin = false;
        if (cur.phase == 1)
            for (const auto& br : cur.sub)
                if (can_finish(br, cur.rho)) {
                    fin = true;
                    break;
                }
        out.finals.push_back(fin ? 1 : 0);
        for (uint32_t letter = 0; letter < out_ab.size(); ++letter) {
            uint32_t target = sink;
            if (cur.phase == 0 && out_ab.is_sign(letter)) {
                DState nxt{1, letter, {}};
                for (uint32_t tau = 0; tau < in_ab.nsigns(); ++tau) {
                    Branch br;
                    br.tau = tau;
                    br.sstate = spad.step(spad.initial, tau);
                    br.carry.assign(r, 0);
                    nxt.sub.push_back(std::move(br));
                }
                target = get(std::move(nxt));
            } else if (cur.phase == 1 && !out_ab.is_sign(letter)) {
                auto odigits = out_ab.digits_of(letter);
                auto rs = out_ab.signs_of(cur.rho);
                DState nxt{1, cur.rho, {}};
                for (const auto& br : cur.sub) {
                    auto taus = in_ab.signs_of(br.tau);
                    for (uint32_t dl = 0; dl < in_ab.ndigit_letters(); ++dl) {
                        auto digits = in_ab.digits_of(in_ab.nsigns() + dl);
                        Branch nb;
                        nb.tau = br.tau;
                        nb.carry.assign(r, 0);
                        bool ok = true;
                        for (uint32_t i = 0; i < r && ok; ++i) {
                            int64_t t = br.carry[i];
                            for (uint32_t j = 0; j < n; ++j)
                                t += phi[i][j] * (rs[i] ? -1 : 1) * (taus[j] ? -1 : 1) *
                                     static_cast<int64_t>(digits[j]);
                            t -= static_cast<int64_t>(odigits[i]);
                            if (((t % p) + p) % p != 0) ok = false;
                            else nb.carry[i] = t / static_cast<int64_t>(p);
                        }
                        if (!ok) continue;
                        nb.sstate = spad.step(br.sstate, in_ab.nsigns() + dl);
                        nxt.sub.push_back(std::move(nb));
                    }
                }
                if (!nxt.sub.empty()) target = get(std::move(nxt));
            }
            out.trans.push_back(target);
        }
    }
    return scrub(p, r, out, sset.status);
}

DigitAutomaton power_scaled_point(uint32_t p, const IntVec& e, const IntVec& shift) {
    uint32_t dim = static_cast<uint32_t>(e.size());
    if (iv_is_zero(e)) {
        IntVec pt = iv_neg(shift);
        return DigitAutomaton::from_points(p, dim, {pt});
    }
    DigitAlphabet ab{p, dim};
    // NFA for {p^k * e}: loop on the zero digit, then spell |e|'s digits.
    std::vector<bool> neg(dim);
    IntVec mag(dim);
    for (uint32_t i = 0; i < dim; ++i) {
        neg[i] = e[i] < 0;
        mag[i] = e[i] < 0 ? -e[i] : e[i];
    }
    auto eword = encode_vec(p, mag);  // "+" sign then digits of |e|
    uint32_t sign = ab.sign_letter(neg);
    size_t L = eword.size() - 1;

    // determinized subset over positions {loop} U {1..L}
    struct Key {
        uint32_t phase;
        std::vector<uint32_t> pos;  // 0 = loop, i = consumed i digit letters of e
        auto key() const { return std::tie(phase, pos); }
        bool operator<(const Key& o) const { return key() < o.key(); }
    };
    std::map<Key, uint32_t> idx;
    std::vector<const Key*> states;
    auto get = [&](Key k) {
        std::sort(k.pos.begin(), k.pos.end());
        k.pos.erase(std::unique(k.pos.begin(), k.pos.end()), k.pos.end());
        auto [it, fresh] = idx.emplace(std::move(k), static_cast<uint32_t>(idx.size()));
        if (fresh) states.push_back(&it->first);
        return it->second;
    };
    RawDfa out;
    out.nletters = ab.size();
    out.initial = get(Key{0, {}});
    uint32_t sink = get(Key{2, {}});
    uint32_t zero_letter = ab.digit_letter(std::vector<uint32_t>(dim, 0));
    for (uint32_t s = 0; s < states.size(); ++s) {
        Key cur = *states[s];
        bool fin = false;
        for (uint32_t pos : cur.pos)
            if (cur.phase == 1 && pos == L) fin = true;
        out.finals.push_back(fin ? 1 : 0);
        for (uint32_t letter = 0; letter < ab.size(); ++letter) {
            uint32_t target = sink;
            if (cur.phase == 0 && letter == sign) {
                target = get(Key{1, {0}});
            } else if (cur.phase == 1 && !ab.is_sign(letter)) {
                Key nxt{1, {}};
                for (uint32_t pos : cur.pos) {
                    if (pos == 0) {
                        if (letter == zero_letter) nxt.pos.push_back(0);
                        if (letter == eword[1]) nxt.pos.push_back(1);
                    } else if (pos < L) {
                        if (letter == eword[pos + 1]) nxt.pos.push_back(pos + 1);
                    } else {
                        if (letter == zero_letter) nxt.pos.push_back(pos);  // padding
                    }
                }
                if (!nxt.pos.empty()) target = get(std::move(nxt));
            }
            out.trans.push_back(target);
        }
    }
    DigitAutomaton powers = scrub(p, dim, out, SolveStatus::exact());
    if (iv_is_zero(shift)) return powers;
    return translate(powers, iv_neg(shift));
}

// ---------------------------------------------------------------------------
// text formats

std::string DigitAutomaton::to_text() const {
    DigitAlphabet ab = alphabet();
    std::ostringstream os;
    os << "pautomaton v1\n";
    os << "p=" << p << " d=" << d << "\n";
    os << "states=" << nstates() << " initial=" << initial << " finals=";
    bool first = true;
    for (uint32_t s = 0; s < nstates(); ++s)
        if (finals[s]) {
            if (!first) os << ",";
            os << s;
            first = false;
        }
    if (first) os << "-";
    os << "\n";
    os << "status=" << status.str() << "\n";
    for (uint32_t s = 0; s < nstates(); ++s)
        for (uint32_t a = 0; a < ab.size(); ++a)
            os << "trans " << s << " " << ab.letter_str(a) << " " << step(s, a) << "\n";
    return os.str();
}

DigitAutomaton DigitAutomaton::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line.rfind("pautomaton v1", 0) != 0)
        throw std::invalid_argument("pautomaton: bad header");
    DigitAutomaton a;
    uint32_t nstates = 0;
    if (!(is >> line)) throw std::invalid_argument("pautomaton: missing p");
    if (sscanf(line.c_str(), "p=%u", &a.p) != 1) throw std::invalid_argument("pautomaton: bad p");
    if (!(is >> line) || sscanf(line.c_str(), "d=%u", &a.d) != 1)
        throw std::invalid_argument("pautomaton: bad d");
    if (!(is >> line) || sscanf(line.c_str(), "states=%u", &nstates) != 1)
        throw std::invalid_argument("pautomaton: bad states");
    if (!(is >> line) || sscanf(line.c_str(), "initial=%u", &a.initial) != 1)
        throw std::invalid_argument("pautomaton: bad initial");
    if (!(is >> line) || line.rfind("finals=", 0) != 0)
        throw std::invalid_argument("pautomaton: bad finals");
    a.finals.assign(nstates, 0);
    {
        std::string fl = line.substr(7);
        if (fl != "-") {
            std::istringstream fs(fl);
            std::string tok;
            while (std::getline(fs, tok, ',')) a.finals.at(std::stoul(tok)) = 1;
        }
    }
    DigitAlphabet ab = a.alphabet();
    a.trans.assign(static_cast<size_t>(nstates) * ab.size(), UINT32_MAX);
    std::string word;
    while (is >> word) {
        if (word == "status=Exact" || word.rfind("status=", 0) == 0) {
            if (word.rfind("status=WindowVerified", 0) == 0) {
                int64_t b = 0;
                sscanf(word.c_str(), "status=WindowVerified(%ld)", &b);
                a.status = SolveStatus::window_verified(b);
            }
            continue;
        }
        if (word != "trans") throw std::invalid_argument("pautomaton: expected trans");
        uint32_t from, to;
        std::string letter;
        if (!(is >> from >> letter >> to)) throw std::invalid_argument("pautomaton: bad trans");
        if (letter.size() < 3 || letter.front() != '(' || letter.back() != ')')
            throw std::invalid_argument("pautomaton: bad letter");
        std::string body = letter.substr(1, letter.size() - 2);
        std::vector<std::string> parts;
        {
            std::istringstream ps(body);
            std::string tok;
            while (std::getline(ps, tok, ',')) parts.push_back(tok);
        }
        if (parts.size() != a.d) throw std::invalid_argument("pautomaton: letter arity");
        uint32_t li;
        if (parts[0] == "+" || parts[0] == "-") {
            std::vector<bool> neg(a.d);
            for (uint32_t i = 0; i < a.d; ++i) neg[i] = parts[i] == "-";
            li = ab.sign_letter(neg);
        } else {
            std::vector<uint32_t> digits(a.d);
            for (uint32_t i = 0; i < a.d; ++i) digits[i] = std::stoul(parts[i]);
            li = ab.digit_letter(digits);
        }
        a.trans.at(static_cast<size_t>(from) * ab.size() + li) = to;
    }
    for (uint32_t x : a.trans)
        if (x == UINT32_MAX) throw std::invalid_argument("pautomaton: transition function not total");
    return a;
}

std::string DigitAutomaton::to_dot() const {
    DigitAlphabet ab = alphabet();
    std::ostringstream os;
    os << "digraph pautomaton {\n  rankdir=LR;\n  node [shape=circle];\n";
    os << "  init [shape=point];\n  init -> s" << initial << ";\n";
    for (uint32_t s = 0; s < nstates(); ++s)
        if (finals[s]) os << "  s" << s << " [shape=doublecircle];\n";
    for (uint32_t s = 0; s < nstates(); ++s) {
        std::map<uint32_t, std::vector<uint32_t>> grouped;
        for (uint32_t a = 0; a < ab.size(); ++a) grouped[step(s, a)].push_back(a);
        for (const auto& [t, letters] : grouped) {
            std::string label;
            size_t shown = 0;
            for (uint32_t a : letters) {
                if (shown >= 6) {
                    label += ",...";
                    break;
                }
                if (shown) label += ",";
                label += ab.letter_str(a);
                ++shown;
            }
            os << "  s" << s << " -> s" << t << " [label=\"" << label << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace lamp
