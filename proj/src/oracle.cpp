#include "lamplighter/oracle.hpp"

#include <deque>
#include <map>

namespace lamp {

namespace {

bool within_budget(const GroupElement& g, const SearchBudget& b) {
    if (iv_linf(g.a) > b.exponent_window) return false;
    for (const auto& c : g.y.coords) {
        for (const auto& [e, coef] : c.terms())
            if (iv_linf(e) > b.support_box) return false;
    }
    return true;
}

struct ElemKey {
    size_t yhash;
    IntVec a;
    std::vector<std::string> ystr;  // disambiguate hash collisions
    bool operator<(const ElemKey& o) const {
        return std::tie(yhash, a, ystr) < std::tie(o.yhash, o.a, o.ystr);
    }
};

ElemKey key_of(const GroupElement& g) {
    ElemKey k{g.y.hash(), g.a, {}};
    for (const auto& c : g.y.coords) k.ystr.push_back(c.str());
    return k;
}

}  // namespace

BfsResult bfs_submonoid(const std::vector<GroupElement>& gens, const GroupElement& target,
                        const SearchBudget& budget) {
    BfsResult res;
    if (gens.empty()) {
        res.found = target.is_identity();
        return res;
    }
    const GroupCtxPtr& ctx = gens[0].ctx;
    GroupElement e = GroupElement::identity(ctx);

    std::map<ElemKey, std::pair<int64_t, size_t>> parent;  // state -> (parent id, gen idx)
    std::vector<GroupElement> pool{e};
    parent[key_of(e)] = {-1, 0};
    std::deque<std::pair<size_t, uint32_t>> queue{{0, 0}};

    auto reconstruct = [&](size_t id) {
        std::vector<size_t> w;
        GroupElement cur = pool[id];
        while (true) {
            auto it = parent.find(key_of(cur));
            if (it->second.first < 0) break;
            w.push_back(it->second.second);
            cur = pool[static_cast<size_t>(it->second.first)];
        }
        std::reverse(w.begin(), w.end());
        return w;
    };

    while (!queue.empty()) {
        auto [id, len] = queue.front();
        queue.pop_front();
        if (pool[id] == target) {
            res.found = true;
            res.witness = reconstruct(id);
            // re-evaluate the witness exactly
            GroupElement check = e;
            for (size_t gi : res.witness) check = gmul(check, gens[gi]);
            if (check != target) throw std::logic_error("oracle: witness failed re-evaluation");
            return res;
        }
        if (len >= budget.max_word_len) continue;
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            GroupElement nxt = gmul(pool[id], gens[gi]);
            if (!within_budget(nxt, budget)) continue;
            ElemKey k = key_of(nxt);
            if (parent.count(k)) continue;
            parent[k] = {static_cast<int64_t>(id), gi};
            pool.push_back(nxt);
            queue.emplace_back(pool.size() - 1, len + 1);
        }
    }
    return res;
}

std::set<IntVec> brute_knapsack(const std::vector<GroupElement>& factors,
                                const GroupElement& target, int64_t bound) {
    std::set<IntVec> out;
    if (factors.empty()) {
        if (target.is_identity()) out.insert(IntVec{});
        return out;
    }
    const GroupCtxPtr& ctx = factors[0].ctx;
    size_t m = factors.size();
    // powers[i][n + bound] = factors[i]^n
    std::vector<std::vector<GroupElement>> powers(m);
    for (size_t i = 0; i < m; ++i) {
        powers[i].reserve(2 * bound + 1);
        for (int64_t z = -bound; z <= bound; ++z) powers[i].push_back(gpow(factors[i], z));
    }
    IntVec n(m, -bound);
    std::vector<GroupElement> prefix(m + 1, GroupElement::identity(ctx));
    // depth-first with explicit counters; prefix[i+1] = prefix[i] * h_i^{n_i}
    size_t level = 0;
    while (true) {
        if (level == m) {
            if (prefix[m] == target) out.insert(n);
            // advance
            while (level > 0) {
                --level;
                if (++n[level] <= bound) break;
                n[level] = -bound;
            }
            if (level == 0 && n[0] == -bound) break;  // wrapped fully
        }
        // recompute prefix chain from current level down to m
        for (size_t i = level; i < m; ++i)
            prefix[i + 1] = gmul(prefix[i], powers[i][static_cast<size_t>(n[i] + bound)]);
        level = m;
    }
    return out;
}

std::set<IntVec> brute_sunit(const NFContext& m, const std::vector<ModElem>& constants,
                             const ModElem& c0, int64_t bound) {
    std::set<IntVec> out;
    uint32_t n = m.ring()->nvars;
    size_t blocks = constants.size();
    ModElem c0nf = m.nf(c0);

    // enumerate exponent vectors of one block
    std::vector<IntVec> zs;
    {
        IntVec z(n, -bound);
        while (true) {
            bool ok = true;
            for (uint32_t v = 0; v < n; ++v)
                if (!m.ring()->invertible[v] && z[v] < 0) ok = false;
            if (ok) zs.push_back(z);
            uint32_t i = 0;
            while (i < n) {
                if (++z[i] <= bound) break;
                z[i] = -bound;
                ++i;
            }
            if (i == n) break;
        }
    }
    // per-block normal forms of X^z * c_i
    std::vector<std::vector<ModElem>> table(blocks);
    for (size_t i = 0; i < blocks; ++i) {
        table[i].reserve(zs.size());
        for (const auto& z : zs)
            table[i].push_back(m.nf(constants[i].scaled_by(Poly::monomial(m.ring(), z, 1))));
    }
    // sum over all combinations
    std::vector<size_t> pick(blocks, 0);
    std::vector<ModElem> partial(blocks + 1, ModElem(m.ring(), m.rank()));
    size_t level = 0;
    while (true) {
        if (level == blocks) {
            if (partial[blocks] == c0nf) {
                IntVec flat;
                flat.reserve(blocks * n);
                for (size_t i = 0; i < blocks; ++i)
                    flat.insert(flat.end(), zs[pick[i]].begin(), zs[pick[i]].end());
                out.insert(std::move(flat));
            }
            while (level > 0) {
                --level;
                if (++pick[level] < zs.size()) break;
                pick[level] = 0;
            }
            if (level == 0 && pick[0] == 0) break;
        }
        // sums of normal forms stay in normal form; comparison is exact
        for (size_t i = level; i < blocks; ++i) partial[i + 1] = partial[i] + table[i][pick[i]];
        level = blocks;
    }
    return out;
}

WindowCompareResult window_compare(const DigitAutomaton& a, const std::set<IntVec>& baseline,
                                   int64_t bound) {
    WindowCompareResult res;
    auto got = a.enumerate_window(bound);
    std::set<IntVec> gotset(got.begin(), got.end());
    for (const auto& z : baseline) {
        if (!gotset.count(z)) {
            res.counterexample = z;
            res.missing = true;
            return res;
        }
    }
    for (const auto& z : gotset) {
        if (!baseline.count(z)) {
            res.counterexample = z;
            res.missing = false;
            return res;
        }
    }
    res.pass = true;
    return res;
}

}  // namespace lamp
