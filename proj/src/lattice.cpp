#include <cstdlib>
#include <stdexcept>

#include "lamplighter/module.hpp"

namespace lamp {

namespace {

// Row HNF with optional transform tracking (rows of `tr` mirror row ops).
void hnf_rows(std::vector<IntVec>& m, std::vector<IntVec>* tr) {
    if (m.empty()) return;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        // gcd-eliminate column c below row r
        while (true) {
            size_t piv = rows;
            for (size_t i = r; i < rows; ++i)
                if (m[i][c] != 0 && (piv == rows || std::llabs(m[i][c]) < std::llabs(m[piv][c])))
                    piv = i;
            if (piv == rows) break;
            std::swap(m[r], m[piv]);
            if (tr) std::swap((*tr)[r], (*tr)[piv]);
            bool done = true;
            for (size_t i = r + 1; i < rows; ++i) {
                if (m[i][c] == 0) continue;
                int64_t q = m[i][c] / m[r][c];
                for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
                if (tr)
                    for (size_t j = 0; j < (*tr)[i].size(); ++j) (*tr)[i][j] -= q * (*tr)[r][j];
                if (m[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (m[r][c] == 0) continue;
        if (m[r][c] < 0) {
            for (size_t j = 0; j < cols; ++j) m[r][j] = -m[r][j];
            if (tr)
                for (auto& x : (*tr)[r]) x = -x;
        }
        // reduce rows above
        for (size_t i = 0; i < r; ++i) {
            int64_t q = m[i][c] / m[r][c];
            if (m[i][c] % m[r][c] < 0) q -= 1;  // floor division keeps entries in [0, pivot)
            if (q == 0) continue;
            for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
            if (tr)
                for (size_t j = 0; j < (*tr)[i].size(); ++j) (*tr)[i][j] -= q * (*tr)[r][j];
        }
        ++r;
    }
    m.resize(r);
    if (tr) tr->resize(r);
}

}  // namespace

Lattice hermite_lattice(uint32_t ambient_dim, const std::vector<IntVec>& rows,
                        std::vector<IntVec>* combos) {
    std::vector<IntVec> m = rows;
    std::vector<IntVec> tr;
    if (combos) {
        tr.assign(rows.size(), IntVec(rows.size(), 0));
        for (size_t i = 0; i < rows.size(); ++i) tr[i][i] = 1;
    }
    hnf_rows(m, combos ? &tr : nullptr);
    // drop zero rows (hnf_rows keeps only pivot rows already)
    Lattice lat;
    lat.ambient_dim = ambient_dim;
    lat.basis = std::move(m);
    if (combos) *combos = std::move(tr);
    return lat;
}

bool Lattice::contains(const IntVec& v) const { return coordinates(v).has_value(); }

std::optional<IntVec> Lattice::coordinates(const IntVec& v) const {
    IntVec rem = v;
    IntVec coord(basis.size(), 0);
    for (size_t i = 0; i < basis.size(); ++i) {
        size_t piv = 0;
        while (piv < rem.size() && basis[i][piv] == 0) ++piv;
        if (piv == rem.size()) continue;
        if (rem[piv] % basis[i][piv] != 0) {
            // pivot does not divide: check remaining support before failing
        }
        int64_t q = rem[piv] / basis[i][piv];
        if (rem[piv] % basis[i][piv] != 0) return std::nullopt;
        coord[i] = q;
        for (size_t j = 0; j < rem.size(); ++j) rem[j] -= q * basis[i][j];
    }
    if (!iv_is_zero(rem)) return std::nullopt;
    return coord;
}

std::vector<IntVec> integer_kernel(const std::vector<IntVec>& rows, uint32_t ambient_dim) {
    // HNF of [rows | I]; kernel = transform rows whose row part vanished.
    size_t m = rows.size();
    std::vector<IntVec> aug(m, IntVec(ambient_dim + m, 0));
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < ambient_dim; ++j) aug[i][j] = rows[i][j];
        aug[i][ambient_dim + i] = 1;
    }
    hnf_rows(aug, nullptr);
    std::vector<IntVec> ker;
    for (const auto& row : aug) {
        bool zero_left = true;
        for (size_t j = 0; j < ambient_dim; ++j)
            if (row[j] != 0) {
                zero_left = false;
                break;
            }
        if (zero_left) {
            IntVec w(row.begin() + ambient_dim, row.end());
            if (!iv_is_zero(w)) ker.push_back(std::move(w));
        }
    }
    return ker;
}

namespace {

// Smith decomposition helpers on small dense matrices.
struct SmithResult {
    std::vector<IntVec> mat;  // diagonalized
    std::vector<IntVec> left;   // U: left transform (rows ops), U*A*V = D
    std::vector<IntVec> right;  // V: right transform
};

SmithResult smith(std::vector<IntVec> a, size_t rows, size_t cols) {
    SmithResult s;
    s.mat = std::move(a);
    s.left.assign(rows, IntVec(rows, 0));
    s.right.assign(cols, IntVec(cols, 0));
    for (size_t i = 0; i < rows; ++i) s.left[i][i] = 1;
    for (size_t i = 0; i < cols; ++i) s.right[i][i] = 1;
    auto row_sub = [&](size_t i, size_t k, int64_t q) {
        for (size_t j = 0; j < cols; ++j) s.mat[i][j] -= q * s.mat[k][j];
        for (size_t j = 0; j < rows; ++j) s.left[i][j] -= q * s.left[k][j];
    };
    auto col_sub = [&](size_t j, size_t k, int64_t q) {
        for (size_t i = 0; i < rows; ++i) s.mat[i][j] -= q * s.mat[i][k];
        for (size_t i = 0; i < cols; ++i) s.right[i][j] -= q * s.right[i][k];
    };
    auto row_swap = [&](size_t i, size_t k) {
        std::swap(s.mat[i], s.mat[k]);
        std::swap(s.left[i], s.left[k]);
    };
    auto col_swap = [&](size_t j, size_t k) {
        for (size_t i = 0; i < rows; ++i) std::swap(s.mat[i][j], s.mat[i][k]);
        std::swap(s.right[j], s.right[k]);
    };
    size_t t = 0;
    while (t < rows && t < cols) {
        // find smallest nonzero entry in the remaining block
        size_t bi = rows, bj = cols;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (s.mat[i][j] != 0 &&
                    (bi == rows || std::llabs(s.mat[i][j]) < std::llabs(s.mat[bi][bj]))) {
                    bi = i;
                    bj = j;
                }
        if (bi == rows) break;
        row_swap(t, bi);
        col_swap(t, bj);
        bool clean = true;
        for (size_t i = t + 1; i < rows; ++i) {
            int64_t q = s.mat[i][t] / s.mat[t][t];
            if (q) row_sub(i, t, q);
            if (s.mat[i][t] != 0) clean = false;
        }
        for (size_t j = t + 1; j < cols; ++j) {
            int64_t q = s.mat[t][j] / s.mat[t][t];
            if (q) col_sub(j, t, q);
            if (s.mat[t][j] != 0) clean = false;
        }
        if (!clean) continue;  // re-pick pivot
        if (s.mat[t][t] < 0) {
            for (size_t j = 0; j < cols; ++j) s.mat[t][j] = -s.mat[t][j];
            for (size_t j = 0; j < rows; ++j) s.left[t][j] = -s.left[t][j];
        }
        ++t;
    }
    return s;
}

}  // namespace

std::vector<IntVec> saturation_basis(uint32_t ambient_dim, const std::vector<IntVec>& rows) {
    if (rows.empty()) return {};
    // saturation = kernel of (kernel of rows^T); two HNF kernel passes
    // First: C = {x in Z^n : rows * x = 0}, i.e. kernel of columns viewed as forms.
    size_t m = rows.size();
    std::vector<IntVec> cols_as_rows(ambient_dim, IntVec(m, 0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < ambient_dim; ++j) cols_as_rows[j][i] = rows[i][j];
    std::vector<IntVec> c = integer_kernel(cols_as_rows, static_cast<uint32_t>(m));
    // c holds vectors x (length ambient_dim) with rows*x = 0
    if (c.empty()) {
        // full rank: saturation is Z^n restricted to span over Q = span has rank n
        Lattice l = hermite_lattice(ambient_dim, rows);
        if (l.dim() == ambient_dim) {
            std::vector<IntVec> id(ambient_dim, IntVec(ambient_dim, 0));
            for (size_t i = 0; i < ambient_dim; ++i) id[i][i] = 1;
            return id;
        }
    }
    std::vector<IntVec> forms(c.size(), IntVec(ambient_dim, 0));
    for (size_t i = 0; i < c.size(); ++i) forms[i] = c[i];
    // saturation = {v : forms * v = 0}
    std::vector<IntVec> forms_cols(ambient_dim, IntVec(forms.size(), 0));
    for (size_t i = 0; i < forms.size(); ++i)
        for (size_t j = 0; j < ambient_dim; ++j) forms_cols[j][i] = forms[i][j];
    std::vector<IntVec> sat = integer_kernel(forms_cols, static_cast<uint32_t>(forms.size()));
    Lattice l = hermite_lattice(ambient_dim, sat);
    return l.basis;
}

std::vector<IntVec> lattice_complement(uint32_t ambient_dim, const std::vector<IntVec>& sat_basis) {
    if (sat_basis.empty()) {
        std::vector<IntVec> id(ambient_dim, IntVec(ambient_dim, 0));
        for (size_t i = 0; i < ambient_dim; ++i) id[i][i] = 1;
        return id;
    }
    SmithResult s = smith(sat_basis, sat_basis.size(), ambient_dim);
    size_t r = 0;
    for (size_t i = 0; i < sat_basis.size() && i < ambient_dim; ++i)
        if (s.mat[i][i] != 0) {
            if (std::llabs(s.mat[i][i]) != 1)
                throw std::invalid_argument("lattice_complement: basis not saturated");
            ++r;
        }
    // U*A*V = D with d_i = 1  =>  rows of V^{-1}: first r rows span L, rest complement.
    // V's columns were tracked; we need V^{-1} rows = solve. Easier: complement =
    // images of last n-r standard basis vectors under (V^T)^{-1}... Use adjugate-free
    // route: rows of V transpose-inverse equal the dual basis; for unimodular V we
    // can invert exactly over Z with Gauss-Bareiss on small sizes.
    size_t n = ambient_dim;
    // invert V (n x n, unimodular): augmented HNF gives inverse since det = ±1
    std::vector<IntVec> aug(n, IntVec(2 * n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = s.right[i][j];
        aug[i][n + i] = 1;
    }
    hnf_rows(aug, nullptr);
    // aug now [I | V^{-1}] up to unit pivots
    std::vector<IntVec> vinv(n, IntVec(n, 0));
    for (size_t i = 0; i < n; ++i) {
        if (aug[i][i] != 1) throw std::runtime_error("lattice_complement: inversion failed");
        for (size_t j = 0; j < n; ++j) vinv[i][j] = aug[i][n + j];
    }
    // A*V = [diag(1) | 0] block => rowspace(A) = span of first r rows of V^{-1}.
    std::vector<IntVec> comp;
    for (size_t i = r; i < n; ++i) comp.push_back(vinv[i]);
    return comp;
}

}  // namespace lamp
