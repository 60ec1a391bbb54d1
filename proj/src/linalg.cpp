#include "kleinian/linalg.hpp"

#include <stdexcept>

namespace kln {

CMatrix cmat_zero(int rows, int cols) { return CMatrix(rows, std::vector<Cyclo>(cols, Cyclo(0))); }

CMatrix cmat_identity(int n) {
    CMatrix m = cmat_zero(n, n);
    for (int i = 0; i < n; ++i) m[i][i] = Cyclo(1);
    return m;
}

CMatrix cmat_mul(const CMatrix& a, const CMatrix& b) {
    int r = (int)a.size(), k = a.empty() ? 0 : (int)a[0].size();
    int c = b.empty() ? 0 : (int)b[0].size();
    if ((int)b.size() != k) throw std::invalid_argument("cmat_mul: shape mismatch");
    CMatrix m = cmat_zero(r, c);
    for (int i = 0; i < r; ++i)
        for (int t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (int j = 0; j < c; ++j)
                if (!b[t][j].is_zero()) m[i][j] += a[i][t] * b[t][j];
        }
    return m;
}

CMatrix cmat_add(const CMatrix& a, const CMatrix& b, const Cyclo& scale) {
    if (a.size() != b.size()) throw std::invalid_argument("cmat_add: shape mismatch");
    CMatrix m = a;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) throw std::invalid_argument("cmat_add: shape mismatch");
        for (size_t j = 0; j < a[i].size(); ++j) m[i][j] += scale * b[i][j];
    }
    return m;
}

CMatrix cmat_transpose(const CMatrix& a) {
    if (a.empty()) return {};
    CMatrix t = cmat_zero((int)a[0].size(), (int)a.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

std::vector<int> rref(CMatrix& m) {
    std::vector<int> piv;
    int rows = (int)m.size();
    if (!rows) return piv;
    int cols = (int)m[0].size();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (!m[i][c].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[p], m[r]);
        Cyclo inv = m[r][c].inverse();
        for (int j = c; j < cols; ++j)
            if (!m[r][j].is_zero()) m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Cyclo f = m[i][c];
            for (int j = c; j < cols; ++j)
                if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

int rank(CMatrix m) { return (int)rref(m).size(); }

std::vector<std::vector<Cyclo>> nullspace(CMatrix m, int cols) {
    auto piv = rref(m);
    std::vector<bool> is_piv(cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::vector<Cyclo>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Cyclo> v(cols, Cyclo(0));
        v[f] = Cyclo(1);
        for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m[k][f];
        basis.push_back(v);
    }
    return basis;
}

bool solve_linear(CMatrix m, const std::vector<Cyclo>& b, std::vector<Cyclo>& x) {
    int rows = (int)m.size();
    if ((int)b.size() != rows) throw std::invalid_argument("solve_linear: shape mismatch");
    int cols = rows ? (int)m[0].size() : 0;
    for (int i = 0; i < rows; ++i) m[i].push_back(b[i]);
    auto piv = rref(m);
    if (!piv.empty() && piv.back() == cols) return false;
    x.assign(cols, Cyclo(0));
    for (size_t k = 0; k < piv.size(); ++k) x[piv[k]] = m[k][cols];
    return true;
}

CMatrix cmat_inverse(const CMatrix& a) {
    int n = (int)a.size();
    CMatrix m = a;
    for (int i = 0; i < n; ++i) {
        m[i].resize(2 * n, Cyclo(0));
        m[i][n + i] = Cyclo(1);
    }
    auto piv = rref(m);
    if ((int)piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("cmat_inverse: singular matrix");
    CMatrix r = cmat_zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = m[i][n + j];
    return r;
}

}  // namespace kln
