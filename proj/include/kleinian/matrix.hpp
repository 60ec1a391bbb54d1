#pragma once

#include <cmath>
#include <complex>
#include <algorithm>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "kleinian/cyclo.hpp"

namespace kln {

using Complex = std::complex<double>;

inline bool entry_is_zero(const Cyclo& a, double = 0) { return a.is_zero(); }
inline bool entry_is_zero(const Complex& a, double tol) { return std::abs(a) <= tol; }
inline double entry_size(const Cyclo& a) { return a.is_zero() ? 0.0 : 1.0; }
inline double entry_size(const Complex& a) { return std::abs(a); }
inline Cyclo entry_inverse(const Cyclo& a) { return a.inverse(); }
inline Complex entry_inverse(const Complex& a) { return 1.0 / a; }

// Dense row-major matrix over Cyclo or Complex.
template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a((size_t)r * c, T(0)) {}
    Mat(std::initializer_list<std::initializer_list<long>> init) {
        rows = (int)init.size();
        cols = rows ? (int)init.begin()->size() : 0;
        for (auto& row : init) {
            if ((int)row.size() != cols) throw std::invalid_argument("ragged matrix literal");
            for (long v : row) a.push_back(T(v));
        }
    }
    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    T& operator()(int i, int j) { return a[(size_t)i * cols + j]; }
    const T& operator()(int i, int j) const { return a[(size_t)i * cols + j]; }

    Mat& operator+=(const Mat& b) {
        check_same(b);
        for (size_t k = 0; k < a.size(); ++k) a[k] += b.a[k];
        return *this;
    }
    Mat& operator-=(const Mat& b) {
        check_same(b);
        for (size_t k = 0; k < a.size(); ++k) a[k] -= b.a[k];
        return *this;
    }
    Mat& operator*=(const T& s) {
        for (auto& e : a) e *= s;
        return *this;
    }
    friend Mat operator+(Mat x, const Mat& y) { return x += y; }
    friend Mat operator-(Mat x, const Mat& y) { return x -= y; }
    friend Mat operator*(Mat x, const T& s) { return x *= s; }
    friend Mat operator*(const T& s, Mat x) { return x *= s; }
    Mat operator-() const {
        Mat m = *this;
        for (auto& e : m.a) e = -e;
        return m;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch in product");
        Mat m(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const T& v = x(i, k);
                if (entry_is_zero(v, 0)) continue;
                for (int j = 0; j < y.cols; ++j) m(i, j) += v * y(k, j);
            }
        return m;
    }
    friend bool operator==(const Mat& x, const Mat& y) { return x.rows == y.rows && x.cols == y.cols && x.a == y.a; }

    T trace() const {
        if (rows != cols) throw std::invalid_argument("trace of a non-square matrix");
        T t(0);
        for (int i = 0; i < rows; ++i) t += (*this)(i, i);
        return t;
    }
    bool is_zero(double tol = 0) const {
        for (auto& e : a)
            if (!entry_is_zero(e, tol)) return false;
        return true;
    }
    double max_abs() const {
        double m = 0;
        for (auto& e : a) m = std::max(m, entry_size(e));
        return m;
    }
    Mat transpose() const {
        Mat m(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    void check_same(const Mat& b) const {
        if (rows != b.rows || cols != b.cols) throw std::invalid_argument("matrix shape mismatch");
    }
};

// Row echelon rank; tol is ignored for exact entries.
template <class T>
int mat_rank(Mat<T> m, double tol = 1e-9) {
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        double best = 0;
        for (int i = r; i < m.rows; ++i) {
            double s = entry_size(m(i, c));
            if (!entry_is_zero(m(i, c), tol) && s > best) {
                best = s;
                piv = i;
                if constexpr (std::is_same_v<T, Cyclo>) break;
            }
        }
        if (piv < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m(r, j), m(piv, j));
        T inv = entry_inverse(m(r, c));
        for (int i = r + 1; i < m.rows; ++i) {
            if (entry_is_zero(m(i, c), 0)) continue;
            T f = m(i, c) * inv;
            for (int j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

// Gauss-Jordan inverse; throws if singular.
template <class T>
Mat<T> mat_inverse(const Mat<T>& in, double tol = 1e-12) {
    if (in.rows != in.cols) throw std::invalid_argument("inverse of a non-square matrix");
    int n = in.rows;
    Mat<T> m = in, inv = Mat<T>::identity(n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        double best = 0;
        for (int i = c; i < n; ++i) {
            double s = entry_size(m(i, c));
            if (!entry_is_zero(m(i, c), tol) && s > best) {
                best = s;
                piv = i;
                if constexpr (std::is_same_v<T, Cyclo>) break;
            }
        }
        if (piv < 0) throw std::domain_error("singular matrix");
        for (int j = 0; j < n; ++j) {
            std::swap(m(c, j), m(piv, j));
            std::swap(inv(c, j), inv(piv, j));
        }
        T p = entry_inverse(m(c, c));
        for (int j = 0; j < n; ++j) {
            m(c, j) *= p;
            inv(c, j) *= p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || entry_is_zero(m(i, c), 0)) continue;
            T f = m(i, c);
            for (int j = 0; j < n; ++j) {
                m(i, j) -= f * m(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

}  // namespace kln
