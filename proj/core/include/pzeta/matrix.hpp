#ifndef PZETA_MATRIX_HPP
#define PZETA_MATRIX_HPP

#include <cassert>
#include <vector>

#include "pzeta/poly.hpp"

namespace pzeta {

// Dense matrix over a commutative ring T.
template <class T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(size_t rows, size_t cols, const T& fill)
        : rows_(rows), cols_(cols), d_(rows * cols, fill) {}

    static Mat identity(size_t n, const T& example) {
        Mat m(n, n, zero_like(example));
        const T one = one_like(example);
        for (size_t i = 0; i < n; i++) m.at(i, i) = one;
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    T& at(size_t i, size_t j) { return d_[i * cols_ + j]; }
    const T& at(size_t i, size_t j) const { return d_[i * cols_ + j]; }
    const std::vector<T>& data() const { return d_; }

    friend Mat operator+(const Mat& a, const Mat& b) {
        assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
        Mat r = a;
        for (size_t i = 0; i < r.d_.size(); i++) r.d_[i] = r.d_[i] + b.d_[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
        Mat r = a;
        for (size_t i = 0; i < r.d_.size(); i++) r.d_[i] = r.d_[i] - b.d_[i];
        return r;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        assert(a.cols_ == b.rows_);
        Mat r(a.rows_, b.cols_, zero_like(a.d_[0]) * zero_like(b.d_[0]));
        for (size_t i = 0; i < a.rows_; i++)
            for (size_t k = 0; k < a.cols_; k++) {
                const T& aik = a.at(i, k);
                if (ring_is_zero(aik)) continue;
                for (size_t j = 0; j < b.cols_; j++)
                    r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
            }
        return r;
    }

    Mat scaled(const T& s) const {
        Mat r = *this;
        for (auto& x : r.d_) x = x * s;
        return r;
    }
    Mat operator-() const {
        Mat r = *this;
        for (auto& x : r.d_) x = -x;
        return r;
    }

    std::vector<T> mul_vec(const std::vector<T>& v) const {
        assert(v.size() == cols_);
        std::vector<T> out(rows_, zero_like(d_[0]) * zero_like(v[0]));
        for (size_t i = 0; i < rows_; i++)
            for (size_t j = 0; j < cols_; j++)
                out[i] = out[i] + at(i, j) * v[j];
        return out;
    }

    std::vector<T> col(size_t j) const {
        std::vector<T> out;
        out.reserve(rows_);
        for (size_t i = 0; i < rows_; i++) out.push_back(at(i, j));
        return out;
    }

private:
    size_t rows_, cols_;
    std::vector<T> d_;
};

// Berkowitz: det(T*I - M) by iterated Toeplitz products.  Division-free, so
// the only precision losses over p-adic approximations come from ring
// multiplications and additions, never from pivots.
// Coefficients are returned ascending: out[0] + out[1] T + ... + out[n] T^n.
template <class T>
Poly<T> charpoly_berkowitz(const Mat<T>& m) {
    assert(m.rows() == m.cols());
    const size_t n = m.rows();
    const T one = one_like(m.at(0, 0));
    const T zero = zero_like(m.at(0, 0));
    if (n == 0) return Poly<T>::constant(one);
    // p holds coefficients descending from the leading 1.
    std::vector<T> p{one, -m.at(0, 0)};
    for (size_t r = 2; r <= n; r++) {
        // column of the Toeplitz operator: 1, -a_rr, -(R S), -(R A S), ...
        std::vector<T> t;
        t.reserve(r + 1);
        t.push_back(one);
        t.push_back(-m.at(r - 1, r - 1));
        std::vector<T> wv(r - 1, zero);
        for (size_t i = 0; i < r - 1; i++) wv[i] = m.at(i, r - 1);  // S
        for (size_t k = 0; k + 2 <= r; k++) {
            T dot = zero;
            for (size_t i = 0; i < r - 1; i++) dot = dot + m.at(r - 1, i) * wv[i];
            t.push_back(-dot);
            if (k + 3 <= r + 0) {
                std::vector<T> nw(r - 1, zero);
                for (size_t i = 0; i < r - 1; i++)
                    for (size_t j = 0; j < r - 1; j++)
                        nw[i] = nw[i] + m.at(i, j) * wv[j];
                wv = std::move(nw);
            }
        }
        // p_new = T_r * p  (lower-triangular Toeplitz with first column t)
        std::vector<T> np(r + 1, zero);
        for (size_t i = 0; i <= r; i++)
            for (size_t j = 0; j < p.size() && j <= i; j++)
                np[i] = np[i] + t[i - j] * p[j];
        p = std::move(np);
    }
    // p is descending; convert to ascending.
    std::vector<T> asc(p.rbegin(), p.rend());
    return Poly<T>(std::move(asc));
}

// Adjugate via Cayley-Hamilton from the Berkowitz characteristic polynomial:
// Adj(A) = (-1)^(n-1) (A^(n-1) + c_(n-1) A^(n-2) + ... + c_1 I)
// where charpoly = T^n + c_(n-1) T^(n-1) + ... + c_0.  Division-free.
template <class T>
Mat<T> adjugate(const Mat<T>& a, const Poly<T>& charpoly) {
    const size_t n = a.rows();
    const T one = one_like(a.at(0, 0));
    assert(charpoly.degree() == (int64_t)n);
    if (n == 0) return Mat<T>::identity(0, one);
    Mat<T> acc = Mat<T>::identity(n, one);  // Horner in A
    for (size_t k = n - 1; k >= 1; k--) {
        acc = acc * a;
        const T& ck = charpoly[k];
        for (size_t i = 0; i < n; i++) acc.at(i, i) = acc.at(i, i) + ck;
        if (k == 1) break;
    }
    if (n == 1) acc = Mat<T>::identity(1, one);
    if (n % 2 == 0) acc = -acc;
    return acc;
}

template <class T>
T mat_det_from_charpoly(const Poly<T>& charpoly, size_t n) {
    T c0 = charpoly.coeff_or(0, zero_like(charpoly.lead()));
    return (n % 2 == 0) ? c0 : -c0;
}

}  // namespace pzeta

#endif
