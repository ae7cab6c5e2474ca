#ifndef UCHIDA_ARITH_MATRIX_HPP
#define UCHIDA_ARITH_MATRIX_HPP

#include <optional>
#include <utility>
#include <vector>

#include "uchida/arith/integer.hpp"
#include "uchida/arith/poly.hpp"

namespace uchida::arith {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows)
    {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = cols[j][i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> column(std::size_t j) const
    {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    void set_column(std::size_t j, const std::vector<T>& c)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = c[i];
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y)
    {
        Matrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (x(i, k) == T(0))
                    continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }

    friend std::vector<T> operator*(const Matrix& x, const std::vector<T>& v)
    {
        std::vector<T> r(x.rows_, T(0));
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t j = 0; j < x.cols_; ++j)
                r[i] += x(i, j) * v[j];
        return r;
    }

    friend bool operator==(const Matrix& x, const Matrix& y)
    {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;

inline RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = m(i, j);
    return r;
}

inline RatVec to_rational(const IntVec& v) { return RatVec(v.begin(), v.end()); }

template <class T>
T det(const Matrix<T>& m)
{
    std::vector<std::vector<T>> rows(m.rows(), std::vector<T>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            rows[i][j] = m(i, j);
    return bareiss_det(std::move(rows));
}

/// Inverse over Q by Gauss-Jordan; throws on singular input.
inline RatMatrix inverse(const RatMatrix& m)
{
    const std::size_t n = m.rows();
    RatMatrix a = m, inv = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a(piv, c) == 0)
            ++piv;
        if (piv == n)
            fail(Errc::precondition, "singular-matrix", "matrix is not invertible");
        if (piv != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(c, j), a(piv, j));
                std::swap(inv(c, j), inv(piv, j));
            }
        Rational s = 1 / a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) *= s;
            inv(c, j) *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0)
                continue;
            Rational f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

/// Column-style Hermite normal form of a full-row-rank integer matrix:
/// returns the n x n upper triangular H with positive diagonal and
/// 0 <= H(i,j) < H(i,i) for j > i, spanning the same lattice as the
/// columns of A.  When D > 0 is given, D*Z^n must lie in the lattice and
/// entries are kept reduced modulo D during elimination.
inline IntMatrix hnf(const IntMatrix& A, const Integer& D = 0)
{
    const std::size_t n = A.rows();
    std::vector<IntVec> cols;
    for (std::size_t j = 0; j < A.cols(); ++j) {
        IntVec c = A.column(j);
        bool zero = true;
        for (auto& x : c)
            if (x != 0) {
                zero = false;
                break;
            }
        if (!zero)
            cols.push_back(std::move(c));
    }
    IntMatrix H(n, n);
    for (std::size_t ii = n; ii-- > 0;) {
        if (D > 0) {
            for (auto& c : cols)
                for (std::size_t k = 0; k <= ii; ++k)
                    c[k] = mod(c[k], D);
            IntVec de(n, Integer(0));
            de[ii] = D;
            cols.push_back(std::move(de));
        }
        // gcd-combine row ii across remaining columns
        std::size_t piv = cols.size();
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j][ii] == 0)
                continue;
            if (piv == cols.size()) {
                piv = j;
                continue;
            }
            Integer a = cols[piv][ii], b = cols[j][ii];
            Integer g, u, v;
            mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            Integer ag = a / g, bg = b / g;
            IntVec np(n), nj(n);
            for (std::size_t k = 0; k <= ii; ++k) {
                np[k] = u * cols[piv][k] + v * cols[j][k];
                nj[k] = ag * cols[j][k] - bg * cols[piv][k];
            }
            cols[piv] = std::move(np);
            cols[j] = std::move(nj);
        }
        if (piv == cols.size())
            fail(Errc::precondition, "hnf-rank", "lattice is not of full rank");
        IntVec pc = std::move(cols[piv]);
        cols.erase(cols.begin() + static_cast<long>(piv));
        if (pc[ii] < 0)
            for (auto& x : pc)
                x = -x;
        H.set_column(ii, pc);
        // drop columns that became zero
        std::vector<IntVec> keep;
        for (auto& c : cols) {
            bool zero = true;
            for (std::size_t k = 0; k < ii; ++k)
                if (c[k] != 0) {
                    zero = false;
                    break;
                }
            if (!zero)
                keep.push_back(std::move(c));
        }
        cols = std::move(keep);
    }
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = j; i-- > 0;) {
            Integer q = floor_div(H(i, j), H(i, i));
            if (q != 0)
                for (std::size_t k = 0; k <= i; ++k)
                    H(k, j) -= q * H(k, i);
        }
    return H;
}

/// Integer coordinates of v in the basis given by the columns of the
/// upper triangular H, or nullopt if v is not in the lattice.
inline std::optional<IntVec> lattice_coords(const IntMatrix& H, const IntVec& v)
{
    const std::size_t n = H.rows();
    IntVec c(n);
    for (std::size_t i = n; i-- > 0;) {
        Integer s = v[i];
        for (std::size_t j = i + 1; j < n; ++j)
            s -= H(i, j) * c[j];
        if (!divides(H(i, i), s))
            return std::nullopt;
        c[i] = s / H(i, i);
    }
    return c;
}

/// Rational coordinates of v in the basis given by the columns of the
/// upper triangular H.
inline RatVec triangular_solve(const IntMatrix& H, const RatVec& v)
{
    const std::size_t n = H.rows();
    RatVec c(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational s = v[i];
        for (std::size_t j = i + 1; j < n; ++j)
            s -= H(i, j) * c[j];
        c[i] = s / H(i, i);
    }
    return c;
}

/// Basis of the right kernel {x : A x = 0} over F_p, vectors reduced to [0,p).
inline std::vector<IntVec> kernel_mod_p(const IntMatrix& A, const Integer& p)
{
    const std::size_t r = A.rows(), c = A.cols();
    IntMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            a(i, j) = mod(A(i, j), p);
    std::vector<std::size_t> pivcol;
    std::size_t row = 0;
    for (std::size_t col = 0; col < c && row < r; ++col) {
        std::size_t piv = row;
        while (piv < r && a(piv, col) == 0)
            ++piv;
        if (piv == r)
            continue;
        for (std::size_t j = 0; j < c; ++j)
            std::swap(a(row, j), a(piv, j));
        Integer inv = invmod(a(row, col), p).value();
        for (std::size_t j = 0; j < c; ++j)
            a(row, j) = mod(a(row, j) * inv, p);
        for (std::size_t i = 0; i < r; ++i) {
            if (i == row || a(i, col) == 0)
                continue;
            Integer f = a(i, col);
            for (std::size_t j = 0; j < c; ++j)
                a(i, j) = mod(a(i, j) - f * a(row, j), p);
        }
        pivcol.push_back(col);
        ++row;
    }
    std::vector<bool> is_piv(c, false);
    for (auto pc : pivcol)
        is_piv[pc] = true;
    std::vector<IntVec> basis;
    for (std::size_t free = 0; free < c; ++free) {
        if (is_piv[free])
            continue;
        IntVec v(c, Integer(0));
        v[free] = 1;
        for (std::size_t k = 0; k < pivcol.size(); ++k)
            v[pivcol[k]] = mod(-a(k, free), p);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Rank over F_p.
inline std::size_t rank_mod_p(const IntMatrix& A, const Integer& p)
{
    return A.cols() - kernel_mod_p(A, p).size();
}

/// Diagonal of the Smith normal form (nonzero invariants d1 | d2 | ...).
inline IntVec smith_invariants(IntMatrix a)
{
    const std::size_t r = a.rows(), c = a.cols();
    IntVec diag;
    std::size_t t = 0;
    while (t < r && t < c) {
        // pick smallest nonzero entry in the remaining block
        bool found = false;
        std::size_t pi = 0, pj = 0;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j)
                if (a(i, j) != 0 && (!found || abs(a(i, j)) < abs(a(pi, pj)))) {
                    found = true;
                    pi = i;
                    pj = j;
                }
        if (!found)
            break;
        for (std::size_t j = 0; j < c; ++j)
            std::swap(a(t, j), a(pi, j));
        for (std::size_t i = 0; i < r; ++i)
            std::swap(a(i, t), a(i, pj));
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                Integer q = floor_div(a(i, t), a(t, t));
                if (q != 0)
                    for (std::size_t j = t; j < c; ++j)
                        a(i, j) -= q * a(t, j);
                if (a(i, t) != 0) {
                    clean = false;
                    for (std::size_t j = 0; j < c; ++j)
                        std::swap(a(t, j), a(i, j));
                }
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                Integer q = floor_div(a(t, j), a(t, t));
                if (q != 0)
                    for (std::size_t i = t; i < r; ++i)
                        a(i, j) -= q * a(i, t);
                if (a(t, j) != 0) {
                    clean = false;
                    for (std::size_t i = 0; i < r; ++i)
                        std::swap(a(i, t), a(i, j));
                }
            }
            if (clean) {
                // divisibility condition
                for (std::size_t i = t + 1; i < r && clean; ++i)
                    for (std::size_t j = t + 1; j < c; ++j)
                        if (!divides(a(t, t), a(i, j))) {
                            for (std::size_t k = t; k < c; ++k)
                                a(t, k) += a(i, k);
                            clean = false;
                            break;
                        }
            }
        }
        diag.push_back(abs(a(t, t)));
        ++t;
    }
    return diag;
}

} // namespace uchida::arith

#endif
