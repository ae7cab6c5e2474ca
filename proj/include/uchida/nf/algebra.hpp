#ifndef UCHIDA_NF_ALGEBRA_HPP
#define UCHIDA_NF_ALGEBRA_HPP

#include <memory>
#include <vector>

#include "uchida/arith/matrix.hpp"
#include "uchida/arith/poly.hpp"

namespace uchida::nf {

using namespace uchida::arith;

/// Elements are coordinate vectors over the algebra's basis.
using Elem = RatVec;

/// Commutative finite-dimensional Q-algebra with basis e_0 = 1, e_1, ...,
/// given by its multiplication table.  Fields K (power basis) and
/// KF = K (x) Q(sqrt d) are both instances.
class Algebra {
public:
    Algebra(std::size_t dim, std::vector<Elem> table) : n_(dim), table_(std::move(table))
    {
        ensure(table_.size() == n_ * n_, "algebra-table", "table size mismatch");
    }

    /// Q[x]/(f) for monic f, basis 1, x, ..., x^{deg-1}.
    static Algebra power_basis(const IntPoly& f)
    {
        if (f.degree() < 1 || f.leading() != 1)
            fail(Errc::precondition, "algebra-poly", "need monic polynomial of degree >= 1");
        const std::size_t n = static_cast<std::size_t>(f.degree());
        // x^k reduced mod f for k < 2n - 1
        std::vector<Elem> xpow;
        Elem cur(n, Rational(0));
        cur[0] = 1;
        for (std::size_t k = 0; k + 1 < 2 * n; ++k) {
            xpow.push_back(cur);
            Elem nxt(n, Rational(0));
            for (std::size_t i = 0; i + 1 < n; ++i)
                nxt[i + 1] = cur[i];
            Rational top = cur[n - 1];
            if (top != 0)
                for (std::size_t i = 0; i < n; ++i)
                    nxt[i] -= top * Rational(f.coeff(i));
            cur = std::move(nxt);
        }
        std::vector<Elem> t(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                t[i * n + j] = xpow[i + j];
        Algebra a(n, std::move(t));
        a.defining_ = f;
        return a;
    }

    /// A (x) B with basis a_i b_j at index i + dim(A) * j.
    static Algebra tensor(const Algebra& A, const Algebra& B)
    {
        const std::size_t na = A.dim(), nb = B.dim(), n = na * nb;
        std::vector<Elem> t(n * n, Elem(n, Rational(0)));
        for (std::size_t i1 = 0; i1 < na; ++i1)
            for (std::size_t j1 = 0; j1 < nb; ++j1)
                for (std::size_t i2 = 0; i2 < na; ++i2)
                    for (std::size_t j2 = 0; j2 < nb; ++j2) {
                        const Elem& pa = A.table_[i1 * na + i2];
                        const Elem& pb = B.table_[j1 * nb + j2];
                        Elem& dst = t[(i1 + na * j1) * n + (i2 + na * j2)];
                        for (std::size_t ka = 0; ka < na; ++ka) {
                            if (pa[ka] == 0)
                                continue;
                            for (std::size_t kb = 0; kb < nb; ++kb)
                                if (pb[kb] != 0)
                                    dst[ka + na * kb] += pa[ka] * pb[kb];
                        }
                    }
        return Algebra(n, std::move(t));
    }

    std::size_t dim() const { return n_; }
    /// The defining polynomial when built from a power basis, else zero.
    const IntPoly& defining_poly() const { return defining_; }

    Elem zero() const { return Elem(n_, Rational(0)); }
    Elem one() const { return basis(0); }
    Elem basis(std::size_t i) const
    {
        Elem e = zero();
        e[i] = 1;
        return e;
    }
    Elem scalar(const Rational& c) const
    {
        Elem e = zero();
        e[0] = c;
        return e;
    }

    Elem add(const Elem& a, const Elem& b) const
    {
        Elem r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            r[i] = a[i] + b[i];
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const
    {
        Elem r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            r[i] = a[i] - b[i];
        return r;
    }
    Elem neg(const Elem& a) const { return scale(a, Rational(-1)); }
    Elem scale(const Elem& a, const Rational& c) const
    {
        Elem r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            r[i] = a[i] * c;
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) const
    {
        Elem r = zero();
        for (std::size_t i = 0; i < n_; ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (b[j] == 0)
                    continue;
                Rational c = a[i] * b[j];
                const Elem& t = table_[i * n_ + j];
                for (std::size_t k = 0; k < n_; ++k)
                    if (t[k] != 0)
                        r[k] += c * t[k];
            }
        }
        return r;
    }

    Elem pow(Elem a, unsigned long e) const
    {
        Elem r = one();
        while (e) {
            if (e & 1)
                r = mul(r, a);
            e >>= 1;
            if (e)
                a = mul(a, a);
        }
        return r;
    }

    /// Matrix of y -> a*y; column j is a*e_j.
    RatMatrix mult_matrix(const Elem& a) const
    {
        RatMatrix m(n_, n_);
        for (std::size_t j = 0; j < n_; ++j)
            m.set_column(j, mul(a, basis(j)));
        return m;
    }

    Rational trace(const Elem& a) const
    {
        RatMatrix m = mult_matrix(a);
        Rational t = 0;
        for (std::size_t i = 0; i < n_; ++i)
            t += m(i, i);
        return t;
    }

    Rational norm(const Elem& a) const { return det(mult_matrix(a)); }

    /// Characteristic polynomial of multiplication by a (monic, degree dim).
    RatPoly charpoly(const Elem& a) const { return char_poly(mult_matrix(a)); }

    bool is_zero(const Elem& a) const
    {
        for (auto& c : a)
            if (c != 0)
                return false;
        return true;
    }

    Elem inverse(const Elem& a) const
    {
        RatMatrix m = mult_matrix(a);
        if (det(m) == 0)
            fail(Errc::precondition, "algebra-inverse", "element is a zero divisor");
        return arith::inverse(m) * one();
    }

    Elem div(const Elem& a, const Elem& b) const { return mul(a, inverse(b)); }

    /// Evaluate a polynomial with rational coefficients at a.
    template <class T>
    Elem eval(const Poly<T>& f, const Elem& a) const
    {
        Elem r = zero();
        for (int i = f.degree(); i >= 0; --i) {
            r = mul(r, a);
            r[0] += Rational(f.coeff(static_cast<std::size_t>(i)));
        }
        return r;
    }

    /// Faddeev-LeVerrier over Q.
    static RatPoly char_poly(const RatMatrix& M)
    {
        const std::size_t n = M.rows();
        std::vector<Rational> c(n + 1);
        c[n] = 1;
        RatMatrix Mk(n, n);
        for (std::size_t k = 1; k <= n; ++k) {
            // Mk = M * (Mk + c_{n-k+1} I)
            RatMatrix t = Mk;
            for (std::size_t i = 0; i < n; ++i)
                t(i, i) += c[n - k + 1];
            Mk = M * t;
            Rational tr = 0;
            for (std::size_t i = 0; i < n; ++i)
                tr += Mk(i, i);
            c[n - k] = -tr / Rational(static_cast<long>(k));
        }
        return RatPoly(c);
    }

private:
    std::size_t n_;
    std::vector<Elem> table_;
    IntPoly defining_;
};

/// True when every coordinate is an integer.
inline bool is_integral_vec(const Elem& a)
{
    for (auto& c : a)
        if (c.get_den() != 1)
            return false;
    return true;
}

inline Integer common_denominator(const Elem& a)
{
    Integer d = 1;
    for (auto& c : a)
        d = lcm(d, c.get_den());
    return d;
}

inline IntVec to_int_vec(const Elem& a)
{
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ensure(a[i].get_den() == 1, "to-int-vec", "non-integral coordinate");
        r[i] = a[i].get_num();
    }
    return r;
}

} // namespace uchida::nf

#endif
