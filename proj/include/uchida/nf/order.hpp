#ifndef UCHIDA_NF_ORDER_HPP
#define UCHIDA_NF_ORDER_HPP

#include <memory>
#include <vector>

#include "uchida/nf/algebra.hpp"

namespace uchida::nf {

/// Order of an Algebra: a full Z-lattice containing 1, closed under
/// multiplication.  Stored as a rational basis in column HNF form over the
/// algebra basis, so column 0 is 1.  Elements of the order are IntVec
/// coordinates over this basis.
class Order {
public:
    Order(std::shared_ptr<const Algebra> alg, const RatMatrix& basis) : alg_(std::move(alg))
    {
        const std::size_t n = alg_->dim();
        ensure(basis.rows() == n && basis.cols() == n, "order-shape", "basis must be square");
        // normalize: HNF of the denominator-cleared lattice
        Integer den = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                den = lcm(den, basis(i, j).get_den());
        IntMatrix M(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                M(i, j) = Rational(basis(i, j) * den).get_num();
        IntMatrix H = hnf(M);
        basis_ = RatMatrix(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                basis_(i, j) = frac(H(i, j), den);
        inv_ = inverse(basis_);
        ensure(basis_.column(0) == alg_->one(), "order-one", "order basis must start with 1");

        table_.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                Elem prod = alg_->mul(basis_.column(i), basis_.column(j));
                auto c = from_algebra(prod);
                if (!c)
                    fail(Errc::precondition, "order-not-closed", "lattice is not closed under multiplication");
                table_[i * n + j] = *c;
                table_[j * n + i] = *c;
            }

        RatMatrix T(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                T(i, j) = trace(table_[i * n + j]);
        Rational dd = det(T);
        ensure(dd.get_den() == 1, "order-disc", "discriminant not integral");
        disc_ = dd.get_num();
    }

    /// Z[basis] of a power-basis algebra.
    static Order equation_order(std::shared_ptr<const Algebra> alg)
    {
        return Order(alg, to_rational(IntMatrix::identity(alg->dim())));
    }

    const Algebra& algebra() const { return *alg_; }
    std::shared_ptr<const Algebra> algebra_ptr() const { return alg_; }
    std::size_t dim() const { return alg_->dim(); }
    const RatMatrix& basis() const { return basis_; }
    const Integer& disc() const { return disc_; }

    /// Index of Z^n (the algebra's own basis lattice) in this order.
    Integer index_over_basis_lattice() const
    {
        Rational d = det(basis_);
        Rational inv = 1 / abs(d);
        ensure(inv.get_den() == 1, "order-index", "order does not contain the basis lattice");
        return inv.get_num();
    }

    Elem to_algebra(const IntVec& x) const { return basis_ * to_rational(x); }
    RatVec coords(const Elem& a) const { return inv_ * a; }
    std::optional<IntVec> from_algebra(const Elem& a) const
    {
        RatVec c = coords(a);
        if (!is_integral_vec(c))
            return std::nullopt;
        return to_int_vec(c);
    }
    IntVec require_integral(const Elem& a) const
    {
        auto c = from_algebra(a);
        if (!c)
            fail(Errc::precondition, "not-integral", "element not in the order");
        return *c;
    }

    IntVec one() const
    {
        IntVec e(dim(), Integer(0));
        e[0] = 1;
        return e;
    }

    IntVec mul(const IntVec& a, const IntVec& b) const
    {
        const std::size_t n = dim();
        IntVec r(n, Integer(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b[j] == 0)
                    continue;
                Integer c = a[i] * b[j];
                const IntVec& t = table_[i * n + j];
                for (std::size_t k = 0; k < n; ++k)
                    if (t[k] != 0)
                        r[k] += c * t[k];
            }
        }
        return r;
    }

    IntVec mul_mod(const IntVec& a, const IntVec& b, const Integer& p) const
    {
        IntVec r = mul(a, b);
        for (auto& c : r)
            c = mod(c, p);
        return r;
    }

    IntVec pow_mod(IntVec a, Integer e, const Integer& p) const
    {
        IntVec r = one();
        for (auto& c : a)
            c = mod(c, p);
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t()))
                r = mul_mod(r, a, p);
            e >>= 1;
            if (e > 0)
                a = mul_mod(a, a, p);
        }
        return r;
    }

    /// Column j = a * w_j.
    IntMatrix mult_matrix(const IntVec& a) const
    {
        const std::size_t n = dim();
        IntMatrix m(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            IntVec e(n, Integer(0));
            e[j] = 1;
            m.set_column(j, mul(a, e));
        }
        return m;
    }

    Integer trace(const IntVec& a) const
    {
        IntMatrix m = mult_matrix(a);
        Integer t = 0;
        for (std::size_t i = 0; i < dim(); ++i)
            t += m(i, i);
        return t;
    }

    Integer norm(const IntVec& a) const { return det(mult_matrix(a)); }

private:
    std::shared_ptr<const Algebra> alg_;
    RatMatrix basis_, inv_;
    std::vector<IntVec> table_;
    Integer disc_;
};

namespace detail {

inline IntVec unit_vec(std::size_t n, std::size_t i)
{
    IntVec e(n, Integer(0));
    e[i] = 1;
    return e;
}

/// Lattice spanned by the given vectors together with p*Z^n, as HNF.
inline IntMatrix span_plus_p(const std::vector<IntVec>& vs, std::size_t n, const Integer& p)
{
    IntMatrix A(n, vs.size() + n);
    for (std::size_t j = 0; j < vs.size(); ++j)
        A.set_column(j, vs[j]);
    for (std::size_t i = 0; i < n; ++i)
        A(i, vs.size() + i) = p;
    return hnf(A, p);
}

} // namespace detail

/// p-radical of O: {x in O : x^k in pO for some k}, as HNF in order
/// coordinates.  It is the kernel of x -> x^{p^j} on O/pO with p^j >= n.
inline IntMatrix p_radical(const Order& O, const Integer& p)
{
    const std::size_t n = O.dim();
    Integer q = p;
    while (q < Integer(static_cast<unsigned long>(n)))
        q *= p;
    IntMatrix F(n, n);
    for (std::size_t j = 0; j < n; ++j)
        F.set_column(j, O.pow_mod(detail::unit_vec(n, j), q, p));
    return detail::span_plus_p(kernel_mod_p(F, p), n, p);
}

/// Coordinates of the order element y in the basis (columns) of the ideal H.
inline IntVec ideal_coords(const IntMatrix& H, const IntVec& y)
{
    auto c = lattice_coords(H, y);
    ensure(c.has_value(), "ideal-coords", "element expected in the ideal");
    return *c;
}

/// One Round 2 step at p: the ring of multipliers of the p-radical.
/// Returns nullopt when O is already p-maximal.
inline std::optional<Order> round2_step(const Order& O, const Integer& p)
{
    const std::size_t n = O.dim();
    IntMatrix I = p_radical(O, p);
    // U = {y in O : y I subset p I}; rows: I-coordinates mod p of y * b_k
    IntMatrix A(n * n, n);
    for (std::size_t j = 0; j < n; ++j) {
        IntVec w = detail::unit_vec(n, j);
        for (std::size_t k = 0; k < n; ++k) {
            IntVec c = ideal_coords(I, O.mul(w, I.column(k)));
            for (std::size_t i = 0; i < n; ++i)
                A(k * n + i, j) = c[i];
        }
    }
    auto ker = kernel_mod_p(A, p);
    if (ker.empty())
        return std::nullopt;
    IntMatrix U = detail::span_plus_p(ker, n, p);
    RatMatrix B = O.basis() * to_rational(U);
    Rational invp = 1 / Rational(p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            B(i, j) *= invp;
    return Order(O.algebra_ptr(), B);
}

inline Order p_maximal(Order O, const Integer& p)
{
    while (auto next = round2_step(O, p))
        O = std::move(*next);
    return O;
}

} // namespace uchida::nf

#endif
