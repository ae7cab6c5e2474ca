#ifndef UCHIDA_NF_IDEAL_HPP
#define UCHIDA_NF_IDEAL_HPP

#include <algorithm>
#include <vector>

#include "uchida/nf/order.hpp"

namespace uchida::nf {

/// Nonzero integral ideal of an order, as a column HNF in order coordinates.
struct Ideal {
    IntMatrix hnf;

    Integer norm() const
    {
        Integer r = 1;
        for (std::size_t i = 0; i < hnf.rows(); ++i)
            r *= hnf(i, i);
        return r;
    }
    bool is_unit() const { return norm() == 1; }
    bool contains(const IntVec& x) const { return lattice_coords(hnf, x).has_value(); }
    /// Smallest positive rational integer in the ideal.
    Integer minimum() const { return hnf(0, 0); }

    friend bool operator==(const Ideal& a, const Ideal& b) { return a.hnf == b.hnf; }
    friend bool operator<(const Ideal& a, const Ideal& b)
    {
        const std::size_t n = a.hnf.rows();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                if (a.hnf(i, j) != b.hnf(i, j))
                    return a.hnf(i, j) < b.hnf(i, j);
        return false;
    }
};

inline Ideal unit_ideal(const Order& O) { return Ideal{IntMatrix::identity(O.dim())}; }

/// Ideal generated by the given elements.  When D > 0 it must lie in the
/// ideal; it is added as a generator and used as HNF modulus.
inline Ideal ideal_from_generators(const Order& O, const std::vector<IntVec>& gens, const Integer& D = 0)
{
    const std::size_t n = O.dim();
    std::vector<IntVec> cols;
    for (auto& g : gens) {
        IntMatrix m = O.mult_matrix(g);
        for (std::size_t j = 0; j < n; ++j)
            cols.push_back(m.column(j));
    }
    if (D > 0)
        for (std::size_t i = 0; i < n; ++i) {
            IntVec e(n, Integer(0));
            e[i] = D;
            cols.push_back(e);
        }
    ensure(!cols.empty(), "ideal-empty", "no generators");
    IntMatrix A = IntMatrix::from_columns(cols, n);
    return Ideal{hnf(A, D)};
}

inline Ideal principal_ideal(const Order& O, const IntVec& x)
{
    Integer N = abs(O.norm(x));
    if (N == 0)
        fail(Errc::precondition, "ideal-zero", "principal ideal of zero");
    return ideal_from_generators(O, {x}, N);
}

inline Ideal ideal_add(const Ideal& I, const Ideal& J)
{
    const std::size_t n = I.hnf.rows();
    IntMatrix A(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            A(i, j) = I.hnf(i, j);
            A(i, n + j) = J.hnf(i, j);
        }
    return Ideal{hnf(A, gcd(I.minimum(), J.minimum()))};
}

inline Ideal ideal_mul(const Order& O, const Ideal& I, const Ideal& J)
{
    const std::size_t n = O.dim();
    std::vector<IntVec> cols;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            cols.push_back(O.mul(I.hnf.column(a), J.hnf.column(b)));
    return Ideal{hnf(IntMatrix::from_columns(cols, n), I.minimum() * J.minimum())};
}

inline Ideal ideal_pow(const Order& O, Ideal I, unsigned long k)
{
    Ideal r = unit_ideal(O);
    while (k) {
        if (k & 1)
            r = ideal_mul(O, r, I);
        k >>= 1;
        if (k)
            I = ideal_mul(O, I, I);
    }
    return r;
}

/// I * x for an order element x.
inline Ideal ideal_mul_elem(const Order& O, const Ideal& I, const IntVec& x)
{
    const std::size_t n = O.dim();
    std::vector<IntVec> cols;
    for (std::size_t a = 0; a < n; ++a)
        cols.push_back(O.mul(I.hnf.column(a), x));
    return Ideal{hnf(IntMatrix::from_columns(cols, n), I.minimum() * abs(O.norm(x)))};
}

/// Prime ideal of a p-maximal order with residue data and an
/// anti-uniformizer b (b P subset pO, b not in pO) used for valuations.
struct PrimeIdeal {
    Integer p;
    Ideal ideal;
    unsigned e = 0;
    unsigned f = 0;
    IntVec anti;

    Integer norm() const { return ideal.norm(); }
};

namespace detail {

inline IntVec anti_uniformizer(const Order& O, const Ideal& P, const Integer& p)
{
    const std::size_t n = O.dim();
    IntMatrix A(n * n, n);
    for (std::size_t j = 0; j < n; ++j) {
        IntVec w = unit_vec(n, j);
        for (std::size_t k = 0; k < n; ++k) {
            IntVec c = O.mul(w, P.hnf.column(k));
            for (std::size_t i = 0; i < n; ++i)
                A(k * n + i, j) = c[i];
        }
    }
    auto ker = kernel_mod_p(A, p);
    ensure(!ker.empty(), "anti-uniformizer", "no element of pP^-1 outside pO");
    return ker.front();
}

} // namespace detail

/// v_P(x) for a nonzero order element x.
inline long valuation(const Order& O, const PrimeIdeal& P, IntVec x)
{
    bool nonzero = false;
    for (auto& c : x)
        nonzero = nonzero || c != 0;
    if (!nonzero)
        fail(Errc::precondition, "valuation-zero", "valuation of zero");
    long v = 0;
    for (;;) {
        IntVec y = O.mul(x, P.anti);
        for (auto& c : y) {
            if (!divides(P.p, c))
                return v;
        }
        for (auto& c : y)
            c /= P.p;
        x = std::move(y);
        ++v;
    }
}

/// v_P of a nonzero algebra element (any denominator).
inline long valuation(const Order& O, const PrimeIdeal& P, const Elem& a)
{
    RatVec c = O.coords(a);
    Integer den = common_denominator(c);
    IntVec x(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        x[i] = Rational(c[i] * den).get_num();
    return valuation(O, P, x) - static_cast<long>(P.e) * static_cast<long>(arith::valuation(den, P.p));
}

inline long valuation(const Order& O, const PrimeIdeal& P, const Ideal& I)
{
    long best = -1;
    for (std::size_t j = 0; j < I.hnf.cols(); ++j) {
        long v = valuation(O, P, I.hnf.column(j));
        if (best < 0 || v < best)
            best = v;
    }
    return best;
}

inline PrimeIdeal make_prime(const Order& O, const Integer& p, Ideal P)
{
    PrimeIdeal out;
    out.p = p;
    out.f = static_cast<unsigned>(arith::valuation(P.norm(), p));
    ensure(P.norm() == ipow(p, out.f), "prime-norm", "norm of prime is not a power of p");
    out.anti = detail::anti_uniformizer(O, P, p);
    out.ideal = std::move(P);
    IntVec pe(O.dim(), Integer(0));
    pe[0] = p;
    out.e = static_cast<unsigned>(valuation(O, out, pe));
    return out;
}

namespace detail {

inline void split_to_maximal(const Order& O, const Integer& p, const Ideal& J, std::vector<Ideal>& out)
{
    const std::size_t n = O.dim();
    // x with x^p - x in J
    IntMatrix A(n, 2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        IntVec e = unit_vec(n, j);
        IntVec xp = O.pow_mod(e, p, p);
        for (std::size_t i = 0; i < n; ++i) {
            A(i, j) = xp[i] - e[i];
            A(i, n + j) = J.hnf(i, j);
        }
    }
    std::vector<IntVec> fixed;
    for (auto& v : kernel_mod_p(A, p))
        fixed.emplace_back(v.begin(), v.begin() + static_cast<long>(n));

    auto rank_with = [&](const std::vector<IntVec>& extra) {
        std::vector<IntVec> cols = extra;
        for (std::size_t j = 0; j < n; ++j)
            cols.push_back(J.hnf.column(j));
        return rank_mod_p(IntMatrix::from_columns(cols, n), p);
    };
    std::size_t rJ = rank_with({});
    std::size_t count = rank_with(fixed) - rJ;
    if (count <= 1) {
        out.push_back(J);
        return;
    }
    std::size_t r1 = rank_with({O.one()});
    for (auto& x : fixed) {
        if (rank_with({O.one(), x}) == r1)
            continue;
        RatPoly cp = Algebra::char_poly(to_rational(O.mult_matrix(x)));
        std::vector<Integer> ic;
        for (auto& c : cp.coeffs())
            ic.push_back(c.get_num());
        auto roots = roots_mod_p(IntPoly(ic), p);
        for (u64 c : roots.roots) {
            IntVec y = x;
            y[0] -= from_u64(c);
            Ideal Jc = ideal_add(J, ideal_from_generators(O, {y}, p));
            if (!Jc.is_unit())
                split_to_maximal(O, p, Jc, out);
        }
        return;
    }
    fail(Errc::internal_assertion, "prime-split", "no splitting element found");
}

} // namespace detail

/// All primes of O above p, for O p-maximal; sorted by (f, e, HNF).
inline std::vector<PrimeIdeal> primes_above(const Order& O, const Integer& p)
{
    Ideal R{p_radical(O, p)};
    std::vector<Ideal> maxes;
    detail::split_to_maximal(O, p, R, maxes);
    std::vector<PrimeIdeal> out;
    for (auto& M : maxes)
        out.push_back(make_prime(O, p, M));
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        if (a.f != b.f)
            return a.f < b.f;
        if (a.e != b.e)
            return a.e < b.e;
        return a.ideal < b.ideal;
    });
    unsigned total = 0;
    for (auto& P : out)
        total += P.e * P.f;
    ensure(total == O.dim(), "prime-degree-sum", "sum of e*f differs from the degree at p=" + p.get_str());
    return out;
}

/// prod P_i^{k_i} for nonnegative exponents.
inline Ideal ideal_product(const Order& O, const std::vector<std::pair<const PrimeIdeal*, unsigned long>>& factors)
{
    Ideal r = unit_ideal(O);
    for (auto& [P, k] : factors)
        if (k > 0)
            r = ideal_mul(O, r, ideal_pow(O, P->ideal, k));
    return r;
}

} // namespace uchida::nf

#endif
