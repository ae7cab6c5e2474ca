#ifndef UCHIDA_NF_COMPOSITUM_HPP
#define UCHIDA_NF_COMPOSITUM_HPP

#include <memory>
#include <set>

#include "uchida/nf/cubic_field.hpp"
#include "uchida/nf/quadratic.hpp"

namespace uchida::nf {

/// The cyclic cubic extension A / F generated by a root pi of
/// u(x) = x^3 + m(x+1)^2, where disc(u) = m^2 (4m-27) and
/// sqrt(4m-27) = S * sqrt(d) lies in F.
///
/// Two shapes share this code:
///  - KF = K (x) Q(sqrt d), basis pi^i sqrt(d)^j at index i + 3j (d nonsquare);
///  - the cyclic cubic field itself when 4m-27 is a rational square
///    (sqrt_d = 1, A = K).
///
/// sigma is fixed by Tr_{A/F}(pi^sigma / pi) = (2m - 3 + S sqrt d) / 2.
class GaloisCubic {
public:
    GaloisCubic(const CubicField& K, Integer m, Integer S, std::optional<Integer> d) : K_(K), m_(std::move(m)), S_(std::move(S))
    {
        const Algebra& AK = K_.algebra();
        if (d) {
            d_ = *d;
            auto AF = Algebra::power_basis(IntPoly({-d_, 0, 1}));
            A_ = std::make_shared<const Algebra>(Algebra::tensor(AK, AF));
            sqrt_d_ = A_->basis(3);
        } else {
            d_ = 1;
            A_ = K_.algebra_ptr();
            sqrt_d_ = A_->one();
        }
        ensure(Rational(S_ * S_ * d_) == Rational(4 * m_ - 27), "galois-sqrt", "S^2 d != 4m - 27");

        pi_ = embed_K(K_.pi());
        const Algebra& A = *A_;
        // pi^sigma = (-m - pi + delta)/2, delta = +-m S sqrt(d) / u'(pi)
        Elem up = A.add(A.scale(A.mul(pi_, pi_), 3), A.scale(A.add(pi_, A.one()), 2 * Rational(m_)));
        Elem delta = A.mul(A.scale(sqrt_d_, Rational(Integer(m_ * S_))), A.inverse(up));
        Elem target = A.add(A.scalar(frac(2 * m_ - 3, 2)), A.scale(sqrt_d_, frac(S_, 2)));
        bool oriented = false;
        for (int sign : {1, -1}) {
            Elem ps = A.scale(A.add(A.sub(A.scalar(Rational(-m_)), pi_), A.scale(delta, sign)), Rational(1, 2));
            build_sigma(ps);
            if (trace_rel(A.div(ps, pi_)) == target) {
                oriented = true;
                break;
            }
        }
        ensure(oriented, "sigma-orientation", "neither root orientation gives the fixed trace");
        self_check();
    }

    const CubicField& K() const { return K_; }
    const Algebra& algebra() const { return *A_; }
    std::shared_ptr<const Algebra> algebra_ptr() const { return A_; }
    bool is_compositum() const { return A_->dim() == 6; }
    const Integer& m() const { return m_; }
    const Integer& S() const { return S_; }
    const Integer& d() const { return d_; }
    const Elem& pi() const { return pi_; }
    const Elem& pi_sigma() const { return pi_sigma_; }
    const Elem& sqrt_d() const { return sqrt_d_; }
    const RatMatrix& sigma_matrix() const { return sigma_; }

    /// K element (power-basis coordinates) as an element of A.
    Elem embed_K(const Elem& x) const
    {
        Elem r = A_->zero();
        for (std::size_t i = 0; i < 3; ++i)
            r[i] = x[i];
        return r;
    }

    /// Back to K, requiring the element to lie in K.
    Elem restrict_K(const Elem& x) const
    {
        for (std::size_t i = 3; i < x.size(); ++i)
            ensure(x[i] == 0, "restrict-K", "element is not in K");
        return Elem(x.begin(), x.begin() + 3);
    }

    /// Element of F = Q(sqrt d) inside A.
    Elem embed_F(const QuadNumber& q) const { return A_->add(A_->scalar(q.a), A_->scale(sqrt_d_, q.b)); }

    QuadNumber restrict_F(const Elem& x) const
    {
        if (!is_compositum()) {
            for (std::size_t i = 1; i < x.size(); ++i)
                ensure(x[i] == 0, "restrict-F", "element is not rational");
            return {x[0], 0};
        }
        for (std::size_t i : {1, 2, 4, 5})
            ensure(x[i] == 0, "restrict-F", "element is not in F");
        return {x[0], x[3]};
    }

    Elem sigma(const Elem& x) const { return sigma_ * x; }
    Elem sigma2(const Elem& x) const { return sigma(sigma(x)); }

    /// sqrt(d) -> -sqrt(d); identity on K.  Only meaningful for KF.
    Elem tau(Elem x) const
    {
        ensure(is_compositum(), "tau-base", "tau acts on KF only");
        for (std::size_t i = 3; i < 6; ++i)
            x[i] = -x[i];
        return x;
    }

    Elem trace_rel(const Elem& x) const { return A_->add(A_->add(x, sigma(x)), sigma2(x)); }
    Elem norm_rel(const Elem& x) const { return A_->mul(A_->mul(x, sigma(x)), sigma2(x)); }
    QuadNumber trace_F(const Elem& x) const { return restrict_F(trace_rel(x)); }
    QuadNumber norm_F(const Elem& x) const { return restrict_F(norm_rel(x)); }

    /// N_{KF/K}(x) = x * tau(x).
    Elem norm_K(const Elem& x) const { return restrict_K(A_->mul(x, tau(x))); }
    Rational norm_Q(const Elem& x) const { return A_->norm(x); }

    /// Characteristic polynomial of x over F, as F-coefficients low to high.
    std::vector<QuadNumber> charpoly_F(const Elem& x) const
    {
        const Algebra& A = *A_;
        Elem s1 = sigma(x), s2 = sigma(s1);
        QuadNumber e1 = restrict_F(A.add(A.add(x, s1), s2));
        QuadNumber e2 = restrict_F(A.add(A.add(A.mul(x, s1), A.mul(x, s2)), A.mul(s1, s2)));
        QuadNumber e3 = restrict_F(A.mul(A.mul(x, s1), s2));
        return {-e3, e2, -e1, {1, 0}};
    }

private:
    void build_sigma(const Elem& ps)
    {
        const Algebra& A = *A_;
        pi_sigma_ = ps;
        const std::size_t n = A.dim();
        sigma_ = RatMatrix(n, n);
        for (std::size_t j = 0; j < n / 3; ++j)
            for (std::size_t i = 0; i < 3; ++i)
                sigma_.set_column(i + 3 * j, A.mul(A.pow(ps, i), A.pow(sqrt_d_, j)));
    }

    void self_check() const
    {
        const Algebra& A = *A_;
        // pi^sigma is a root of u
        Elem u = A.add(A.mul(A.mul(pi_sigma_, pi_sigma_), pi_sigma_),
                       A.scale(A.mul(A.add(pi_sigma_, A.one()), A.add(pi_sigma_, A.one())), Rational(m_)));
        ensure(A.is_zero(u), "sigma-root", "pi^sigma is not a root of u");
        ensure(sigma(sigma(sigma(pi_))) == pi_, "sigma-order", "sigma^3 != id on pi");
        ensure(!(sigma(pi_) == pi_), "sigma-trivial", "sigma fixes pi");
        ensure(sigma(sqrt_d_) == sqrt_d_, "sigma-sqrt", "sigma moves sqrt d");
        for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t j = 0; j < A.dim(); ++j)
                ensure(sigma(A.mul(A.basis(i), A.basis(j))) == A.mul(sigma(A.basis(i)), sigma(A.basis(j))),
                       "sigma-hom", "sigma is not multiplicative");
        Elem tr = trace_rel(pi_);
        ensure(tr == A.scalar(Rational(-m_)), "sigma-trace", "pi + pi^sigma + pi^sigma^2 != -m");
    }

    CubicField K_;
    Integer m_, S_, d_;
    std::shared_ptr<const Algebra> A_;
    Elem pi_, pi_sigma_, sqrt_d_;
    RatMatrix sigma_;
};

/// Maximal order of KF: O_K (x) O_F made p-maximal at the primes dividing
/// both disc(K) and d, which are the only primes where the tensor product
/// of maximal orders can fail to be maximal.  When the order of K is only
/// known maximal at some primes, the result is maximal at those primes
/// that also appear in `extra`.
inline Order compositum_maximal_order(const GaloisCubic& G, const std::vector<Integer>& extra = {})
{
    ensure(G.is_compositum(), "kf-order", "compositum expected");
    const Order& OK = G.K().order();
    const Algebra& A = G.algebra();
    std::vector<Elem> cols;
    Elem omega = A.scale(A.add(A.one(), G.sqrt_d()), Rational(1, 2));
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t i = 0; i < 3; ++i) {
            Elem w = G.embed_K(OK.basis().column(i));
            cols.push_back(j == 0 ? w : A.mul(w, omega));
        }
    RatMatrix B(6, 6);
    for (std::size_t j = 0; j < 6; ++j)
        B.set_column(j, cols[j]);
    Order O(G.algebra_ptr(), B);
    Integer g = gcd(G.K().disc(), G.d());
    std::set<Integer> ps;
    for (auto& p : factorize(g).require_complete().primes())
        ps.insert(p);
    for (auto& p : extra)
        ps.insert(p);
    for (auto& p : ps)
        O = p_maximal(O, p);
    return O;
}

} // namespace uchida::nf

#endif
