#ifndef UCHIDA_CORE_INSTANCE_HPP
#define UCHIDA_CORE_INSTANCE_HPP

#include <cmath>
#include <memory>
#include <set>

#include "uchida/nf/compositum.hpp"

namespace uchida::core {

using namespace uchida::arith;
using nf::CubicField;
using nf::Elem;
using nf::GaloisCubic;
using nf::QuadField;
using nf::QuadNumber;

/// x^3 + m(x+1)^2 = x^3 + m x^2 + 2m x + m.
inline IntPoly uchida_poly(const Integer& m) { return IntPoly({m, 2 * m, m, Integer(1)}); }

struct InstanceParams {
    Integer d;
    unsigned long n = 1;
    unsigned long s = 1;
    Integer a;
};

/// Factorization of a product built from known factorizations.
inline PrimeFactorization combine(const std::vector<std::pair<const PrimeFactorization*, unsigned long>>& parts, int sign)
{
    std::map<Integer, unsigned long> acc;
    PrimeFactorization out;
    out.sign = sign;
    for (auto& [f, k] : parts) {
        for (auto& [p, e] : f->factors)
            acc[p] += e * k;
        for (auto& u : f->unfactored)
            for (unsigned long i = 0; i < k; ++i)
                out.unfactored.push_back(u);
    }
    for (auto& [p, e] : acc)
        out.factors.emplace_back(p, e);
    return out;
}

/// The cubic field of u(x) = x^3 + m(x+1)^2 with
/// m = (3^6 d^n a^(2^s n) + 27)/4, together with F = Q(sqrt d) and KF.
class UchidaInstance {
public:
    const InstanceParams& params() const { return p_; }
    const Integer& d() const { return p_.d; }
    unsigned long n() const { return p_.n; }
    unsigned long s() const { return p_.s; }
    const Integer& a() const { return p_.a; }
    const Integer& m() const { return m_; }
    /// 4m - 27 = 3^6 d^n a^(2^s n)
    const Integer& disc_quad() const { return q_; }
    /// sqrt(4m - 27) = S sqrt(d), S = 27 a^(2^(s-1) n) d^((n-1)/2)
    const Integer& S() const { return S_; }
    const IntPoly& u() const { return u_; }
    const PrimeFactorization& m_factors() const { return fm_; }
    const PrimeFactorization& disc_quad_factors() const { return fq_; }
    /// Primes of d * a, ascending (with 3 added: it always divides 4m - 27).
    const std::vector<Integer>& support_primes() const { return support_; }
    /// False when a could not be factored within the budget.
    bool support_complete() const { return support_complete_; }
    void require_support(const std::string& what) const
    {
        if (!support_complete_)
            fail(Errc::budget_exhausted, "a-unfactored", what + " needs the prime factors of a");
    }
    const QuadField& F() const { return *F_; }
    const CubicField& K() const { return *K_; }
    const GaloisCubic& G() const { return *G_; }

    friend UchidaInstance build_instance(const Integer& d, unsigned long n, unsigned long s, const Integer& a, const FactorBudget& budget);

private:
    InstanceParams p_;
    Integer m_, q_, S_;
    IntPoly u_;
    PrimeFactorization fm_, fq_;
    std::vector<Integer> support_;
    bool support_complete_ = true;
    std::shared_ptr<const QuadField> F_;
    std::shared_ptr<const CubicField> K_;
    std::shared_ptr<const GaloisCubic> G_;
};

/// Validates (d, n, s, a) and builds every derived object.  m is factored
/// within the budget; when that fails the order of K is maximal only at
/// the primes that were found (K().maximal() is false).
inline UchidaInstance build_instance(const Integer& d, unsigned long n, unsigned long s, const Integer& a, const FactorBudget& budget = {})
{
    if (d >= 0)
        fail(Errc::parameter, "d-positive", "d must be negative");
    if (mod(d, 4) != 1)
        fail(Errc::parameter, "d-not-1-mod-4", "d must be 1 mod 4");
    if (n == 0 || n % 2 == 0)
        fail(Errc::parameter, "n-even", "n must be odd and positive");
    if (s == 0)
        fail(Errc::parameter, "s-nonpositive", "s must be at least 1");
    if (mpz_even_p(a.get_mpz_t()))
        fail(Errc::parameter, "a-even", "a must be odd");
    if (s > 40 || static_cast<double>(n) * std::ldexp(1.0, static_cast<int>(s)) * static_cast<double>(mpz_sizeinbase(a.get_mpz_t(), 2)) > 1.0e8)
        fail(Errc::parameter, "instance-too-large", "a^(2^s n) exceeds 10^8 bits");
    auto fd = factorize(d, budget);
    fd.require_complete();
    for (auto& [p, e] : fd.factors)
        if (e > 1)
            fail(Errc::parameter, "d-not-squarefree", "d must be squarefree");

    UchidaInstance I;
    I.p_ = {d, n, s, a};
    I.F_ = std::make_shared<const QuadField>(d);
    const unsigned long ea = n << s; // 2^s n
    Integer a_pow = ipow(a, ea);
    I.q_ = 729 * ipow(d, n) * a_pow;
    ensure(mod(I.q_ + 27, 4) == 0, "m-integral", "3^6 d^n a^(2^s n) + 27 is not divisible by 4");
    I.m_ = (I.q_ + 27) / 4;
    I.S_ = 27 * ipow(a, ea / 2) * ipow(d, (n - 1) / 2);
    I.u_ = uchida_poly(I.m_);

    auto fa = factorize(a, budget);
    PrimeFactorization f3;
    f3.factors = {{Integer(3), 1}};
    I.fq_ = combine({{&f3, 6}, {&fd, n}, {&fa, ea}}, -1);
    I.fm_ = factorize(I.m_, budget);

    std::set<Integer> sp{Integer(3)};
    for (auto& p : fd.primes())
        sp.insert(p);
    for (auto& p : fa.primes())
        sp.insert(p);
    I.support_.assign(sp.begin(), sp.end());
    I.support_complete_ = fa.complete();

    // primes with p^2 | disc(u) = m^2 (4m - 27)
    std::set<Integer> sq(sp.begin(), sp.end());
    for (auto& p : I.fm_.primes())
        sq.insert(p);
    const bool complete = I.fm_.complete() && I.support_complete_;
    try {
        I.K_ = std::make_shared<const CubicField>(I.u_, std::vector<Integer>(sq.begin(), sq.end()), true, complete);
    } catch (const Error& e) {
        if (e.tag() == "reducible")
            fail(Errc::parameter, "reducible", "u(x) has a rational root");
        throw;
    }
    ensure(I.K_->poly_disc() == I.m_ * I.m_ * I.q_, "disc-u", "disc(u) != m^2 (4m - 27)");
    ensure(I.K_->poly_disc() < 0, "disc-sign", "disc(u) must be negative");
    I.G_ = std::make_shared<const GaloisCubic>(*I.K_, I.m_, I.S_, std::optional<Integer>(d));
    return I;
}

} // namespace uchida::core

#endif
