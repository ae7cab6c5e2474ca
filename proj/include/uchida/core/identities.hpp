#ifndef UCHIDA_CORE_IDENTITIES_HPP
#define UCHIDA_CORE_IDENTITIES_HPP

#include <random>

#include "uchida/core/alpha.hpp"

namespace uchida::core {

/// Small random (d, n, s, a) satisfying the instance preconditions.
/// |d| <= dmax, n odd <= 7, s <= 3, a odd < 100.
inline InstanceParams random_params(std::mt19937_64& rng, long dmax = 200)
{
    std::uniform_int_distribution<long> dd(1, dmax), nn(0, 3), ss(1, 3), aa(0, 49);
    InstanceParams p;
    for (;;) {
        long d = -dd(rng);
        if (mod(Integer(d), 4) != 1)
            continue;
        bool squarefree = true;
        for (long q = 2; q * q <= -d; ++q)
            if ((-d) % (q * q) == 0)
                squarefree = false;
        if (!squarefree)
            continue;
        p.d = d;
        break;
    }
    p.n = 2 * nn(rng) + 1;
    p.s = ss(rng);
    p.a = 2 * aa(rng) + 1;
    return p;
}

/// Instance with a deliberately small factoring budget: the identities do
/// not need the maximal order, so an unfactored m is fine here.
inline UchidaInstance quick_instance(const InstanceParams& p)
{
    return build_instance(p.d, p.n, p.s, p.a, FactorBudget{200, 0});
}

struct IdentityCheck {
    bool disc_u = false;       // disc(u) = m^2 (4m - 27)
    bool four_m = false;       // 4m - 27 = 3^6 d^n a^(2^s n)
    bool shifted = false;      // u(x) - (x+3)^2 (x+m-6) = (27-4m)(x+2)
    bool minpoly = false;      // charpoly(pi + 1) = x^3 + (m-3)x^2 + 3x - 1
    bool trace_pair = false;   // Tr((pi+m-6)(pi^sigma+m-6)) = ((4m-61)(4m-27)+81)/16

    bool all() const { return disc_u && four_m && shifted && minpoly && trace_pair; }
};

namespace detail {

inline IdentityCheck check_identities(const InstanceParams& p, const Integer& m, const IntPoly& u, const nf::CubicField& K,
                                      const nf::GaloisCubic& G)
{
    IdentityCheck r;
    r.disc_u = poly_discriminant(u) == m * m * (4 * m - 27);
    r.four_m = 4 * m - 27 == 729 * ipow(p.d, p.n) * ipow(p.a, p.n << p.s);
    IntPoly x3({Integer(3), Integer(1)});
    IntPoly lhs = u - x3 * x3 * IntPoly({m - 6, Integer(1)});
    r.shifted = lhs == IntPoly({2 * (27 - 4 * m), 27 - 4 * m});

    const nf::Algebra& AK = K.algebra();
    RatPoly cp = AK.charpoly(AK.add(K.pi(), AK.one()));
    r.minpoly = cp == RatPoly({Rational(-1), Rational(3), Rational(m - 3), Rational(1)});

    const nf::Algebra& A = G.algebra();
    Elem shift = A.scalar(Rational(m - 6));
    nf::QuadNumber tr = G.trace_F(A.mul(A.add(G.pi(), shift), A.add(G.pi_sigma(), shift)));
    r.trace_pair = tr == nf::QuadNumber{frac((4 * m - 61) * (4 * m - 27) + 81, 16), 0};
    return r;
}

} // namespace detail

inline IdentityCheck check_identities(const UchidaInstance& I)
{
    return detail::check_identities(I.params(), I.m(), I.u(), I.K(), I.G());
}

/// Same checks straight from the parameters.  None of the identities needs
/// the maximal order, so this stays on the equation order of u and skips
/// factoring m, which is most of the cost of a full instance.
inline IdentityCheck check_identities(const InstanceParams& p)
{
    const unsigned long ea = p.n << p.s;
    Integer q = 729 * ipow(p.d, p.n) * ipow(p.a, ea);
    ensure(mod(q + 27, 4) == 0, "m-integral", "3^6 d^n a^(2^s n) + 27 is not divisible by 4");
    Integer m = (q + 27) / 4;
    Integer S = 27 * ipow(p.a, ea / 2) * ipow(p.d, (p.n - 1) / 2);
    IntPoly u = uchida_poly(m);
    nf::CubicField K(u, {}, true, false);
    nf::GaloisCubic G(K, m, S, std::optional<Integer>(p.d));
    return detail::check_identities(p, m, u, K, G);
}

/// The parity facts about alpha (alpha_data already asserts h and h(alpha) = 0).
struct AlphaParity {
    bool h_integral = false;
    bool trace_in_3 = false;
    bool trace_pair_not_in_3 = false;
    bool h_root = false;

    bool all() const { return h_integral && trace_in_3 && trace_pair_not_in_3 && h_root; }
};

inline AlphaParity check_alpha_parity(const UchidaInstance& I)
{
    AlphaParity r;
    AlphaData ad = alpha_data(I);
    r.h_integral = std::all_of(ad.h.begin(), ad.h.end(), [](const nf::QuadNumber& c) { return c.is_integral(); });
    r.trace_in_3 = ad.trace_in_3OF;
    r.trace_pair_not_in_3 = !ad.trace_pair_in_3OF;
    r.h_root = I.G().algebra().is_zero(qpoly_eval(I.G(), ad.h, ad.alpha));
    return r;
}

} // namespace uchida::core

#endif
