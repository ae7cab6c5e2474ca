#ifndef UCHIDA_CORE_ALPHA_HPP
#define UCHIDA_CORE_ALPHA_HPP

#include <vector>

#include "uchida/core/instance.hpp"

namespace uchida::core {

using QuadPoly = std::vector<QuadNumber>; // low to high

inline QuadPoly qpoly_mul(const QuadPoly& a, const QuadPoly& b, const Integer& d)
{
    QuadPoly r(a.size() + b.size() - 1, QuadNumber{0, 0});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = r[i + j] + nf::mul(a[i], b[j], d);
    return r;
}

/// f(g(x)) for polynomials over F.
inline QuadPoly qpoly_compose(const QuadPoly& f, const QuadPoly& g, const Integer& d)
{
    QuadPoly acc{QuadNumber{0, 0}};
    for (std::size_t i = f.size(); i-- > 0;) {
        acc = qpoly_mul(acc, g, d);
        acc[0] = acc[0] + f[i];
    }
    while (acc.size() > 1 && acc.back() == QuadNumber{0, 0})
        acc.pop_back();
    return acc;
}

/// Evaluates an F-polynomial at an element of KF.
inline Elem qpoly_eval(const GaloisCubic& G, const QuadPoly& f, const Elem& x)
{
    const nf::Algebra& A = G.algebra();
    Elem acc = A.zero();
    for (std::size_t i = f.size(); i-- > 0;)
        acc = A.add(A.mul(acc, x), G.embed_F(f[i]));
    return acc;
}

struct AlphaData {
    Elem alpha;     // (pi - pi^sigma) / (3 pi)
    Elem ratio;     // pi^sigma / pi
    QuadPoly h1;    // minimal polynomial of ratio over F
    QuadPoly h;     // minimal polynomial of alpha over F
    QuadNumber norm_F;      // N_{KF/F}(alpha)
    int norm_F_sign = 0;    // norm_F = sign * sqrt(4m-27) / 27
    QuadNumber norm_F_root; // r with r^n = norm_F
    Rational norm_Q;        // N_{KF/Q}(alpha)
    QuadNumber trace;       // Tr_{KF/F}(alpha)
    QuadNumber trace_pair;  // Tr_{KF/F}(alpha alpha^sigma)
    bool trace_in_3OF = false;
    bool trace_pair_in_3OF = false;
    QuadNumber trace_identity;       // Tr_{KF/F}((pi+m-6)(pi^sigma+m-6))
    Rational trace_identity_expected; // ((4m-61)(4m-27)+81)/16
};

/// Builds alpha and checks h1, h, integrality and h(alpha) = 0 exactly.
/// A failed check is a hard error: these are theorems for every instance.
inline AlphaData alpha_data(const UchidaInstance& I)
{
    const GaloisCubic& G = I.G();
    const nf::Algebra& A = G.algebra();
    const Integer& d = I.d();
    const Integer& m = I.m();
    AlphaData out;
    const Elem& pi = G.pi();
    const Elem& ps = G.pi_sigma();
    out.ratio = A.div(ps, pi);
    out.alpha = A.div(A.sub(pi, ps), A.scale(pi, Rational(3)));

    // h1(x) = x^3 - ((2m-3+sq)/2) x^2 + ((2m-3-sq)/2) x - 1, sq = S sqrt d
    QuadNumber sq{0, Rational(I.S())};
    QuadNumber c2 = (QuadNumber{Rational(2 * m - 3), 0} + sq).scaled(Rational(-1, 2));
    QuadNumber c1 = (QuadNumber{Rational(2 * m - 3), 0} - sq).scaled(Rational(1, 2));
    out.h1 = {QuadNumber{-1, 0}, c1, c2, QuadNumber{1, 0}};
    ensure(G.charpoly_F(out.ratio) == out.h1, "h1-formula", "char poly of pi^sigma/pi differs from h1");

    // h(x) = -(1/27) h1(1 - 3x)
    QuadPoly lin{QuadNumber{1, 0}, QuadNumber{-3, 0}};
    out.h = qpoly_compose(out.h1, lin, d);
    for (auto& c : out.h)
        c = c.scaled(Rational(-1, 27));
    ensure(G.charpoly_F(out.alpha) == out.h, "h-formula", "char poly of alpha differs from -(1/27) h1(1-3x)");
    for (auto& c : out.h)
        ensure(c.is_integral(), "h-integrality", "coefficient " + nf::to_string(c) + " of h is not in O_F");
    ensure(A.is_zero(qpoly_eval(G, out.h, out.alpha)), "h-root", "h(alpha) != 0");

    out.norm_F = G.norm_F(out.alpha);
    QuadNumber target{0, frac(I.S(), 27)};
    if (out.norm_F == target)
        out.norm_F_sign = 1;
    else if (out.norm_F == -target)
        out.norm_F_sign = -1;
    ensure(out.norm_F_sign != 0, "norm-F", "N_{KF/F}(alpha) is not +-sqrt(4m-27)/27");
    // sqrt(4m-27)/27 = (a^(2^(s-1)) sqrt d)^n, and n is odd
    out.norm_F_root = QuadNumber{0, Rational(ipow(I.a(), 1UL << (I.s() - 1)) * out.norm_F_sign)};
    {
        QuadNumber pw{1, 0};
        for (unsigned long i = 0; i < I.n(); ++i)
            pw = nf::mul(pw, out.norm_F_root, d);
        ensure(pw == out.norm_F, "norm-F-power", "N_{KF/F}(alpha) is not the n-th power of the recorded root");
    }
    out.norm_Q = G.norm_Q(out.alpha);
    ensure(out.norm_Q == Rational(-ipow(d, I.n()) * ipow(I.a(), I.n() << I.s())), "norm-Q",
           "N_{KF/Q}(alpha) != |d|^n a^(2^s n)");

    out.trace = G.trace_F(out.alpha);
    out.trace_pair = G.trace_F(A.mul(out.alpha, G.sigma(out.alpha)));
    out.trace_in_3OF = out.trace.divisible_by(3);
    out.trace_pair_in_3OF = out.trace_pair.divisible_by(3);

    Elem shift = A.scalar(Rational(m - 6));
    out.trace_identity = G.trace_F(A.mul(A.add(pi, shift), A.add(ps, shift)));
    out.trace_identity_expected = frac((4 * m - 61) * (4 * m - 27) + 81, 16);
    return out;
}

} // namespace uchida::core

#endif
