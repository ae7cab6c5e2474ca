#ifndef UCHIDA_NF_EMBEDDING_HPP
#define UCHIDA_NF_EMBEDDING_HPP

#include <algorithm>
#include <vector>

#include "uchida/nf/algebra.hpp"
#include "uchida/nf/interval.hpp"
#include "uchida/nf/order.hpp"

namespace uchida::nf {

/// Runs f(bits) at start, 2*start, ... bits until it stops throwing
/// Errc::precision, or the ceiling is passed.
template <class F>
auto with_precision_ladder(F&& f, mpfr_prec_t start = current_precision(), mpfr_prec_t ceiling = 8192)
{
    for (mpfr_prec_t bits = start;; bits *= 2) {
        PrecisionScope scope(bits);
        try {
            return f(bits);
        } catch (const Error& e) {
            if (e.code() != Errc::precision || bits * 2 > ceiling)
                throw;
        }
    }
}

namespace detail {

template <class Coeff>
CInterval horner(const std::vector<Coeff>& c, const CInterval& z)
{
    CInterval acc{Interval(0L), Interval(0L)};
    for (std::size_t i = c.size(); i-- > 0;)
        acc = acc * z + CInterval{Interval(c[i]), Interval(0L)};
    return acc;
}

/// Radius of a disk about z that certainly holds a root of f:
/// deg * |f(z)| / |f'(z)|.
inline Interval root_radius(const IntPoly& f, const IntPoly& df, const CInterval& z)
{
    Interval num = horner(f.coeffs(), z).abs();
    Interval den = horner(df.coeffs(), z).abs();
    if (den.contains_zero())
        fail(Errc::precision, "root-radius", "derivative not separated from zero");
    Interval r = Interval(static_cast<long>(f.degree())) * num / den;
    return Interval::hull(r, r).abs();
}

inline bool disks_disjoint(const CInterval& a, const Interval& ra, const CInterval& b, const Interval& rb)
{
    Interval dist = (a - b).abs();
    return certainly_less(ra + rb, dist);
}

} // namespace detail

/// Certified enclosures of all complex roots of a squarefree monic integer
/// polynomial: real roots ascending, then roots with positive imaginary
/// part by real part, then their conjugates in the same order.
struct RootEnclosures {
    std::vector<CInterval> roots;
    std::size_t real_count = 0;
    mpfr_prec_t bits = 0;
};

inline RootEnclosures enclose_roots(const IntPoly& f)
{
    const int n = f.degree();
    ensure(n >= 1 && f.leading() == 1, "enclose-roots", "monic polynomial expected");
    const IntPoly df = f.derivative();
    const mpfr_prec_t bits = current_precision();

    // Durand-Kerner on point values, started on a circle of Cauchy radius.
    Integer cm = 0;
    for (int i = 0; i < n; ++i)
        cm = std::max(cm, Integer(abs(f.coeff(static_cast<std::size_t>(i)))));
    Interval R = Interval(Integer(cm + 1));
    std::vector<CInterval> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double ang = 6.283185307179586 * k / n + 0.4;
        z[static_cast<std::size_t>(k)] = CInterval{(R * Interval(Rational(static_cast<long>(std::cos(ang) * 1e6), 1000000))).midpoint(),
                                                   (R * Interval(Rational(static_cast<long>(std::sin(ang) * 1e6), 1000000))).midpoint()};
    }
    const long max_iter = 200 + 20L * static_cast<long>(bits);
    for (long it = 0; it < max_iter; ++it) {
        double worst = 0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            CInterval den{Interval(1L), Interval(0L)};
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k)
                    den = den * (z[k] - z[j]);
            if (den.abs2().contains_zero())
                continue;
            CInterval step = (detail::horner(f.coeffs(), z[k]) / den).midpoint();
            z[k] = (z[k] - step).midpoint();
            double rel = (step.abs() / (z[k].abs() + Interval(1L))).upper();
            worst = std::max(worst, rel);
        }
        if (worst < std::ldexp(1.0, -static_cast<int>(std::min<mpfr_prec_t>(bits, 1000)) + 8))
            break;
    }
    // Newton polish
    for (int round = 0; round < 3; ++round)
        for (auto& w : z) {
            CInterval d = detail::horner(df.coeffs(), w);
            if (!d.abs2().contains_zero())
                w = (w - (detail::horner(f.coeffs(), w) / d).midpoint()).midpoint();
        }

    RootEnclosures out;
    out.bits = bits;
    std::vector<CInterval> reals, uppers;
    std::vector<Interval> rad_real, rad_upper;
    for (auto& w : z) {
        Interval r = detail::root_radius(f, df, w);
        if (!certainly_less(r, w.im.abs())) {
            // straddles the axis: re-centre on the real line
            CInterval c{w.re, Interval(0L)};
            Interval rc = detail::root_radius(f, df, c);
            reals.push_back(c);
            rad_real.push_back(rc);
        } else if (w.im.positive()) {
            uppers.push_back(w);
            rad_upper.push_back(r);
        }
    }
    if (reals.size() + 2 * uppers.size() != static_cast<std::size_t>(n))
        fail(Errc::precision, "root-count", "root approximations did not separate");

    std::vector<CInterval> all;
    std::vector<Interval> rad;
    for (std::size_t i = 0; i < reals.size(); ++i) {
        all.push_back(reals[i]);
        rad.push_back(rad_real[i]);
    }
    for (std::size_t i = 0; i < uppers.size(); ++i) {
        all.push_back(uppers[i]);
        rad.push_back(rad_upper[i]);
        if (!certainly_less(rad_upper[i], uppers[i].im))
            fail(Errc::precision, "root-axis", "complex root disk meets the real axis");
    }
    for (std::size_t i = 0; i < uppers.size(); ++i) {
        all.push_back(uppers[i].conj());
        rad.push_back(rad_upper[i]);
    }
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (!detail::disks_disjoint(all[i], rad[i], all[j], rad[j]))
                fail(Errc::precision, "root-overlap", "root disks overlap");

    // Disjoint disks, one per root: each holds exactly one root, and a disk
    // centred on the real axis holds a real root.
    std::vector<std::size_t> order_r(reals.size()), order_u(uppers.size());
    for (std::size_t i = 0; i < order_r.size(); ++i)
        order_r[i] = i;
    for (std::size_t i = 0; i < order_u.size(); ++i)
        order_u[i] = i;
    std::sort(order_r.begin(), order_r.end(), [&](auto a, auto b) { return certainly_less(reals[a].re, reals[b].re); });
    std::sort(order_u.begin(), order_u.end(), [&](auto a, auto b) { return certainly_less(uppers[a].re, uppers[b].re); });
    auto boxed = [](const CInterval& c, const Interval& r) {
        return CInterval{Interval::ball(c.re, r), c.im.contains_zero() && c.im.width().upper() == 0 ? Interval(0L) : Interval::ball(c.im, r)};
    };
    for (auto i : order_r)
        out.roots.push_back(boxed(reals[i], rad_real[i]));
    for (auto i : order_u)
        out.roots.push_back(boxed(uppers[i], rad_upper[i]));
    for (auto i : order_u)
        out.roots.push_back(boxed(uppers[i], rad_upper[i]).conj());
    out.real_count = reals.size();
    for (auto& r : out.roots)
        if (r.re.rel_width() > std::ldexp(1.0, -static_cast<int>(std::min<mpfr_prec_t>(bits, 1000)) / 2))
            fail(Errc::precision, "root-width", "root enclosure too wide");
    return out;
}

/// Infinite places of K (one real, one complex) or of KF (three complex
/// places (r_k, sqrt d -> i sqrt|d|)), with interval images of every
/// algebra basis element.
class EmbeddingData {
public:
    /// K = Q[x]/f for a monic integer cubic: one place per real root, then
    /// one per complex pair (the root with positive imaginary part).
    static EmbeddingData of_cubic(const IntPoly& f)
    {
        EmbeddingData e;
        e.roots_ = enclose_roots(f);
        e.bits_ = e.roots_.bits;
        const std::size_t places = e.roots_.real_count + (3 - e.roots_.real_count) / 2;
        for (std::size_t k = 0; k < places; ++k) {
            Place p;
            p.real = k < e.roots_.real_count;
            CInterval pw{Interval(1L), Interval(0L)};
            for (int i = 0; i < 3; ++i) {
                p.basis.push_back(pw);
                pw = pw * e.roots_.roots[k];
            }
            e.places_.push_back(std::move(p));
        }
        return e;
    }

    /// KF with basis pi^i sqrt(d)^j at index i + 3j.
    static EmbeddingData of_compositum(const IntPoly& f, const Integer& d)
    {
        EmbeddingData e;
        e.roots_ = enclose_roots(f);
        e.bits_ = e.roots_.bits;
        ensure(d < 0, "embedding-d", "imaginary quadratic d expected");
        CInterval sq{Interval(0L), Interval(Integer(-d)).sqrt()};
        for (std::size_t k = 0; k < 3; ++k) {
            Place p;
            p.real = false;
            p.basis.resize(6);
            CInterval pw{Interval(1L), Interval(0L)};
            for (std::size_t i = 0; i < 3; ++i) {
                p.basis[i] = pw;
                p.basis[i + 3] = pw * sq;
                pw = pw * e.roots_.roots[k];
            }
            e.places_.push_back(std::move(p));
        }
        return e;
    }

    std::size_t place_count() const { return places_.size(); }
    bool is_real(std::size_t k) const { return places_[k].real; }
    mpfr_prec_t bits() const { return bits_; }
    const RootEnclosures& roots() const { return roots_; }

    CInterval image(std::size_t k, const Elem& x) const
    {
        const auto& b = places_[k].basis;
        CInterval acc{Interval(0L), Interval(0L)};
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != 0)
                acc = acc + b[i] * Interval(x[i]);
        return acc;
    }

    /// log|x|_v, doubled at complex places.
    Interval log_abs(std::size_t k, const Elem& x) const
    {
        Interval l = image(k, x).abs2().log();
        return places_[k].real ? l * Interval(Rational(1, 2)) : l;
    }

    /// T2(x) = sum over all complex embeddings of |x|^2.
    Interval t2(const Elem& x) const
    {
        Interval s(0L);
        for (std::size_t k = 0; k < places_.size(); ++k) {
            Interval a = image(k, x).abs2();
            s += places_[k].real ? a : a * Interval(2L);
        }
        return s;
    }

    /// Real coordinates whose squared length is T2: x_v for real v,
    /// sqrt2 Re and sqrt2 Im for complex v.
    std::vector<Interval> real_coords(const Elem& x) const
    {
        std::vector<Interval> out;
        Interval s2 = Interval(2L).sqrt();
        for (std::size_t k = 0; k < places_.size(); ++k) {
            CInterval z = image(k, x);
            if (places_[k].real)
                out.push_back(z.re);
            else {
                out.push_back(z.re * s2);
                out.push_back(z.im * s2);
            }
        }
        return out;
    }

private:
    struct Place {
        std::vector<CInterval> basis;
        bool real = false;
    };
    RootEnclosures roots_;
    std::vector<Place> places_;
    mpfr_prec_t bits_ = 0;
};

} // namespace uchida::nf

#endif
