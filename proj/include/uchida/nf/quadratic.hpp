#ifndef UCHIDA_NF_QUADRATIC_HPP
#define UCHIDA_NF_QUADRATIC_HPP

#include <string>

#include "uchida/arith/integer.hpp"

namespace uchida::nf {

using arith::Integer;
using arith::Rational;

/// F = Q(sqrt d), d < 0 squarefree, d = 1 mod 4; O_F = Z[w], w = (1+sqrt d)/2.
struct QuadField {
    Integer d;

    explicit QuadField(Integer d_) : d(std::move(d_))
    {
        if (d >= 0)
            fail(Errc::parameter, "d-positive", "d must be negative");
        if (arith::mod(d, 4) != 1)
            fail(Errc::parameter, "d-not-1-mod-4", "d must be 1 mod 4");
        if (!arith::is_squarefree(d))
            fail(Errc::parameter, "d-not-squarefree", "d must be squarefree");
    }

    const Integer& discriminant() const { return d; }
};

/// x + y*w with integer x, y.
struct QuadInt {
    Integer x, y;
    friend bool operator==(const QuadInt&, const QuadInt&) = default;
};

/// a + b*sqrt(d) with rational a, b.
struct QuadNumber {
    Rational a, b;

    friend bool operator==(const QuadNumber&, const QuadNumber&) = default;
    QuadNumber operator+(const QuadNumber& o) const { return {a + o.a, b + o.b}; }
    QuadNumber operator-(const QuadNumber& o) const { return {a - o.a, b - o.b}; }
    QuadNumber operator-() const { return {-a, -b}; }
    QuadNumber scaled(const Rational& c) const { return {a * c, b * c}; }

    /// Coordinates over {1, w}: a + b sqrt d = (a - b) + 2b w.
    Rational coord1() const { return a - b; }
    Rational coordw() const { return 2 * b; }

    bool is_integral() const
    {
        Rational x = coord1(), y = coordw();
        return x.get_den() == 1 && y.get_den() == 1;
    }

    QuadInt to_quad_int() const
    {
        if (!is_integral())
            fail(Errc::precondition, "quad-not-integral", "element not in O_F");
        return {Rational(coord1()).get_num(), Rational(coordw()).get_num()};
    }

    /// Membership in k*O_F for a rational integer k.
    bool divisible_by(const Integer& k) const
    {
        if (!is_integral())
            return false;
        QuadInt q = to_quad_int();
        return arith::divides(k, q.x) && arith::divides(k, q.y);
    }

    Rational norm(const Integer& d) const { return a * a - Rational(d) * b * b; }
    Rational trace() const { return 2 * a; }
};

inline QuadNumber mul(const QuadNumber& u, const QuadNumber& v, const Integer& d)
{
    return {u.a * v.a + Rational(d) * u.b * v.b, u.a * v.b + u.b * v.a};
}

inline std::string to_string(const QuadNumber& q)
{
    return "(" + q.a.get_str() + ")+(" + q.b.get_str() + ")*sqrt(d)";
}

} // namespace uchida::nf

#endif
