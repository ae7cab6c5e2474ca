#ifndef UCHIDA_NF_SERIALIZE_HPP
#define UCHIDA_NF_SERIALIZE_HPP

#include <json.hpp>

#include "uchida/nf/cubic_field.hpp"
#include "uchida/nf/interval.hpp"
#include "uchida/nf/quadratic.hpp"

namespace uchida::nf {

using Json = nlohmann::json;

// Integers and rationals are always written as decimal strings so that
// consumers with 64-bit numbers never truncate them.

inline Json to_json(const Integer& z) { return z.get_str(); }
inline Json to_json(const Rational& q) { return q.get_str(); }

inline Json to_json(const IntVec& v)
{
    Json a = Json::array();
    for (auto& x : v)
        a.push_back(x.get_str());
    return a;
}

inline Json to_json(const RatVec& v)
{
    Json a = Json::array();
    for (auto& x : v)
        a.push_back(x.get_str());
    return a;
}

/// Row-major list of rows.
inline Json to_json(const IntMatrix& M)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < M.cols(); ++j)
            r.push_back(M(i, j).get_str());
        rows.push_back(r);
    }
    return rows;
}

inline Json to_json(const RatMatrix& M)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < M.cols(); ++j)
            r.push_back(M(i, j).get_str());
        rows.push_back(r);
    }
    return rows;
}

inline Json to_json(const IntPoly& f) { return to_json(f.coeffs()); }

inline Json to_json(const QuadNumber& q)
{
    // O_F coordinates (x, y) of x + y w when integral, else a + b sqrt d
    if (q.is_integral()) {
        QuadInt z = q.to_quad_int();
        return Json{{"x", z.x.get_str()}, {"y", z.y.get_str()}};
    }
    return Json{{"a", q.a.get_str()}, {"b", q.b.get_str()}};
}

inline Json to_json(const Ideal& I)
{
    return Json{{"hnf", to_json(I.hnf)}, {"norm", I.norm().get_str()}};
}

inline Json to_json(const PrimeIdeal& P)
{
    return Json{{"p", P.p.get_str()}, {"e", P.e}, {"f", P.f}, {"hnf", to_json(P.ideal.hnf)}};
}

inline Json to_json(const CubicField& K)
{
    return Json{{"poly", to_json(K.poly())},
                {"poly_disc", K.poly_disc().get_str()},
                {"disc", K.disc().get_str()},
                {"index", K.index().get_str()},
                {"integral_basis", to_json(K.order().basis())}};
}

/// Enclosure endpoints as doubles, rounded outward.
inline Json to_json(const Interval& x)
{
    return Json{{"lower", x.lower()}, {"upper", x.upper()}};
}

inline Integer integer_from_json(const Json& j)
{
    return Integer(j.get<std::string>());
}

inline IntVec intvec_from_json(const Json& j)
{
    IntVec v;
    for (auto& x : j)
        v.push_back(integer_from_json(x));
    return v;
}

inline IntMatrix intmatrix_from_json(const Json& j)
{
    const std::size_t r = j.size(), c = r ? j[0].size() : 0;
    IntMatrix M(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < c; ++k)
            M(i, k) = integer_from_json(j[i][k]);
    return M;
}

inline Ideal ideal_from_json(const Json& j) { return Ideal{intmatrix_from_json(j.at("hnf"))}; }

} // namespace uchida::nf

#endif
