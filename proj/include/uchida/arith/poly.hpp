#ifndef UCHIDA_ARITH_POLY_HPP
#define UCHIDA_ARITH_POLY_HPP

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "uchida/arith/integer.hpp"

namespace uchida::arith {

/// Dense univariate polynomial, coefficients low degree first.
/// T needs +, -, *, ==, and construction from int.
template <class T>
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<T> c) : c_(c) { trim(); }
    explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }

    static Poly monomial(const T& coeff, std::size_t deg)
    {
        std::vector<T> c(deg + 1, T(0));
        c[deg] = coeff;
        return Poly(std::move(c));
    }

    static Poly x() { return monomial(T(1), 1); }

    /// -1 for the zero polynomial
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    T leading() const { return c_.empty() ? T(0) : c_.back(); }

    template <class U>
    U eval(const U& x) const
    {
        U r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            r = r * x + U(*it);
        return r;
    }

    Poly derivative() const
    {
        if (c_.size() <= 1)
            return {};
        std::vector<T> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * T(static_cast<long>(i));
        return Poly(std::move(d));
    }

    /// f(g(x))
    Poly compose(const Poly& g) const
    {
        Poly r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            r = r * g + Poly({*it});
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b)
    {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            c[i] = c[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i)
            c[i] = c[i] + b.c_[i];
        return Poly(std::move(c));
    }

    friend Poly operator-(const Poly& a) { return a * Poly({T(-1)}); }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }

    friend Poly operator*(const T& s, const Poly& a) { return Poly({s}) * a; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Division by a polynomial with invertible (here: unit) leading
    /// coefficient; requires exact division of leading coefficients in T.
    std::pair<Poly, Poly> divmod(const Poly& b) const
    {
        if (b.is_zero())
            fail(Errc::precondition, "poly-div-zero", "division by the zero polynomial");
        std::vector<T> r = c_;
        int db = b.degree();
        if (degree() < db)
            return {Poly{}, *this};
        std::vector<T> q(degree() - db + 1, T(0));
        for (int i = degree(); i >= db; --i) {
            T lead = r[i] / b.leading();
            q[i - db] = lead;
            for (int j = 0; j <= db; ++j)
                r[i - db + j] = r[i - db + j] - lead * b.c_[j];
        }
        r.resize(db);
        return {Poly(std::move(q)), Poly(std::move(r))};
    }

    std::string to_string(const std::string& var = "x") const
    {
        if (c_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            if (c_[i] == T(0))
                continue;
            if (!first)
                os << " + ";
            first = false;
            os << "(" << c_[i] << ")";
            if (i >= 1)
                os << "*" << var;
            if (i >= 2)
                os << "^" << i;
        }
        return os.str();
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == T(0))
            c_.pop_back();
    }

    std::vector<T> c_;
};

using IntPoly = Poly<Integer>;
using RatPoly = Poly<Rational>;

inline RatPoly to_rational(const IntPoly& f)
{
    std::vector<Rational> c;
    for (auto& a : f.coeffs())
        c.emplace_back(a);
    return RatPoly(std::move(c));
}

/// Determinant by fraction-free (Bareiss) elimination; T an integral domain
/// with exact division.
template <class T>
T bareiss_det(std::vector<std::vector<T>> a)
{
    const std::size_t n = a.size();
    if (n == 0)
        return T(1);
    T sign(1), prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == T(0)) {
            std::size_t swap = k + 1;
            while (swap < n && a[swap][k] == T(0))
                ++swap;
            if (swap == n)
                return T(0);
            std::swap(a[k], a[swap]);
            sign = T(0) - sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

/// Resultant via the Sylvester matrix.
template <class T>
T resultant(const Poly<T>& f, const Poly<T>& g)
{
    int m = f.degree(), n = g.degree();
    if (m < 0 || n < 0)
        return T(0);
    std::size_t size = static_cast<std::size_t>(m + n);
    if (size == 0)
        return T(1);
    std::vector<std::vector<T>> s(size, std::vector<T>(size, T(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j)
            s[i][i + j] = f.coeff(m - j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            s[n + i][i + j] = g.coeff(n - j);
    return bareiss_det(std::move(s));
}

/// disc(f) = (-1)^{n(n-1)/2} res(f, f') / lc(f).
template <class T>
T poly_discriminant(const Poly<T>& f)
{
    int n = f.degree();
    if (n < 2)
        fail(Errc::precondition, "disc-degree", "discriminant needs degree >= 2");
    T r = resultant(f, f.derivative()) / f.leading();
    if ((n * (n - 1) / 2) % 2)
        r = T(0) - r;
    return r;
}

// ---------------------------------------------------------------------------
// Polynomials over F_p, p < 2^63.

namespace modp {

using Vec = std::vector<u64>;

inline void trim(Vec& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline Vec reduce(const IntPoly& f, u64 p)
{
    Vec r;
    for (auto& c : f.coeffs())
        r.push_back(reduce64(c, p));
    trim(r);
    return r;
}

inline u64 eval(const Vec& f, u64 x, u64 p)
{
    u64 r = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it)
        r = (mulmod64(r, x, p) + *it) % p;
    return r;
}

inline Vec mul(const Vec& a, const Vec& b, u64 p)
{
    if (a.empty() || b.empty())
        return {};
    Vec c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + mulmod64(a[i], b[j], p)) % p;
    trim(c);
    return c;
}

inline Vec sub(Vec a, const Vec& b, u64 p)
{
    if (a.size() < b.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

/// (quotient, remainder); b nonzero
inline std::pair<Vec, Vec> divmod(Vec a, const Vec& b, u64 p)
{
    trim(a);
    if (a.size() < b.size())
        return {{}, a};
    u64 inv = invmod64(b.back(), p);
    Vec q(a.size() - b.size() + 1, 0);
    for (std::size_t i = a.size(); i-- >= b.size();) {
        u64 coef = mulmod64(a[i], inv, p);
        q[i - b.size() + 1] = coef;
        if (coef)
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::size_t k = i - b.size() + 1 + j;
                a[k] = (a[k] + p - mulmod64(coef, b[j], p)) % p;
            }
        if (i == b.size() - 1)
            break;
    }
    a.resize(b.size() - 1);
    trim(a);
    trim(q);
    return {q, a};
}

inline Vec rem(const Vec& a, const Vec& b, u64 p) { return divmod(a, b, p).second; }

inline Vec monic(Vec a, u64 p)
{
    if (a.empty())
        return a;
    u64 inv = invmod64(a.back(), p);
    for (auto& c : a)
        c = mulmod64(c, inv, p);
    return a;
}

inline Vec gcd(Vec a, Vec b, u64 p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Vec r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

/// base^e mod f
inline Vec powmod(Vec base, u64 e, const Vec& f, u64 p)
{
    Vec r{1};
    base = rem(base, f, p);
    while (e) {
        if (e & 1)
            r = rem(mul(r, base, p), f, p);
        base = rem(mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

} // namespace modp

struct RootsModP {
    std::vector<u64> roots;           // distinct, ascending
    std::vector<unsigned> multiplicity;
};

namespace detail {

inline void split_linear(const modp::Vec& g, u64 p, std::vector<u64>& out)
{
    // g monic, squarefree, product of distinct linear factors over F_p
    int deg = static_cast<int>(g.size()) - 1;
    if (deg <= 0)
        return;
    if (deg == 1) {
        out.push_back((p - g[0]) % p);
        return;
    }
    // Cantor-Zassenhaus with deterministic shifts: gcd(g, (x+c)^{(p-1)/2} - 1)
    for (u64 c = 0; c < p; ++c) {
        modp::Vec h = modp::powmod({c % p, 1}, (p - 1) / 2, g, p);
        h = modp::sub(h, {1}, p);
        modp::Vec d = modp::gcd(g, h, p);
        int dd = static_cast<int>(d.size()) - 1;
        if (dd > 0 && dd < deg) {
            split_linear(d, p, out);
            split_linear(modp::monic(modp::divmod(g, d, p).first, p), p, out);
            return;
        }
    }
    fail(Errc::internal_assertion, "root-split", "equal-degree splitting failed");
}

inline unsigned multiplicity_of(modp::Vec f, u64 r, u64 p)
{
    unsigned m = 0;
    modp::Vec lin{(p - r % p) % p, 1};
    while (!f.empty()) {
        auto [q, rr] = modp::divmod(f, lin, p);
        if (!rr.empty())
            break;
        ++m;
        f = q;
    }
    return m;
}

} // namespace detail

/// All distinct roots of f mod p with multiplicities.  Exhaustive for
/// p < 10^4, otherwise gcd(x^p - x, f) followed by equal-degree splitting.
inline RootsModP roots_mod_p(const IntPoly& f, const Integer& p_in)
{
    u64 p = to_u64(p_in);
    modp::Vec fp = modp::reduce(f, p);
    if (fp.empty())
        fail(Errc::precondition, "roots-zero-poly", "f vanishes identically mod p");
    RootsModP out;
    if (p < 10'000) {
        for (u64 x = 0; x < p; ++x)
            if (modp::eval(fp, x, p) == 0)
                out.roots.push_back(x);
    } else {
        modp::Vec xp = modp::powmod({0, 1}, p, fp, p);
        modp::Vec g = modp::gcd(fp, modp::sub(xp, {0, 1}, p), p);
        if (g.size() > 1 && g[0] == 0) {
            out.roots.push_back(0);
            g = modp::monic(modp::divmod(g, {0, 1}, p).first, p);
        }
        // now 0 is not a root of g, so (p-1)/2 splitting applies for odd p
        detail::split_linear(g, p, out.roots);
        std::sort(out.roots.begin(), out.roots.end());
    }
    for (u64 r : out.roots)
        out.multiplicity.push_back(detail::multiplicity_of(fp, r, p));
    return out;
}

/// Irreducible factorization pattern of a cubic (or lower) mod p, as
/// (factor, exponent) with monic factors in F_p[x].
inline std::vector<std::pair<modp::Vec, unsigned>> factor_small_mod_p(const IntPoly& f, u64 p)
{
    modp::Vec fp = modp::monic(modp::reduce(f, p), p);
    auto rts = roots_mod_p(f, from_u64(p));
    std::vector<std::pair<modp::Vec, unsigned>> out;
    modp::Vec rest = fp;
    for (std::size_t i = 0; i < rts.roots.size(); ++i) {
        modp::Vec lin{(p - rts.roots[i]) % p, 1};
        out.emplace_back(lin, rts.multiplicity[i]);
        for (unsigned k = 0; k < rts.multiplicity[i]; ++k)
            rest = modp::divmod(rest, lin, p).first;
    }
    if (rest.size() > 1) {
        if (rest.size() > 4)
            fail(Errc::precondition, "factor-degree", "only degree <= 3 supported");
        out.emplace_back(modp::monic(rest, p), 1); // no roots left => irreducible (deg <= 3)
    }
    return out;
}

} // namespace uchida::arith

#endif
