#ifndef UCHIDA_SEARCH_BASE_HPP
#define UCHIDA_SEARCH_BASE_HPP

#include <array>
#include <cmath>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "uchida/arith/residue.hpp"
#include "uchida/nf/compositum.hpp"
#include "uchida/nf/units.hpp"

namespace uchida::search {

using namespace uchida::arith;

/// Uchida's cyclic cubic base: u~(x) = x^3 + m~(x+1)^2 with
/// m~ = (a~^(2^s n) + 27)/4, so 4m~ - 27 = a~^(2^s n) is a square.
struct UchidaBase {
    Integer a_tilde;
    unsigned long n = 1, s = 1;
    Integer m;
    IntPoly u;
    Integer disc;               // disc(u~) = m~^2 a~^(2^s n)
    unsigned long exponent = 2; // 2^s n
    std::shared_ptr<const nf::CubicField> K;
    std::shared_ptr<const nf::GaloisCubic> G;
    int orientation = 1;        // sigma~ = sigma (1) or sigma^2 (2), sigma fixed by the trace convention
    RatVec sigma_poly;          // pi~^sigma~ as a polynomial in pi~
    std::vector<unsigned long> ells; // prime divisors of 2n
};

inline UchidaBase build_base(const Integer& a_tilde, unsigned long n, unsigned long s, int orientation = 1)
{
    if (orientation != 1 && orientation != 2)
        fail(Errc::parameter, "orientation", "orientation must be 1 or 2");
    if (a_tilde <= 0 || mpz_even_p(a_tilde.get_mpz_t()))
        fail(Errc::parameter, "a-tilde", "a~ must be odd and positive");
    if (n == 0 || std::gcd(n, 6UL) != 1)
        fail(Errc::parameter, "n-gcd6", "the base needs gcd(n, 6) = 1");
    if (s == 0 || s > 20)
        fail(Errc::parameter, "s-range", "s must lie in [1, 20]");
    if (static_cast<double>(n) * std::ldexp(1.0, static_cast<int>(s)) * static_cast<double>(mpz_sizeinbase(a_tilde.get_mpz_t(), 2)) > 1.0e6)
        fail(Errc::parameter, "base-too-large", "a~^(2^s n) exceeds 10^6 bits");

    UchidaBase b;
    b.a_tilde = a_tilde;
    b.n = n;
    b.s = s;
    b.exponent = n << s;
    Integer q = ipow(a_tilde, b.exponent);
    ensure(mod(q + 27, 4) == 0, "base-m-integral", "a~^(2^s n) + 27 is not divisible by 4");
    b.m = (q + 27) / 4;
    b.u = IntPoly({b.m, 2 * b.m, b.m, Integer(1)});
    b.disc = poly_discriminant(b.u);
    Integer S = ipow(a_tilde, b.exponent / 2);
    ensure(b.disc == b.m * b.m * S * S, "base-disc-square", "disc(u~) is not m~^2 a~^(2^s n)");

    // p^2 | disc only for p | m~ a~
    std::vector<Integer> sq;
    for (auto& p : factorize(b.m).require_complete().primes())
        sq.push_back(p);
    for (auto& p : factorize(a_tilde).require_complete().primes())
        sq.push_back(p);
    b.K = std::make_shared<const nf::CubicField>(b.u, sq, true, true);
    b.G = std::make_shared<const nf::GaloisCubic>(*b.K, b.m, S, std::nullopt);
    b.orientation = orientation;
    b.sigma_poly = orientation == 1 ? b.G->pi_sigma() : b.G->sigma(b.G->pi_sigma());

    b.ells.push_back(2);
    unsigned long r = n;
    for (unsigned long p = 3; p * p <= r; p += 2)
        if (r % p == 0) {
            b.ells.push_back(p);
            while (r % p == 0)
                r /= p;
        }
    if (r > 1)
        b.ells.push_back(r);
    return b;
}

/// The three roots of u~ mod q in ascending order, or nullopt when q does
/// not split.  q must not divide 6 disc(u~).
inline std::optional<std::array<u64, 3>> splits_completely(u64 q, const UchidaBase& b)
{
    if (divides(Integer(from_u64(q)), 6 * b.disc))
        fail(Errc::precondition, "q-divides-disc", std::to_string(q) + " divides 6 disc(u~)");
    auto r = roots_mod_p(b.u, from_u64(q));
    if (r.roots.size() != 3)
        return std::nullopt;
    std::array<u64, 3> out{r.roots[0], r.roots[1], r.roots[2]};
    std::sort(out.begin(), out.end());
    return out;
}

inline u64 mod64(const Integer& x, u64 q) { return to_u64(mod(x, Integer(from_u64(q)))); }

inline u64 mulmod(u64 a, u64 b, u64 q) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % q); }

inline u64 inv64(u64 a, u64 q) { return powmod64(a, q - 2, q); }

/// sigma image of each root: c -> g(c) mod q with pi^sigma = g(pi).
inline std::array<u64, 3> sigma_images(u64 q, const UchidaBase& b, const std::array<u64, 3>& roots)
{
    std::array<u64, 3> img{};
    std::array<u64, 3> g{};
    for (std::size_t k = 0; k < 3; ++k) {
        const Rational& c = b.sigma_poly[k];
        u64 den = mod64(c.get_den(), q);
        if (den == 0)
            fail(Errc::internal_assertion, "sigma-denominator", "sigma polynomial denominator divisible by q");
        g[k] = mulmod(mod64(c.get_num(), q), inv64(den, q), q);
    }
    for (std::size_t k = 0; k < 3; ++k) {
        u64 c = roots[k];
        u64 v = (g[0] + mulmod(g[1], c, q) + mulmod(g[2], mulmod(c, c, q), q)) % q;
        auto it = std::find(roots.begin(), roots.end(), v);
        ensure(it != roots.end() && v != c, "sigma-permutation", "sigma does not permute the roots mod q");
        img[k] = static_cast<u64>(it - roots.begin());
    }
    return img;
}

/// Residue data of a prime that passes the conditions shared by both
/// roles: q = 1 mod 2^s n, q splits, d is a 2^s-th and 3 a 2^s n-th power
/// residue, q does not divide 6 disc(u~).
struct PrimeScreen {
    u64 q = 0;
    std::array<u64, 3> roots{};
    std::array<u64, 3> sigma{}; // index of sigma(c_k) among roots
    u64 d_check = 0;            // d^((q-1)/2^s) mod q
    u64 three_check = 0;        // 3^((q-1)/(2^s n)) mod q
};

inline std::optional<PrimeScreen> screen_prime(u64 q, const UchidaBase& b, const Integer& d)
{
    if (q % b.exponent != 1)
        return std::nullopt;
    if (divides(Integer(from_u64(q)), 6 * b.disc * d))
        return std::nullopt;
    PrimeScreen ps;
    ps.q = q;
    ps.d_check = powmod64(mod64(d, q), (q - 1) >> b.s, q);
    if (ps.d_check != 1)
        return std::nullopt;
    ps.three_check = powmod64(3, (q - 1) / b.exponent, q);
    if (ps.three_check != 1)
        return std::nullopt;
    auto roots = splits_completely(q, b);
    if (!roots)
        return std::nullopt;
    ps.roots = *roots;
    ps.sigma = sigma_images(q, b, ps.roots);
    return ps;
}

struct TripleIndex {
    unsigned long l = 0, i = 0, j = 0;
    auto operator<=>(const TripleIndex&) const = default;
    std::string key() const { return std::to_string(l) + ":" + std::to_string(i) + ":" + std::to_string(j); }
};

inline std::vector<TripleIndex> all_triples(const UchidaBase& b)
{
    std::vector<TripleIndex> out;
    for (unsigned long l : b.ells)
        for (unsigned long i = 0; i < l; ++i)
            for (unsigned long j = 0; j < l; ++j)
                out.push_back({l, i, j});
    return out;
}

enum class Role { q1, q2 };

/// Value at the prime (q, pi~ - c_k) of alpha~_ij (role q1) or of
/// eps~^i (eps~^sigma)^j (role q2), with pi~ -> c_k, pi~^sigma -> sigma(c_k).
inline u64 role_value(const PrimeScreen& ps, const TripleIndex& t, Role role, std::size_t k)
{
    const u64 q = ps.q;
    u64 c = ps.roots[k], cs = ps.roots[ps.sigma[k]];
    u64 v = powmod64((c + 1) % q, t.i, q);
    v = mulmod(v, powmod64((cs + 1) % q, t.j, q), q);
    if (role == Role::q1)
        v = mulmod(v, mulmod((c + q - cs) % q, inv64(c, q), q), q);
    return v;
}

/// Residue evidence for one role: the first assignment k at which the
/// value is not an l-th power residue.
struct RoleEvidence {
    PrimeScreen screen;
    std::size_t assignment = 0;
    u64 value = 0;
    u64 value_power = 0; // value^((q-1)/l), != 1
};

inline std::optional<RoleEvidence> check_role(const PrimeScreen& ps, const TripleIndex& t, Role role)
{
    if (role == Role::q2 && t.i == 0 && t.j == 0)
        return std::nullopt; // 1 is an l-th power
    for (std::size_t k = 0; k < 3; ++k) {
        u64 v = role_value(ps, t, role, k);
        if (v == 0)
            fail(Errc::internal_assertion, "role-zero", "value vanishes mod q");
        u64 pw = powmod64(v, (ps.q - 1) / t.l, ps.q);
        if (pw != 1)
            return RoleEvidence{ps, k, v, pw};
    }
    return std::nullopt;
}

/// True when the unit x of K~ is an l-th power: the real l-th roots of its
/// images (every sign pattern for l = 2) are solved for integral
/// coordinates and the candidate is raised to the l-th power exactly.
inline bool unit_is_lth_power(const UchidaBase& b, const nf::Elem& x, unsigned long l)
{
    const nf::Order& O = b.K->order();
    auto xc = O.from_algebra(x);
    if (!xc || abs(O.norm(*xc)) != 1)
        return false;
    return nf::with_precision_ladder([&](mpfr_prec_t) {
        nf::OrderGeometry geo(O, nf::EmbeddingData::of_cubic(b.K->poly()));
        std::vector<nf::Interval> r;
        for (std::size_t k = 0; k < 3; ++k) {
            nf::Interval v = geo.image(k, *xc).re;
            if (v.contains_zero())
                fail(Errc::precision, "lth-sign", "image of a unit encloses zero");
            if (l % 2 == 0 && v.negative())
                return false;
            nf::Interval root = v.abs().root(static_cast<unsigned>(l));
            r.push_back(v.negative() ? nf::Interval(0L) - root : root);
        }
        const unsigned patterns = l % 2 == 0 ? 8 : 1;
        for (unsigned sgn = 0; sgn < patterns; ++sgn) {
            std::vector<nf::CInterval> vals;
            for (std::size_t k = 0; k < 3; ++k)
                vals.push_back({(sgn >> k) & 1 ? nf::Interval(0L) - r[k] : r[k], nf::Interval(0L)});
            auto y = geo.solve_integral(vals);
            if (y && b.K->algebra().pow(O.to_algebra(*y), l) == x)
                return true;
        }
        return false;
    });
}

/// True when alpha~_ij is an l-th power in K~ (checked exactly for units):
/// then it is an l-th power residue at every prime and condition (iv)
/// never holds for that triple.
inline bool q1_globally_obstructed(const UchidaBase& b, const TripleIndex& t)
{
    const nf::GaloisCubic& G = *b.G;
    const nf::Algebra& A = G.algebra();
    nf::Elem eps = A.add(G.pi(), A.one());
    nf::Elem eps_s = A.add(b.sigma_poly, A.one());
    nf::Elem x = A.div(A.sub(G.pi(), b.sigma_poly), G.pi());
    x = A.mul(x, A.mul(A.pow(eps, t.i), A.pow(eps_s, t.j)));
    return unit_is_lth_power(b, x, t.l);
}

/// Full condition check for a prime in a role; nullopt carries the reason.
struct ConditionResult {
    std::optional<RoleEvidence> evidence;
    std::string reason;
};

inline ConditionResult check_conditions(u64 q, const UchidaBase& b, const Integer& d, const TripleIndex& t, Role role)
{
    ConditionResult r;
    if (!is_prime(from_u64(q))) {
        r.reason = "not-prime";
        return r;
    }
    if (divides(Integer(from_u64(q)), 6 * b.disc)) {
        r.reason = "divides-6-disc";
        return r;
    }
    auto ps = screen_prime(q, b, d);
    if (!ps) {
        r.reason = "screen";
        return r;
    }
    if (role == Role::q2 && t.i == 0 && t.j == 0) {
        r.reason = "v-unsatisfiable-at-00";
        return r;
    }
    r.evidence = check_role(*ps, t, role);
    if (!r.evidence)
        r.reason = "residue";
    return r;
}

} // namespace uchida::search

#endif
