#ifndef UCHIDA_ARITH_INTEGER_HPP
#define UCHIDA_ARITH_INTEGER_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uchida/error.hpp"

namespace uchida::arith {

using Integer = mpz_class;
using Rational = mpq_class;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline Integer ipow(const Integer& base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer ipow(long base, unsigned long e) { return ipow(Integer(base), e); }

/// Nonnegative residue of a modulo m (m > 0).
inline Integer mod(const Integer& a, const Integer& m)
{
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Integer powmod(const Integer& b, const Integer& e, const Integer& m)
{
    Integer r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline std::optional<Integer> invmod(const Integer& a, const Integer& m)
{
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        return std::nullopt;
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline bool divides(const Integer& d, const Integer& n)
{
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

inline Integer isqrt(const Integer& n)
{
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline Integer numerator(const Rational& q) { return q.get_num(); }
inline Integer denominator(const Rational& q) { return q.get_den(); }

/// n/d in lowest terms (d != 0).
inline Rational frac(const Integer& n, const Integer& d)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const Integer& n) { return n.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool fits_u64(const Integer& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

inline u64 to_u64(const Integer& n)
{
    if (!fits_u64(n))
        fail(Errc::precondition, "u64-overflow", n.get_str() + " does not fit in 64 bits");
    u64 r = 0;
    mpz_export(&r, nullptr, -1, sizeof(u64), 0, 0, n.get_mpz_t());
    return r;
}

inline Integer from_u64(u64 v)
{
    Integer r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof(u64), 0, 0, &v);
    return r;
}

/// Largest k with p^k | N.  N != 0, p >= 2.
inline unsigned long valuation(const Integer& N, const Integer& p)
{
    if (N == 0)
        fail(Errc::precondition, "valuation-of-zero", "valuation of 0 is undefined");
    if (p < 2)
        fail(Errc::precondition, "valuation-bad-prime", "p must be >= 2");
    Integer t = N;
    return mpz_remove(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
}

// ---------------------------------------------------------------------------
// 64-bit modular helpers used in the prime-search hot loop.

inline u64 mulmod64(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod64(u64 b, u64 e, u64 m)
{
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = mulmod64(r, b, m);
        b = mulmod64(b, b, m);
        e >>= 1;
    }
    return r;
}

inline u64 invmod64(u64 a, u64 m)
{
    // m prime, a != 0 mod m
    return powmod64(a, m - 2, m);
}

inline u64 reduce64(const Integer& a, u64 m)
{
    return static_cast<u64>(mpz_fdiv_ui(a.get_mpz_t(), m));
}

// ---------------------------------------------------------------------------
// Primality.

enum class Primality { composite, prime, probable_prime };

/// Deterministic Miller-Rabin below 3.3e24 (first 13 prime bases);
/// above that, 64 random-base rounds (error < 2^-128) reported as probable.
inline Primality primality(const Integer& n)
{
    if (n < 2)
        return Primality::composite;
    static const unsigned small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (unsigned p : small) {
        if (n == p)
            return Primality::prime;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return Primality::composite;
    }
    static const Integer det_limit("3317044064679887385961981");
    Integer d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    auto witness = [&](const Integer& a) {
        Integer x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            return false;
        for (unsigned long r = 1; r < s; ++r) {
            x = x * x % n;
            if (x == n - 1)
                return false;
        }
        return true;
    };
    if (n < det_limit) {
        for (unsigned p : small)
            if (witness(Integer(p)))
                return Primality::composite;
        return Primality::prime;
    }
    for (unsigned p : small)
        if (witness(Integer(p)))
            return Primality::composite;
    // deterministic pseudo-random bases; 64 further rounds
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0x5eed);
    for (int i = 0; i < 64; ++i) {
        Integer a = rng.get_z_range(n - 3) + 2;
        if (witness(a))
            return Primality::composite;
    }
    return Primality::probable_prime;
}

inline bool is_prime(const Integer& n) { return primality(n) != Primality::composite; }

inline bool is_prime64(u64 n)
{
    if (n < 2)
        return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0)
            return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod64(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp)
            return false;
    }
    return true;
}

/// Next prime strictly above n.
inline Integer next_prime(const Integer& n)
{
    Integer p = n + 1;
    if (p <= 2)
        return 2;
    if (mpz_even_p(p.get_mpz_t()))
        ++p;
    while (!is_prime(p))
        p += 2;
    return p;
}

// ---------------------------------------------------------------------------
// Factorization.

struct FactorBudget {
    unsigned long trial_limit = 1'000'000;
    unsigned long rho_iterations = 2'000'000;
};

struct PrimeFactorization {
    int sign = 1;
    /// (prime, exponent), primes strictly increasing
    std::vector<std::pair<Integer, unsigned long>> factors;
    /// composite cofactors the budget could not split
    std::vector<Integer> unfactored;
    /// true when some listed prime is only a probable prime
    bool probable = false;

    bool complete() const { return unfactored.empty(); }

    Integer product() const
    {
        Integer r = sign;
        for (auto& [p, e] : factors)
            r *= ipow(p, e);
        for (auto& c : unfactored)
            r *= c;
        return r;
    }

    std::vector<Integer> primes() const
    {
        std::vector<Integer> r;
        for (auto& f : factors)
            r.push_back(f.first);
        return r;
    }

    unsigned long exponent_of(const Integer& p) const
    {
        for (auto& [q, e] : factors)
            if (q == p)
                return e;
        return 0;
    }

    /// Throws budget_exhausted if a cofactor remains.
    const PrimeFactorization& require_complete() const
    {
        if (!complete())
            fail(Errc::budget_exhausted, "factorization-incomplete",
                 "unfactored cofactor " + unfactored.front().get_str());
        return *this;
    }
};

namespace detail {

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
inline Integer rho_factor(const Integer& n, unsigned long max_iter)
{
    if (mpz_even_p(n.get_mpz_t()))
        return 2;
    unsigned long used = 0;
    for (unsigned long c = 1; c < 64 && used < max_iter; ++c) {
        Integer y = 2, x, q = 1, g = 1, ys;
        unsigned long r = 1;
        const unsigned long m = 128;
        auto f = [&](const Integer& v) -> Integer { return (v * v + c) % n; };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i)
                y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    Integer diff = x - y;
                    q = q * abs(diff) % n;
                }
                g = gcd(q, n);
                k += m;
                used += m;
            } while (k < r && g == 1 && used < max_iter);
            r *= 2;
        } while (g == 1 && used < max_iter);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != 1 && g != n)
            return g;
    }
    return 0;
}

// Product of 5, 7, 11, 13, ... (all 6k+-1) up to limit; one gcd against it
// tells whether any trial divisor can hit.
inline const Integer& trial_product(unsigned long limit)
{
    static std::mutex mu;
    static std::map<unsigned long, Integer> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(limit);
    if (it != cache.end())
        return it->second;
    std::vector<Integer> level;
    for (unsigned long p = 5, step = 2; p <= limit; p += step, step = 6 - step)
        level.emplace_back(p);
    if (level.empty())
        level.emplace_back(1);
    while (level.size() > 1) {
        std::vector<Integer> next;
        for (std::size_t i = 0; i + 1 < level.size(); i += 2)
            next.push_back(level[i] * level[i + 1]);
        if (level.size() % 2)
            next.push_back(level.back());
        level = std::move(next);
    }
    return cache.emplace(limit, std::move(level[0])).first->second;
}

} // namespace detail

/// Factor N != 0: trial division, then rho with an iteration cap.
/// Cofactors that resist are returned in `unfactored`, never assumed prime.
inline PrimeFactorization factorize(const Integer& N, const FactorBudget& budget = {})
{
    if (N == 0)
        fail(Errc::precondition, "factorize-zero", "cannot factor 0");
    PrimeFactorization out;
    out.sign = N < 0 ? -1 : 1;
    Integer n = abs(N);
    std::vector<std::pair<Integer, unsigned long>> found;
    auto take = [&](unsigned long p) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            Integer pp = p;
            unsigned long e = mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
            found.emplace_back(pp, e);
        }
    };
    take(2);
    take(3);
    Integer g = gcd(n, detail::trial_product(budget.trial_limit));
    for (unsigned long p = 5, step = 2; p <= budget.trial_limit && g > 1; p += step, step = 6 - step) {
        if (n == 1)
            break;
        if (!mpz_divisible_ui_p(g.get_mpz_t(), p))
            continue;
        while (mpz_divisible_ui_p(g.get_mpz_t(), p))
            mpz_divexact_ui(g.get_mpz_t(), g.get_mpz_t(), p);
        if (mpz_cmp_ui(n.get_mpz_t(), p * p) < 0)
            break;
        take(p);
    }
    std::vector<Integer> stack;
    if (n > 1)
        stack.push_back(n);
    while (!stack.empty()) {
        Integer c = stack.back();
        stack.pop_back();
        Primality pr = primality(c);
        if (pr != Primality::composite) {
            if (pr == Primality::probable_prime)
                out.probable = true;
            found.emplace_back(c, 1);
            continue;
        }
        if (is_square(c)) {
            Integer r = isqrt(c);
            stack.push_back(r);
            stack.push_back(r);
            continue;
        }
        Integer g = detail::rho_factor(c, budget.rho_iterations);
        if (g == 0) {
            out.unfactored.push_back(c);
            continue;
        }
        stack.push_back(g);
        stack.push_back(c / g);
    }
    std::sort(found.begin(), found.end());
    for (auto& [p, e] : found) {
        if (!out.factors.empty() && out.factors.back().first == p)
            out.factors.back().second += e;
        else
            out.factors.emplace_back(p, e);
    }
    std::sort(out.unfactored.begin(), out.unfactored.end());
    return out;
}

/// m = b * c^3 with b cube-free and c > 0.
inline std::pair<Integer, Integer> cube_free_split(const Integer& m, const FactorBudget& budget = {})
{
    if (m == 0)
        fail(Errc::precondition, "cube-free-zero", "m must be nonzero");
    auto fac = factorize(m, budget);
    fac.require_complete();
    Integer b = fac.sign, c = 1;
    for (auto& [p, e] : fac.factors) {
        b *= ipow(p, e % 3);
        c *= ipow(p, e / 3);
    }
    return {b, c};
}

inline bool is_squarefree(const Integer& n, const FactorBudget& budget = {})
{
    auto fac = factorize(n, budget);
    fac.require_complete();
    return std::all_of(fac.factors.begin(), fac.factors.end(), [](auto& f) { return f.second == 1; });
}

/// Chinese remaindering: returns (x, M) with 0 <= x < M = lcm of moduli.
/// Non-coprime moduli are accepted when the residues agree.
inline std::pair<Integer, Integer> crt(const std::vector<std::pair<Integer, Integer>>& pairs)
{
    Integer x = 0, M = 1;
    for (auto& [r, m] : pairs) {
        if (m <= 0)
            fail(Errc::precondition, "crt-bad-modulus", "moduli must be positive");
        Integer g = gcd(M, m);
        Integer diff = r - x;
        if (!divides(g, diff))
            fail(Errc::precondition, "crt-inconsistent",
                 "residue " + r.get_str() + " mod " + m.get_str() + " conflicts with earlier pairs");
        Integer mg = m / g;
        Integer inv = invmod(mod(M / g, mg), mg).value_or(Integer(0));
        if (mg == 1)
            inv = 0;
        Integer t = mod((diff / g) * inv, mg);
        x += M * t;
        M *= mg;
        x = mod(x, M);
    }
    return {x, M};
}

} // namespace uchida::arith

#endif
