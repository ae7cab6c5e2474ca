#ifndef UCHIDA_ARITH_RESIDUE_HPP
#define UCHIDA_ARITH_RESIDUE_HPP

#include <numeric>
#include <optional>

#include "uchida/arith/integer.hpp"

namespace uchida::arith {

/// True iff x = y^r (mod q) is solvable; q prime, q does not divide x.
inline bool power_residue_test(const Integer& x, const Integer& r, const Integer& q)
{
    if (r <= 0)
        fail(Errc::precondition, "residue-bad-exponent", "r must be positive");
    Integer xr = mod(x, q);
    if (xr == 0)
        fail(Errc::precondition, "residue-zero", "x is divisible by q");
    Integer g = gcd(r, q - 1);
    return powmod(xr, (q - 1) / g, q) == 1;
}

/// l-th power test in F_q for the search hot loop (l | q-1 not required).
inline bool power_residue_test64(u64 x, u64 r, u64 q)
{
    u64 g = std::gcd(r, q - 1);
    return powmod64(x % q, (q - 1) / g, q) == 1;
}

namespace detail {

/// Root of prime order l of x in F_q, x assumed an l-th power, l | q-1.
/// Splits F_q^* into its l-Sylow part S (order l^e) and the complement T
/// (order t); the T-part root is an exponentiation, the S-part root comes
/// from a base-l discrete logarithm against a generator of S.
inline Integer prime_order_root(const Integer& x, const Integer& l, const Integer& q)
{
    Integer qm1 = q - 1;
    Integer t = qm1;
    unsigned long e = mpz_remove(t.get_mpz_t(), t.get_mpz_t(), l.get_mpz_t());
    Integer le = ipow(l, e);

    // generator of S from an l-th power non-residue
    Integer rho = 2;
    while (powmod(rho, qm1 / l, q) == 1)
        ++rho;
    Integer gen = powmod(rho, t, q); // order exactly l^e

    // discrete log of a = x^t in S, digit by digit in base l
    Integer a = powmod(x, t, q);
    Integer gen_top = powmod(gen, ipow(l, e - 1), q); // order l
    Integer k = 0;
    Integer gen_inv = invmod(gen, q).value();
    for (unsigned long i = 0; i < e; ++i) {
        // (a * gen^{-k})^{l^{e-1-i}} = gen_top^{digit}
        Integer h = powmod(a * powmod(gen_inv, k, q) % q, ipow(l, e - 1 - i), q);
        Integer digit = 0, acc = 1;
        while (acc != h) {
            acc = acc * gen_top % q;
            ++digit;
            if (digit >= l)
                fail(Errc::internal_assertion, "dlog-failed", "Sylow discrete log did not converge");
        }
        k += digit * ipow(l, i);
    }
    // k divisible by l since a is an l-th power in S
    Integer y = powmod(gen, k / l, q); // y^l = a

    // x = x^{l^e e1} * x^{t e2} with l^e e1 + t e2 = 1
    Integer g, e1, e2;
    mpz_gcdext(g.get_mpz_t(), e1.get_mpz_t(), e2.get_mpz_t(), le.get_mpz_t(), t.get_mpz_t());
    Integer xT = powmod(x, mod(le * e1, qm1), q);
    Integer root_T = t == 1 ? Integer(1) : powmod(xT, invmod(mod(l, t), t).value(), q);
    Integer root_S = powmod(y, mod(e2, le), q);
    return root_T * root_S % q;
}

} // namespace detail

/// Some z with z^r = x (mod q), or nullopt when none exists.
inline std::optional<Integer> rth_root_mod(const Integer& x, const Integer& r, const Integer& q)
{
    if (r <= 0)
        fail(Errc::precondition, "root-bad-exponent", "r must be positive");
    Integer xr = mod(x, q);
    if (xr == 0)
        fail(Errc::precondition, "root-zero", "x is divisible by q");
    if (r == 1)
        return xr;
    Integer qm1 = q - 1;
    Integer g = gcd(r, qm1);
    if (powmod(xr, qm1 / g, q) != 1)
        return std::nullopt;
    // w^g = x by successive prime-order roots
    Integer w = xr;
    auto fac = factorize(g);
    for (auto& [l, e] : fac.factors)
        for (unsigned long i = 0; i < e; ++i)
            w = detail::prime_order_root(w, l, q);
    // z = w^u with u = (r/g)^{-1} mod (q-1)/g
    Integer h = qm1 / g;
    Integer u = h == 1 ? Integer(1) : invmod(mod(r / g, h), h).value();
    Integer z = powmod(w, u, q);
    ensure(powmod(z, r, q) == xr, "root-check", "z^r != x after root extraction");
    return z;
}

} // namespace uchida::arith

#endif
