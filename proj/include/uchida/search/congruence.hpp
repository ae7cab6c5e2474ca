#ifndef UCHIDA_SEARCH_CONGRUENCE_HPP
#define UCHIDA_SEARCH_CONGRUENCE_HPP

#include <set>

#include "uchida/search/pairs.hpp"

namespace uchida::search {

struct PrimeWitness {
    Integer q;
    Integer z1;     // z1^(2^s n) = 3
    Integer z2;     // z2^(2^s) = d
    Integer x;      // z1^6 z2 x = a~
    Integer exponent = 1; // modulus is q^exponent (1 for certificate primes, 2 for ramification primes)
};

struct CongruenceSolution {
    Integer a;        // odd, in [0, M)
    Integer modulus;  // M = 2 * prod q * prod p^2
    std::vector<PrimeWitness> witnesses;
    std::vector<Integer> ramified; // primes p added with p || m
};

/// 3^6 d^n x^(2^s n) = a~^(2^s n) (mod q).
inline bool congruence_holds(const Integer& x, const Integer& q, const UchidaBase& b, const Integer& d)
{
    Integer E(b.exponent);
    Integer lhs = mod(729 * powmod(mod(d, q), Integer(b.n), q) * powmod(mod(x, q), E, q), q);
    return lhs == powmod(mod(b.a_tilde, q), E, q);
}

/// One odd a with 3^6 d^n a^(2^s n) = a~^(2^s n) modulo every certificate prime.
inline CongruenceSolution solve_congruences(const std::vector<PrimePairCertificate>& certs, const UchidaBase& b, const Integer& d)
{
    std::set<u64> qs;
    for (auto& c : certs) {
        if (c.q1)
            qs.insert(c.q1->screen.q);
        if (c.q2)
            qs.insert(c.q2->screen.q);
    }
    CongruenceSolution sol;
    std::vector<std::pair<Integer, Integer>> rs{{Integer(1), Integer(2)}};
    for (u64 q64 : qs) {
        Integer q = from_u64(q64);
        PrimeWitness w;
        w.q = q;
        auto z1 = rth_root_mod(Integer(3), Integer(b.exponent), q);
        auto z2 = rth_root_mod(d, Integer(1UL << b.s), q);
        ensure(z1 && z2, "root-extraction", "no root mod " + q.get_str() + " although the certificate says so");
        w.z1 = *z1;
        w.z2 = *z2;
        Integer t = mod(powmod(w.z1, Integer(6), q) * w.z2, q);
        w.x = mod(b.a_tilde * invmod(t, q).value(), q);
        ensure(congruence_holds(w.x, q, b, d), "congruence-check", "x fails the congruence mod " + q.get_str());
        rs.emplace_back(w.x, q);
        sol.witnesses.push_back(std::move(w));
    }
    auto [a, M] = crt(rs);
    sol.a = a;
    sol.modulus = M;
    for (auto& w : sol.witnesses)
        ensure(congruence_holds(sol.a, w.q, b, d), "congruence-merged", "merged a fails mod " + w.q.get_str());
    ensure(mpz_odd_p(sol.a.get_mpz_t()), "a-odd", "merged a is even");
    return sol;
}

/// Adds k fresh primes p with p || 3^6 d^n a^(2^s n) + 27, so that
/// v_p(m) = 1 and p is totally ramified in K.  a is moved by CRT modulo p^2.
inline CongruenceSolution augment_ramification(CongruenceSolution sol, const Integer& d, unsigned long n, unsigned long s, unsigned long k,
                                               const Integer& search_limit = Integer(1'000'000))
{
    if (k == 0)
        return sol;
    const Integer E(n << s);
    std::vector<std::pair<Integer, Integer>> rs{{sol.a, sol.modulus}};
    Integer M = sol.modulus;
    unsigned long added = 0;
    for (Integer p = 5; added < k; p = next_prime(p)) {
        if (p > search_limit)
            fail(Errc::bound_exhausted, "ramification-bound", "fewer than k suitable primes below the search limit");
        if (gcd(p, M * d) != 1)
            continue;
        // b^(2^s n) = -27 / (3^6 d^n) mod p
        Integer c = mod(-27 * invmod(mod(729 * ipow(d, n), p), p).value(), p);
        auto r = rth_root_mod(c, E, p);
        if (!r)
            continue;
        Integer p2 = p * p, bp = -1;
        for (Integer t = 0; t < p; ++t) {
            Integer cand = *r + t * p;
            Integer v = mod(729 * ipow(d, n) * powmod(cand, E, p2) + 27, p2);
            if (divides(p, v) && v != 0) {
                bp = cand;
                break;
            }
        }
        if (bp < 0)
            continue;
        rs.emplace_back(bp, p2);
        M *= p2;
        sol.ramified.push_back(p);
        sol.witnesses.push_back(PrimeWitness{p, 0, 0, bp, 2});
        ++added;
    }
    auto [a, mod_] = crt(rs);
    sol.a = a;
    sol.modulus = mod_;
    ensure(mpz_odd_p(sol.a.get_mpz_t()), "a-odd", "merged a is even");
    for (auto& p : sol.ramified) {
        Integer p2 = p * p;
        Integer m4 = mod(729 * ipow(d, n) * powmod(sol.a, E, p2) + 27, p2);
        ensure(divides(p, m4) && m4 != 0, "ramified-valuation", "p does not divide 4m exactly once");
    }
    return sol;
}

} // namespace uchida::search

#endif
