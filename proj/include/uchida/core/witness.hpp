#ifndef UCHIDA_CORE_WITNESS_HPP
#define UCHIDA_CORE_WITNESS_HPP

#include <string>
#include <vector>

#include "uchida/core/alpha.hpp"
#include "uchida/core/ramification.hpp"

namespace uchida::core {

/// A prime of O_F above p, as (p, w - c) with w = (1 + sqrt d)/2, or pO_F
/// when p is inert (c unset).
struct FPrime {
    Integer p;
    std::optional<Integer> c;
    unsigned e = 1, f = 1;
};

inline std::vector<FPrime> f_primes_above(const Integer& p, const Integer& d)
{
    // w^2 - w + (1 - d)/4
    Integer c0 = (1 - d) / 4;
    auto roots = roots_mod_p(IntPoly({c0, Integer(-1), Integer(1)}), p);
    std::vector<FPrime> out;
    if (roots.roots.empty())
        return {FPrime{p, std::nullopt, 1, 2}};
    if (roots.roots.size() == 1)
        return {FPrime{p, from_u64(roots.roots[0]), 2, 1}};
    for (u64 c : roots.roots)
        out.push_back(FPrime{p, from_u64(c), 1, 1});
    return out;
}

struct KFPrimeRow {
    Integer p;
    std::size_t f_prime = 0; // index into the F-primes above p
    unsigned e = 0, f = 0;   // absolute
    unsigned e_rel = 0, f_rel = 0;
    long v_alpha = 0;
    long v_diff = 0;         // valuation of pi - pi^sigma
    nf::PrimeIdeal prime;
};

struct NthPowerWitness {
    std::vector<KFPrimeRow> rows;
    std::map<Integer, std::vector<FPrime>> f_primes;
    bool three_divides_d = false;
    bool lemma_3_checked = false; // structure above 3 matched
    std::vector<Integer> split_checked; // p | 4m-27, p != 3, complete splitting verified
};

namespace detail {

inline nf::Order kf_order(const UchidaInstance& I)
{
    I.require_support("KF valuations");
    return nf::compositum_maximal_order(I.G(), I.support_primes());
}

/// O_F prime as generators in KF order coordinates.
inline std::vector<IntVec> f_prime_generators(const UchidaInstance& I, const nf::Order& O, const FPrime& P)
{
    const GaloisCubic& G = I.G();
    std::vector<IntVec> g{O.require_integral(G.embed_F({Rational(P.p), 0}))};
    if (P.c) {
        // w - c = (1/2 - c) + (1/2) sqrt d
        g.push_back(O.require_integral(G.embed_F({Rational(1, 2) - Rational(*P.c), Rational(1, 2)})));
    }
    return g;
}

} // namespace detail

/// Valuations of alpha at every prime of KF above the primes of 3da, with
/// the decomposition facts for 3 and for p | 4m-27 checked on the way.
/// Any valuation not divisible by n is a hard error.
inline NthPowerWitness decompose_alpha(const UchidaInstance& I, const AlphaData& ad)
{
    const GaloisCubic& G = I.G();
    const nf::Algebra& A = G.algebra();
    nf::Order O = detail::kf_order(I);
    NthPowerWitness w;
    w.three_divides_d = divides(Integer(3), I.d());
    Elem diff = A.sub(G.pi(), G.pi_sigma());

    for (auto& p : I.support_primes()) {
        auto fps = f_primes_above(p, I.d());
        w.f_primes[p] = fps;
        auto kps = nf::primes_above(O, p);
        std::vector<std::vector<std::size_t>> over(fps.size());
        for (auto& P : kps) {
            KFPrimeRow r;
            r.p = p;
            r.e = P.e;
            r.f = P.f;
            bool placed = false;
            for (std::size_t i = 0; i < fps.size() && !placed; ++i) {
                auto gens = detail::f_prime_generators(I, O, fps[i]);
                if (std::all_of(gens.begin(), gens.end(), [&](const IntVec& g) { return P.ideal.contains(g); })) {
                    r.f_prime = i;
                    placed = true;
                }
            }
            ensure(placed, "kf-prime-over", "KF prime above " + p.get_str() + " lies over no F prime");
            r.e_rel = P.e / fps[r.f_prime].e;
            r.f_rel = P.f / fps[r.f_prime].f;
            r.v_alpha = nf::valuation(O, P, ad.alpha);
            r.v_diff = nf::valuation(O, P, diff);
            ensure(r.v_alpha % static_cast<long>(I.n()) == 0, "alpha-nth-power",
                   "v(alpha) = " + std::to_string(r.v_alpha) + " at a prime above " + p.get_str() + " is not divisible by n = " + std::to_string(I.n()));
            r.prime = P;
            over[r.f_prime].push_back(w.rows.size());
            w.rows.push_back(std::move(r));
        }

        auto splits_completely = [&](std::size_t i) {
            return over[i].size() == 3 && std::all_of(over[i].begin(), over[i].end(), [&](std::size_t k) {
                       return w.rows[k].e_rel == 1 && w.rows[k].f_rel == 1;
                   });
        };
        auto count_positive = [&](std::size_t i, long KFPrimeRow::*field) {
            return std::count_if(over[i].begin(), over[i].end(), [&](std::size_t k) { return w.rows[k].*field > 0; });
        };

        if (p == 3) {
            if (w.three_divides_d) {
                // P3 splits completely in KF/F and alpha lies in exactly one prime above it
                ensure(fps.size() == 1 && splits_completely(0), "three-split", "P3 does not split completely in KF/F");
                ensure(count_positive(0, &KFPrimeRow::v_alpha) == 1, "three-alpha", "alpha is not in exactly one prime above P3");
            } else if (!divides(Integer(3), I.a())) {
                for (std::size_t i = 0; i < fps.size(); ++i)
                    ensure(count_positive(i, &KFPrimeRow::v_alpha) == 0, "three-coprime", "alpha is not prime to 3");
            }
            w.lemma_3_checked = true;
        } else {
            // p | 4m - 27: every P above p splits completely and pi - pi^sigma
            // lies in exactly one prime above P
            for (std::size_t i = 0; i < fps.size(); ++i) {
                ensure(splits_completely(i), "p-split", "prime above " + p.get_str() + " does not split completely in KF/F");
                ensure(count_positive(i, &KFPrimeRow::v_diff) == 1, "p-diff",
                       "pi - pi^sigma is not in exactly one prime above " + p.get_str());
            }
            w.split_checked.push_back(p);
        }
    }
    // the rows account for the whole norm of alpha
    Integer normprod = 1;
    for (auto& r : w.rows)
        normprod *= ipow(r.p, static_cast<unsigned long>(r.f) * static_cast<unsigned long>(r.v_alpha));
    ensure(Rational(normprod) == abs(ad.norm_Q), "alpha-support", "valuations do not account for N(alpha)");
    return w;
}

struct KPrimeRow {
    nf::PrimeIdeal prime;
    long v_beta = 0;
    long exponent = 0; // v_beta / n
};

struct BetaData {
    Elem beta;               // N_{KF/K}(alpha^sigma), power basis of K
    IntVec beta_order;       // in O_K coordinates
    std::vector<KPrimeRow> rows;
    nf::Ideal B;             // prod P^(v/n)
    Elem unit;               // beta / (alpha^sigma)^2 in KF
    std::string unit_form;   // matched closed form of that unit
};

/// beta = N_{KF/K}(alpha^sigma) and the ideal B with B^n = beta O_K.
inline BetaData beta_ideal(const UchidaInstance& I, const AlphaData& ad)
{
    const GaloisCubic& G = I.G();
    const nf::Algebra& A = G.algebra();
    const CubicField& K = I.K();
    I.require_support("beta_ideal");
    BetaData out;
    Elem as = G.sigma(ad.alpha);
    out.beta = G.norm_K(as);
    const nf::Order& OK = K.order();
    out.beta_order = OK.require_integral(out.beta);

    Integer normprod = 1;
    std::vector<std::pair<const nf::PrimeIdeal*, unsigned long>> factors;
    for (auto& p : I.support_primes()) {
        for (auto& P : K.factor_prime(p)) {
            KPrimeRow r;
            r.prime = P;
            r.v_beta = nf::valuation(OK, P, out.beta_order);
            ensure(r.v_beta % static_cast<long>(I.n()) == 0, "beta-nth-power",
                   "v(beta) = " + std::to_string(r.v_beta) + " above " + p.get_str() + " is not divisible by n");
            r.exponent = r.v_beta / static_cast<long>(I.n());
            normprod *= ipow(P.norm(), static_cast<unsigned long>(r.v_beta));
            out.rows.push_back(std::move(r));
        }
    }
    ensure(normprod == abs(OK.norm(out.beta_order)), "beta-support", "valuations do not account for N(beta)");
    for (auto& r : out.rows)
        factors.emplace_back(&r.prime, static_cast<unsigned long>(r.exponent));
    out.B = nf::ideal_product(OK, factors);
    ensure(nf::ideal_pow(OK, out.B, I.n()) == nf::principal_ideal(OK, out.beta_order), "beta-ideal",
           "B^n != beta O_K");

    // beta / (alpha^sigma)^2 = tau(alpha^sigma) / alpha^sigma is a unit
    out.unit = A.div(G.embed_K(out.beta), A.mul(as, as));
    RatPoly cp = A.charpoly(out.unit);
    bool integral = std::all_of(cp.coeffs().begin(), cp.coeffs().end(), [](const Rational& c) { return c.get_den() == 1; });
    ensure(integral && abs(cp.coeff(0)) == 1, "beta-unit", "beta / (alpha^sigma)^2 is not a unit");
    std::vector<std::pair<std::string, Elem>> conj{{"pi", G.pi()}, {"pi^sigma", G.pi_sigma()}, {"pi^sigma^2", G.sigma(G.pi_sigma())}};
    for (auto& [na, a] : conj)
        for (auto& [nb, b] : conj) {
            if (na == nb)
                continue;
            Elem q = A.div(a, b);
            if (q == out.unit)
                out.unit_form = na + "/" + nb;
            else if (A.neg(q) == out.unit)
                out.unit_form = "-" + na + "/" + nb;
        }
    if (out.unit_form.empty())
        out.unit_form = "other";
    return out;
}

} // namespace uchida::core

#endif
