#ifndef UCHIDA_SEARCH_PROBE_HPP
#define UCHIDA_SEARCH_PROBE_HPP

#include <string>
#include <vector>

#include "uchida/nf/units.hpp"
#include "uchida/search/base.hpp"

namespace uchida::search {

enum class ProbeStatus { verified, violated, unverified };

inline const char* probe_status_name(ProbeStatus s)
{
    switch (s) {
    case ProbeStatus::verified: return "verified";
    case ProbeStatus::violated: return "violated";
    case ProbeStatus::unverified: return "unverified-within-limits";
    }
    return "?";
}

struct ProbeValuation {
    Integer p;
    std::size_t prime = 0; // index among the primes above p
    unsigned e = 0, f = 0;
    long v = 0;
};

struct ProbeReport {
    Rational norm_alpha;                 // N(alpha~)
    std::vector<ProbeValuation> valuations;
    std::vector<std::pair<unsigned long, ProbeStatus>> not_lth_power; // per l in P_2n
    std::vector<std::string> notes;
    nf::Interval pair_regulator;         // of (eps~, eps~^sigma)
    ProbeStatus units_independent = ProbeStatus::unverified;
    ProbeStatus unit_index_coprime = ProbeStatus::unverified;
};

/// Best-effort checks of the two hypotheses on the base field: that
/// (alpha~) is not the l-th power of a principal ideal, and that
/// <eps~, eps~^sigma> has index prime to 2n.  Nothing here throws on a
/// failed hypothesis; each item carries its status.
inline ProbeReport hypothesis_probe(const UchidaBase& b)
{
    const nf::GaloisCubic& G = *b.G;
    const nf::Algebra& A = G.algebra();
    const nf::CubicField& K = *b.K;
    const nf::Order& O = K.order();
    ProbeReport rep;
    nf::Elem alpha = A.div(A.sub(G.pi(), b.sigma_poly), G.pi());
    rep.norm_alpha = A.norm(alpha);

    Integer num = abs(rep.norm_alpha.get_num()), den = rep.norm_alpha.get_den();
    std::set<Integer> ps;
    for (auto& p : factorize(num).require_complete().primes())
        ps.insert(p);
    for (auto& p : factorize(den).require_complete().primes())
        ps.insert(p);
    for (auto& p : ps) {
        auto above = K.factor_prime(p);
        for (std::size_t k = 0; k < above.size(); ++k)
            rep.valuations.push_back({p, k, above[k].e, above[k].f, nf::valuation(O, above[k], alpha)});
    }
    bool trivial = std::all_of(rep.valuations.begin(), rep.valuations.end(), [](const ProbeValuation& v) { return v.v == 0; });
    for (unsigned long l : b.ells) {
        bool lth = std::all_of(rep.valuations.begin(), rep.valuations.end(),
                               [&](const ProbeValuation& v) { return v.v % static_cast<long>(l) == 0; });
        ProbeStatus st = !lth ? ProbeStatus::verified : (trivial ? ProbeStatus::violated : ProbeStatus::unverified);
        rep.not_lth_power.emplace_back(l, st);
    }
    if (trivial)
        rep.notes.push_back("alpha~ is a unit: (alpha~) is the l-th power of the principal unit ideal for every l");

    nf::Elem eps = A.add(G.pi(), A.one());
    try {
        rep.pair_regulator = nf::certify_independent(G, eps, G.sigma(eps));
        rep.units_independent = ProbeStatus::verified;
    } catch (const Error& e) {
        if (e.code() != Errc::precision)
            throw;
        rep.pair_regulator = nf::regulator_of_pair(G, eps, G.sigma(eps));
    }
    rep.notes.push_back("unit index parity needs the full unit group of a totally real cubic; not computed");
    return rep;
}

} // namespace uchida::search

#endif
