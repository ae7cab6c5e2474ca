#ifndef UCHIDA_CORE_RAMIFICATION_HPP
#define UCHIDA_CORE_RAMIFICATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "uchida/core/instance.hpp"

namespace uchida::core {

enum class PrimeClass { totally_ramified, p1sq_p2, unramified_other, special3 };

inline const char* class_name(PrimeClass c)
{
    switch (c) {
    case PrimeClass::totally_ramified: return "totally-ramified";
    case PrimeClass::p1sq_p2: return "p1^2p2";
    case PrimeClass::unramified_other: return "unramified-other";
    case PrimeClass::special3: return "p=3-special";
    }
    return "?";
}

/// Classification from valuations alone: totally ramified when
/// 0 < v_p(m) and 3 does not divide it, p1^2 p2 when v_p(4m-27) is odd.
/// p = 3 is never classified this way.
inline PrimeClass classify_prime(const Integer& p, const UchidaInstance& I)
{
    if (!is_prime(p))
        fail(Errc::precondition, "not-prime", p.get_str() + " is not prime");
    if (p == 3)
        return PrimeClass::special3;
    unsigned long vm = valuation(I.m(), p);
    unsigned long vq = valuation(I.disc_quad(), p);
    if (vm > 0 && vm % 3 != 0)
        return PrimeClass::totally_ramified;
    if (vq % 2 == 1)
        return PrimeClass::p1sq_p2;
    return PrimeClass::unramified_other;
}

/// Does an actual factorization of p O_K have the shape the class predicts?
inline bool class_matches(PrimeClass c, const std::vector<nf::PrimeIdeal>& ps)
{
    switch (c) {
    case PrimeClass::totally_ramified: return ps.size() == 1 && ps[0].e == 3;
    case PrimeClass::p1sq_p2: return ps.size() == 2 && ps[0].f == 1 && ps[1].f == 1 && ps[0].e * ps[1].e == 2;
    case PrimeClass::unramified_other:
        return std::all_of(ps.begin(), ps.end(), [](const nf::PrimeIdeal& P) { return P.e == 1; });
    case PrimeClass::special3: return true;
    }
    return false;
}

struct PrimeRow {
    Integer p;
    unsigned long v_m = 0;
    unsigned long v_disc_quad = 0;
    PrimeClass cls = PrimeClass::unramified_other;
    std::string shape;       // from factor_prime, empty when not computed
    bool totally_ramified = false;
};

struct RamificationReport {
    bool complete = true;                          // m fully factored
    std::optional<std::pair<Integer, Integer>> cube_free; // (b, c), m = b c^3
    std::vector<PrimeRow> rows;                    // p | m (4m - 27), ascending
    unsigned long totally_ramified_count = 0;
    unsigned long t = 0;                           // max(0, count - 6)
    bool cross_checked = false;                    // every row matched factor_prime
};

/// Per-prime table for p | m(4m-27).  With cross_check, each row is also
/// factored in O_K and a disagreement is a hard error.
inline RamificationReport ramification_report(const UchidaInstance& I, bool cross_check = true)
{
    RamificationReport rep;
    rep.complete = I.m_factors().complete() && I.support_complete();
    if (I.m_factors().complete()) {
        Integer b = I.m_factors().sign, c = 1;
        for (auto& [p, e] : I.m_factors().factors) {
            b *= ipow(p, e % 3);
            c *= ipow(p, e / 3);
        }
        rep.cube_free = std::make_pair(b, c);
    }
    std::set<Integer> ps;
    for (auto& p : I.m_factors().primes())
        ps.insert(p);
    for (auto& p : I.disc_quad_factors().primes())
        ps.insert(p);
    bool all_checked = cross_check;
    for (auto& p : ps) {
        PrimeRow r;
        r.p = p;
        r.v_m = valuation(I.m(), p);
        r.v_disc_quad = valuation(I.disc_quad(), p);
        r.cls = classify_prime(p, I);
        if (cross_check || p == 3) {
            if (I.K().maximal_at(p)) {
                auto fac = I.K().factor_prime(p);
                r.shape = nf::shape_string(fac);
                if (p != 3)
                    ensure(class_matches(r.cls, fac), "classification-mismatch",
                           "p=" + p.get_str() + " classified " + class_name(r.cls) + " but factors as " + r.shape);
            } else {
                all_checked = false;
            }
        }
        r.totally_ramified = p == 3 ? r.shape == "1^3" : r.cls == PrimeClass::totally_ramified;
        // p | 4m - 27 and p != 3 forces p not dividing m
        if (p != 3 && r.v_disc_quad > 0)
            ensure(r.v_m == 0, "disc-quad-coprime-m", "p=" + p.get_str() + " divides both m and 4m-27");
        rep.totally_ramified_count += r.totally_ramified ? 1 : 0;
        rep.rows.push_back(std::move(r));
    }
    rep.cross_checked = all_checked;
    rep.t = rep.totally_ramified_count > 6 ? rep.totally_ramified_count - 6 : 0;
    return rep;
}

} // namespace uchida::core

#endif
