#ifndef UCHIDA_SEARCH_PAIRS_HPP
#define UCHIDA_SEARCH_PAIRS_HPP

#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <thread>

#include "uchida/nf/serialize.hpp"
#include "uchida/search/base.hpp"

namespace uchida::search {

struct PrimePairCertificate {
    TripleIndex triple;
    std::optional<RoleEvidence> q1, q2;
    bool v_unsatisfiable = false; // (i, j) = (0, 0): condition (v) cannot hold
    u64 scan_bound = 0;
};

struct SearchOptions {
    u64 q_bound = 1'000'000;
    unsigned workers = 1;
    u64 segment = 1 << 16;
    std::string resume_path; // empty: no resume file
};

struct SearchResult {
    std::map<TripleIndex, PrimePairCertificate> found;
    std::vector<TripleIndex> not_found; // no pair below the bound
    std::vector<TripleIndex> obstructed; // subset of not_found: alpha~_ij = +-1 is an l-th power outright
    u64 scanned_to = 0;                 // every prime below this was examined
};

namespace detail {

inline std::vector<u64> small_primes(u64 limit)
{
    std::vector<bool> comp(limit + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= limit; ++i) {
        if (comp[i])
            continue;
        out.push_back(i);
        for (u64 j = i * i; j <= limit; j += i)
            comp[j] = true;
    }
    return out;
}

/// Primes in [lo, hi).
inline std::vector<u64> sieve_segment(u64 lo, u64 hi, const std::vector<u64>& base)
{
    std::vector<bool> comp(hi - lo, false);
    for (u64 p : base) {
        if (p * p >= hi)
            break;
        u64 start = std::max(p * p, (lo + p - 1) / p * p);
        for (u64 j = start; j < hi; j += p)
            comp[j - lo] = true;
    }
    std::vector<u64> out;
    for (u64 x = std::max<u64>(lo, 2); x < hi; ++x)
        if (!comp[x - lo])
            out.push_back(x);
    return out;
}

/// The two smallest primes found so far for each role of each triple.
struct Candidates {
    std::map<TripleIndex, std::vector<u64>> r1, r2;

    static void push(std::vector<u64>& v, u64 q)
    {
        if (v.size() < 2 && std::find(v.begin(), v.end(), q) == v.end()) {
            v.push_back(q);
            std::sort(v.begin(), v.end());
        }
    }

    /// Lexicographically smallest (q1, q2) with q1 != q2 from what is known.
    std::optional<std::pair<u64, u64>> pair(const TripleIndex& t, bool final) const
    {
        auto a = r1.find(t), b = r2.find(t);
        if (a == r1.end() || b == r2.end() || a->second.empty() || b->second.empty())
            return std::nullopt;
        const auto &x = a->second, &y = b->second;
        if (x[0] != y[0])
            return std::make_pair(x[0], y[0]);
        if (y.size() > 1)
            return std::make_pair(x[0], y[1]);
        // (x[1], y[0]) is smallest only once no second q2 can appear below x[1]
        if (final && x.size() > 1)
            return std::make_pair(x[1], y[0]);
        return std::nullopt;
    }

    bool complete(const std::vector<TripleIndex>& ts) const
    {
        for (auto& t : ts) {
            bool only_q1 = t.i == 0 && t.j == 0;
            if (only_q1 ? (r1.count(t) == 0 || r1.at(t).empty()) : !pair(t, false))
                return false;
        }
        return true;
    }
};

struct SegmentHit {
    u64 q;
    std::vector<std::pair<TripleIndex, Role>> roles;
};

inline std::vector<SegmentHit> scan_segment(u64 lo, u64 hi, const std::vector<u64>& base_primes, const UchidaBase& b,
                                            const Integer& d, const std::vector<TripleIndex>& ts)
{
    std::vector<SegmentHit> hits;
    for (u64 q : sieve_segment(lo, hi, base_primes)) {
        auto ps = screen_prime(q, b, d);
        if (!ps)
            continue;
        SegmentHit h{q, {}};
        for (auto& t : ts)
            for (Role role : {Role::q1, Role::q2})
                if (check_role(*ps, t, role))
                    h.roles.emplace_back(t, role);
        if (!h.roles.empty())
            hits.push_back(std::move(h));
    }
    return hits;
}

inline nf::Json candidates_to_json(const Candidates& c)
{
    nf::Json j = nf::Json::object();
    auto dump = [&](const std::map<TripleIndex, std::vector<u64>>& m, const char* role) {
        for (auto& [t, v] : m)
            j[t.key()][role] = v;
    };
    dump(c.r1, "q1");
    dump(c.r2, "q2");
    return j;
}

inline TripleIndex triple_from_key(const std::string& k)
{
    TripleIndex t;
    if (std::sscanf(k.c_str(), "%lu:%lu:%lu", &t.l, &t.i, &t.j) != 3)
        fail(Errc::parameter, "resume-key", "bad triple key " + k);
    return t;
}

} // namespace detail

/// Recomputes every recorded fact of one role from the prime and the base.
inline bool verify_role(const RoleEvidence& ev, const UchidaBase& b, const Integer& d, const TripleIndex& t, Role role)
{
    const u64 q = ev.screen.q;
    if (!is_prime(from_u64(q)) || q % b.exponent != 1 || divides(Integer(from_u64(q)), 6 * b.disc))
        return false;
    IntPoly u = b.u;
    for (u64 c : ev.screen.roots)
        if (mod(u.eval(Integer(from_u64(c))), Integer(from_u64(q))) != 0)
            return false;
    if (!(ev.screen.roots[0] < ev.screen.roots[1] && ev.screen.roots[1] < ev.screen.roots[2]))
        return false;
    if (sigma_images(q, b, ev.screen.roots) != ev.screen.sigma)
        return false;
    if (powmod(mod(d, Integer(from_u64(q))), Integer(from_u64((q - 1) >> b.s)), Integer(from_u64(q))) != 1)
        return false;
    if (powmod(Integer(3), Integer(from_u64((q - 1) / b.exponent)), Integer(from_u64(q))) != 1)
        return false;
    if (ev.assignment > 2 || role_value(ev.screen, t, role, ev.assignment) != ev.value)
        return false;
    Integer pw = powmod(Integer(from_u64(ev.value)), Integer(from_u64((q - 1) / t.l)), Integer(from_u64(q)));
    return pw == from_u64(ev.value_power) && pw != 1;
}

inline bool verify_certificate(const PrimePairCertificate& c, const UchidaBase& b, const Integer& d)
{
    const auto& t = c.triple;
    if (!c.q1 || !verify_role(*c.q1, b, d, t, Role::q1))
        return false;
    if (t.i == 0 && t.j == 0)
        return c.v_unsatisfiable && !c.q2;
    return c.q2 && c.q2->screen.q != c.q1->screen.q && verify_role(*c.q2, b, d, t, Role::q2);
}

/// Smallest qualifying (q1, q2) for every triple, scanning primes
/// q = 1 mod 2^s n in ascending segments.  Workers take consecutive
/// segments; results merge in segment order, so the output does not
/// depend on the worker count.
inline SearchResult search_pairs(const UchidaBase& b, const Integer& d, const SearchOptions& opt)
{
    if (d >= 0 || mod(d, 4) != 1)
        fail(Errc::parameter, "d-shape", "d must be negative and 1 mod 4");
    if (opt.q_bound < 3 || opt.q_bound > (u64(1) << 40))
        fail(Errc::parameter, "q-bound", "q_bound must lie in [3, 2^40]");
    const auto ts = all_triples(b);
    const unsigned workers = std::max(1u, opt.workers);
    const u64 seg = std::max<u64>(opt.segment, 1024);
    auto base_primes = detail::small_primes(static_cast<u64>(std::sqrt(static_cast<double>(opt.q_bound))) + 2);

    detail::Candidates cand;
    u64 next_seg = 0;
    const std::string params = b.a_tilde.get_str() + "/" + std::to_string(b.n) + "/" + std::to_string(b.s) + "/" + d.get_str() +
                               "/" + std::to_string(seg);
    if (!opt.resume_path.empty()) {
        std::ifstream in(opt.resume_path);
        if (in) {
            nf::Json j = nf::Json::parse(in);
            if (j.at("params").get<std::string>() != params)
                fail(Errc::parameter, "resume-mismatch", "resume file belongs to a different search");
            next_seg = j.at("next_segment").get<u64>();
            for (auto& [k, v] : j.at("candidates").items()) {
                TripleIndex t = detail::triple_from_key(k);
                if (v.contains("q1"))
                    cand.r1[t] = v["q1"].get<std::vector<u64>>();
                if (v.contains("q2"))
                    cand.r2[t] = v["q2"].get<std::vector<u64>>();
            }
        }
    }
    auto save = [&]() {
        if (opt.resume_path.empty())
            return;
        nf::Json j{{"params", params}, {"next_segment", next_seg}, {"candidates", detail::candidates_to_json(cand)}};
        std::ofstream out(opt.resume_path + ".tmp");
        out << j.dump(1) << "\n";
        out.close();
        std::rename((opt.resume_path + ".tmp").c_str(), opt.resume_path.c_str());
    };

    const u64 nseg = (opt.q_bound + seg) / seg; // segments cover [0, q_bound]
    while (next_seg < nseg && !cand.complete(ts)) {
        std::vector<std::future<std::vector<detail::SegmentHit>>> jobs;
        for (unsigned w = 0; w < workers && next_seg + w < nseg; ++w) {
            u64 lo = (next_seg + w) * seg, hi = std::min(lo + seg, opt.q_bound + 1);
            jobs.push_back(std::async(std::launch::async, [&, lo, hi] { return detail::scan_segment(lo, hi, base_primes, b, d, ts); }));
        }
        for (auto& f : jobs) {
            for (auto& h : f.get())
                for (auto& [t, role] : h.roles)
                    detail::Candidates::push(role == Role::q1 ? cand.r1[t] : cand.r2[t], h.q);
            ++next_seg;
        }
        save();
    }

    SearchResult res;
    res.scanned_to = std::min(next_seg * seg, opt.q_bound + 1);
    for (auto& t : ts) {
        PrimePairCertificate c;
        c.triple = t;
        c.scan_bound = opt.q_bound;
        auto q_of = [&](u64 q, Role role) {
            auto ps = screen_prime(q, b, d);
            ensure(ps.has_value(), "candidate-rescreen", "candidate prime failed its screen");
            auto ev = check_role(*ps, t, role);
            ensure(ev.has_value(), "candidate-recheck", "candidate prime failed its role");
            return *ev;
        };
        if (t.i == 0 && t.j == 0) {
            c.v_unsatisfiable = true;
            if (cand.r1.count(t) && !cand.r1[t].empty())
                c.q1 = q_of(cand.r1[t][0], Role::q1);
        } else if (auto pr = cand.pair(t, true)) {
            c.q1 = q_of(pr->first, Role::q1);
            c.q2 = q_of(pr->second, Role::q2);
        }
        if (c.q1 && (c.q2 || c.v_unsatisfiable))
            res.found[t] = std::move(c);
        else {
            res.not_found.push_back(t);
            if (q1_globally_obstructed(b, t))
                res.obstructed.push_back(t);
        }
    }
    return res;
}

inline nf::Json to_json(const RoleEvidence& e)
{
    return nf::Json{{"q", std::to_string(e.screen.q)},
                    {"roots", {std::to_string(e.screen.roots[0]), std::to_string(e.screen.roots[1]), std::to_string(e.screen.roots[2])}},
                    {"sigma", {e.screen.sigma[0], e.screen.sigma[1], e.screen.sigma[2]}},
                    {"d_check", std::to_string(e.screen.d_check)},
                    {"three_check", std::to_string(e.screen.three_check)},
                    {"assignment", e.assignment},
                    {"value", std::to_string(e.value)},
                    {"value_power", std::to_string(e.value_power)}};
}

inline RoleEvidence role_from_json(const nf::Json& j)
{
    RoleEvidence e;
    auto u = [](const nf::Json& x) { return std::stoull(x.get<std::string>()); };
    e.screen.q = u(j.at("q"));
    for (std::size_t k = 0; k < 3; ++k) {
        e.screen.roots[k] = u(j.at("roots")[k]);
        e.screen.sigma[k] = j.at("sigma")[k].get<u64>();
    }
    e.screen.d_check = u(j.at("d_check"));
    e.screen.three_check = u(j.at("three_check"));
    e.assignment = j.at("assignment").get<std::size_t>();
    e.value = u(j.at("value"));
    e.value_power = u(j.at("value_power"));
    return e;
}

inline nf::Json to_json(const PrimePairCertificate& c)
{
    nf::Json j{{"l", c.triple.l}, {"i", c.triple.i}, {"j", c.triple.j}, {"scan_bound", std::to_string(c.scan_bound)},
               {"v_unsatisfiable", c.v_unsatisfiable}};
    j["q1"] = c.q1 ? to_json(*c.q1) : nf::Json(nullptr);
    j["q2"] = c.q2 ? to_json(*c.q2) : nf::Json(nullptr);
    return j;
}

inline PrimePairCertificate certificate_from_json(const nf::Json& j)
{
    PrimePairCertificate c;
    c.triple = {j.at("l").get<unsigned long>(), j.at("i").get<unsigned long>(), j.at("j").get<unsigned long>()};
    c.scan_bound = std::stoull(j.at("scan_bound").get<std::string>());
    c.v_unsatisfiable = j.at("v_unsatisfiable").get<bool>();
    if (!j.at("q1").is_null())
        c.q1 = role_from_json(j["q1"]);
    if (!j.at("q2").is_null())
        c.q2 = role_from_json(j["q2"]);
    return c;
}

} // namespace uchida::search

#endif
