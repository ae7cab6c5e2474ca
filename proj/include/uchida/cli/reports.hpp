#ifndef UCHIDA_CLI_REPORTS_HPP
#define UCHIDA_CLI_REPORTS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "uchida/core/ramification.hpp"
#include "uchida/core/witness.hpp"
#include "uchida/nf/serialize.hpp"
#include "uchida/oracle/class_group.hpp"
#include "uchida/oracle/class_order.hpp"
#include "uchida/search/congruence.hpp"
#include "uchida/search/probe.hpp"

namespace uchida::cli {

using namespace uchida::arith;
using nf::Json;
using nf::to_json;

constexpr int format_version = 1;

/// Everything a run depends on.  Output paths and the worker count are
/// kept out of the hash: they never change the mathematical content.
struct RunConfig {
    std::string command;
    std::optional<Integer> d, a, a_tilde;
    unsigned long n = 0, s = 1;
    int orientation = 1;
    std::uint64_t q_bound = 1'000'000;
    unsigned long effort = 5000;
    unsigned long ramify = 0;
    bool class_group = false;
    unsigned workers = 1;
    std::string certs, out, resume;
    std::vector<std::string> inputs;

    Json hashed() const
    {
        Json j{{"command", command}, {"n", n}, {"s", s}};
        auto opt = [&](const char* k, const std::optional<Integer>& v) { j[k] = v ? Json(v->get_str()) : Json(nullptr); };
        opt("d", d);
        opt("a", a);
        opt("a_tilde", a_tilde);
        if (command == "search") {
            j["orientation"] = orientation;
            j["q_bound"] = std::to_string(q_bound);
        }
        if (command == "verify") {
            j["effort"] = effort;
            j["class_group"] = class_group;
        }
        if (command == "solve")
            j["ramify"] = ramify;
        return j;
    }

    Json to_json() const
    {
        Json j = hashed();
        j["workers"] = workers;
        j["certs"] = certs;
        j["out"] = out;
        j["resume"] = resume;
        j["inputs"] = inputs;
        j["orientation"] = orientation;
        j["q_bound"] = std::to_string(q_bound);
        j["effort"] = effort;
        j["class_group"] = class_group;
        j["ramify"] = ramify;
        return j;
    }

    static RunConfig from_json(const Json& j)
    {
        RunConfig c;
        c.command = j.at("command").get<std::string>();
        c.n = j.at("n").get<unsigned long>();
        c.s = j.at("s").get<unsigned long>();
        auto opt = [&](const char* k) -> std::optional<Integer> {
            if (!j.contains(k) || j[k].is_null())
                return std::nullopt;
            return Integer(j[k].get<std::string>());
        };
        c.d = opt("d");
        c.a = opt("a");
        c.a_tilde = opt("a_tilde");
        c.orientation = j.value("orientation", 1);
        c.q_bound = std::stoull(j.value("q_bound", std::string("1000000")));
        c.effort = j.value("effort", 5000UL);
        c.class_group = j.value("class_group", false);
        c.ramify = j.value("ramify", 0UL);
        c.workers = j.value("workers", 1U);
        c.certs = j.value("certs", std::string());
        c.out = j.value("out", std::string());
        c.resume = j.value("resume", std::string());
        c.inputs = j.value("inputs", std::vector<std::string>{});
        return c;
    }

    /// FNV-1a over the canonical dump of the hashed fields.
    std::string hash() const
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char ch : hashed().dump()) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }
};

inline Json header(const char* kind, const RunConfig& cfg)
{
    return Json{{"kind", kind}, {"format_version", format_version}, {"config", cfg.hashed()}, {"config_hash", cfg.hash()}};
}

inline Json factorization_json(const PrimeFactorization& f)
{
    Json fs = Json::array();
    for (auto& [p, e] : f.factors)
        fs.push_back({p.get_str(), e});
    Json un = Json::array();
    for (auto& c : f.unfactored)
        un.push_back(c.get_str());
    return Json{{"sign", f.sign}, {"factors", fs}, {"unfactored", un}};
}

inline Json params_json(const core::UchidaInstance& I)
{
    return Json{{"d", I.d().get_str()}, {"n", I.n()}, {"s", I.s()}, {"a", I.a().get_str()}};
}

inline Json ramification_json(const core::RamificationReport& rep)
{
    Json rows = Json::array();
    for (auto& r : rep.rows)
        rows.push_back({{"p", r.p.get_str()},
                        {"v_m", r.v_m},
                        {"v_disc_quad", r.v_disc_quad},
                        {"class", core::class_name(r.cls)},
                        {"shape", r.shape},
                        {"totally_ramified", r.totally_ramified}});
    Json cf = rep.cube_free ? Json{rep.cube_free->first.get_str(), rep.cube_free->second.get_str()} : Json(nullptr);
    return Json{{"complete", rep.complete},
                {"cube_free", cf},
                {"totally_ramified_count", rep.totally_ramified_count},
                {"t", rep.t},
                {"cross_checked", rep.cross_checked},
                {"rows", rows}};
}

inline Json alpha_json(const core::AlphaData& ad)
{
    Json h = Json::array();
    for (auto& c : ad.h)
        h.push_back(to_json(c));
    return Json{{"form", "(pi-pi^sigma)/(3pi)"},
                {"h", h},
                {"norm_F_sign", ad.norm_F_sign},
                {"norm_Q", ad.norm_Q.get_str()},
                {"trace", to_json(ad.trace)},
                {"trace_pair", to_json(ad.trace_pair)},
                {"trace_in_3OF", ad.trace_in_3OF},
                {"trace_pair_in_3OF", ad.trace_pair_in_3OF},
                {"trace_identity_holds", ad.trace_identity == nf::QuadNumber{ad.trace_identity_expected, 0}}};
}

inline Json witness_json(const core::NthPowerWitness& w)
{
    Json rows = Json::array();
    for (auto& r : w.rows)
        rows.push_back({{"p", r.p.get_str()},
                        {"f_prime", r.f_prime},
                        {"e", r.e},
                        {"f", r.f},
                        {"e_rel", r.e_rel},
                        {"f_rel", r.f_rel},
                        {"v_alpha", r.v_alpha},
                        {"v_diff", r.v_diff}});
    Json split = Json::array();
    for (auto& p : w.split_checked)
        split.push_back(p.get_str());
    return Json{{"rows", rows}, {"three_divides_d", w.three_divides_d}, {"split_checked", split}};
}

inline Json beta_json(const core::BetaData& bd)
{
    Json rows = Json::array();
    for (auto& r : bd.rows)
        rows.push_back({{"p", r.prime.p.get_str()}, {"e", r.prime.e}, {"f", r.prime.f}, {"v_beta", r.v_beta}, {"exponent", r.exponent}});
    return Json{{"beta", to_json(bd.beta)}, {"B", to_json(bd.B)}, {"unit_form", bd.unit_form}, {"rows", rows}};
}

/// construct: instance, ramification table, alpha data and the n-th power
/// witness.  Pieces that need the maximal order are replaced by an error
/// record when m could not be factored.
inline Json instance_report(const RunConfig& cfg, const core::UchidaInstance& I)
{
    Json j = header("instance", cfg);
    j["params"] = params_json(I);
    j["m"] = I.m().get_str();
    j["disc_quad"] = I.disc_quad().get_str();
    j["S"] = I.S().get_str();
    j["u"] = to_json(I.u());
    j["m_factorization"] = factorization_json(I.m_factors());
    j["branch"] = divides(Integer(3), I.d()) ? "3|d" : "3!|d";
    j["field"] = Json{{"poly_disc", I.K().poly_disc().get_str()},
                      {"disc", I.K().disc().get_str()},
                      {"index", I.K().index().get_str()},
                      {"maximal", I.K().maximal()}};
    auto ad = core::alpha_data(I);
    j["alpha"] = alpha_json(ad);
    j["ramification"] = nullptr;
    j["witness"] = nullptr;
    j["beta"] = nullptr;
    j["genus"] = nullptr;
    Json skipped = Json::array();
    try {
        auto rep = core::ramification_report(I);
        j["ramification"] = ramification_json(rep);
        auto g = oracle::genus_factor_report(rep, I.n());
        j["genus"] = Json{{"count", g.count}, {"t", g.t}, {"divisor", g.divisor.get_str()}, {"status", "black-box"}};
    } catch (const Error& e) {
        if (e.code() != Errc::budget_exhausted)
            throw;
        skipped.push_back(e.tag());
    }
    try {
        j["witness"] = witness_json(core::decompose_alpha(I, ad));
        j["beta"] = beta_json(core::beta_ideal(I, ad));
    } catch (const Error& e) {
        if (e.code() != Errc::budget_exhausted)
            throw;
        skipped.push_back(e.tag());
    }
    j["skipped"] = skipped;
    return j;
}

inline Json principality_json(const nf::PrincipalityResult& r)
{
    Json j{{"verdict", nf::principality_name(r.verdict)}, {"t2_bound", to_json(r.t2_bound)}, {"candidates", std::to_string(r.candidates)}};
    j["generator"] = r.verdict == nf::Principality::principal ? to_json(r.generator) : Json(nullptr);
    return j;
}

inline Json certificate_json(const oracle::DivisibilityCertificate& c)
{
    Json tests = Json::array();
    for (auto& t : c.tests)
        tests.push_back({{"l", t.l}, {"ideal", to_json(t.ideal)}, {"result", principality_json(t.result)}});
    Json j{{"n", c.n},
           {"statement", std::to_string(c.n) + " | h(K)"},
           {"verdict", oracle::verdict_name(c.verdict)},
           {"method", c.method},
           {"B", to_json(c.B)},
           {"generator_of_Bn", to_json(c.generator_of_Bn)},
           {"generator_checked", c.generator_checked},
           {"tests", tests},
           {"kf_statement", c.kf_statement}};
    if (!c.unit.unit.empty())
        j["unit"] = Json{{"coords", to_json(c.unit.unit)}, {"regulator", to_json(c.unit.regulator)}, {"method", c.unit.method}};
    else
        j["unit"] = nullptr;
    return j;
}

inline Json class_group_json(const oracle::ClassGroup& cg)
{
    return Json{{"cyclic", to_json(cg.cyclic)},
                {"h", cg.h.get_str()},
                {"minkowski", cg.minkowski.get_str()},
                {"factor_base", cg.factor_base},
                {"relations", cg.relations},
                {"saturation_tests", cg.saturation_tests}};
}

struct VerifyOutcome {
    Json report;
    oracle::Verdict verdict = oracle::Verdict::supported;
};

/// verify: the class-element certificate for B, plus the independent
/// class group when asked and affordable.
inline VerifyOutcome verify_report(const RunConfig& cfg, const core::UchidaInstance& I)
{
    VerifyOutcome out;
    Json j = header("verify", cfg);
    j["params"] = params_json(I);
    j["m"] = I.m().get_str();
    j["field"] = Json{{"disc", I.K().disc().get_str()}, {"maximal", I.K().maximal()}};
    auto ad = core::alpha_data(I);
    auto bd = core::beta_ideal(I, ad);
    auto cert = oracle::class_element_order(I, bd);
    out.verdict = cert.verdict;
    j["certificate"] = certificate_json(cert);
    j["class_group"] = nullptr;
    if (cfg.class_group) {
        auto cg = oracle::class_group_small(I.K(), cfg.effort);
        Json c = class_group_json(cg);
        c["divisible_by_n"] = divides(Integer(I.n()), cg.h);
        j["class_group"] = c;
    }
    out.report = j;
    return out;
}

inline Json base_json(const search::UchidaBase& b)
{
    return Json{{"a_tilde", b.a_tilde.get_str()},
                {"n", b.n},
                {"s", b.s},
                {"m", b.m.get_str()},
                {"u", to_json(b.u)},
                {"disc", b.disc.get_str()},
                {"orientation", b.orientation},
                {"sigma_poly", to_json(b.sigma_poly)}};
}

inline Json probe_json(const search::ProbeReport& p)
{
    Json vals = Json::array();
    for (auto& v : p.valuations)
        vals.push_back({{"p", v.p.get_str()}, {"prime", v.prime}, {"e", v.e}, {"f", v.f}, {"v", v.v}});
    Json lth = Json::array();
    for (auto& [l, st] : p.not_lth_power)
        lth.push_back({{"l", l}, {"status", search::probe_status_name(st)}});
    return Json{{"norm_alpha", p.norm_alpha.get_str()},
                {"valuations", vals},
                {"not_lth_power", lth},
                {"pair_regulator", to_json(p.pair_regulator)},
                {"units_independent", search::probe_status_name(p.units_independent)},
                {"unit_index_coprime", search::probe_status_name(p.unit_index_coprime)},
                {"notes", p.notes}};
}

inline Json search_report(const RunConfig& cfg, const search::UchidaBase& b, const Integer& d, const search::SearchResult& r)
{
    Json j = header("search", cfg);
    j["base"] = base_json(b);
    j["d"] = d.get_str();
    j["q_bound"] = std::to_string(cfg.q_bound);
    j["scanned_to"] = std::to_string(r.scanned_to);
    Json certs = Json::array();
    for (auto& [t, c] : r.found) {
        Json cj = to_json(c);
        cj["key"] = t.key();
        certs.push_back(cj);
    }
    j["certificates"] = certs;
    Json nf_ = Json::array(), ob = Json::array();
    for (auto& t : r.not_found)
        nf_.push_back(t.key());
    for (auto& t : r.obstructed)
        ob.push_back(t.key());
    j["not_found"] = nf_;
    j["obstructed"] = ob;
    j["complete"] = r.not_found.empty();
    j["probe"] = probe_json(search::hypothesis_probe(b));
    return j;
}

/// Base rebuilt from a search file, so that solve re-verifies against the
/// same sigma the search used.
inline search::UchidaBase base_from_json(const Json& j)
{
    const Json& b = j.at("base");
    return search::build_base(Integer(b.at("a_tilde").get<std::string>()), b.at("n").get<unsigned long>(), b.at("s").get<unsigned long>(),
                              b.at("orientation").get<int>());
}

inline Json solve_report(const RunConfig& cfg, const search::UchidaBase& b, const Integer& d, const search::CongruenceSolution& sol)
{
    Json j = header("solve", cfg);
    j["base"] = base_json(b);
    j["d"] = d.get_str();
    j["a"] = sol.a.get_str();
    j["modulus"] = sol.modulus.get_str();
    // m = (3^6 d^n a^(2^s n) + 27)/4 modulo each certificate prime, compared with m~
    Json ws = Json::array();
    const Integer E(b.exponent);
    for (auto& w : sol.witnesses) {
        Json wj{{"q", w.q.get_str()}, {"exponent", w.exponent.get_str()}, {"x", w.x.get_str()}};
        if (w.exponent == 1) {
            wj["z1"] = w.z1.get_str();
            wj["z2"] = w.z2.get_str();
            wj["congruence_holds"] = search::congruence_holds(sol.a, w.q, b, d);
            Integer m_mod = mod((729 * powmod(mod(d, w.q), Integer(b.n), w.q) * powmod(mod(sol.a, w.q), E, w.q) + 27) *
                                    invmod(Integer(4), w.q).value(),
                                w.q);
            wj["u_reduces_to_base"] = m_mod == mod(b.m, w.q);
        }
        ws.push_back(wj);
    }
    j["witnesses"] = ws;
    Json ram = Json::array();
    for (auto& p : sol.ramified)
        ram.push_back(p.get_str());
    j["ramified"] = ram;
    return j;
}

} // namespace uchida::cli

#endif
