// Acceptance run: one PASS/FAIL line per criterion.  Time limits and
// fixtures are pinned below; every comparison is exact.
//
//   acceptance                  exit 0 iff every criterion passes
//   acceptance --expect-fail 6  exit 0 iff exactly the listed criteria fail

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>

#include "uchida/cli/reports.hpp"
#include "uchida/core/identities.hpp"

using namespace uchida;
using namespace uchida::arith;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
};

const Integer D7(-7);

Outcome identities()
{
    std::mt19937_64 rng(20240601);
    int bad = 0;
    for (int i = 0; i < 200; ++i)
        bad += !core::check_identities(core::random_params(rng)).all();
    return {bad == 0, std::to_string(200 - bad) + "/200 tuples exact"};
}

Outcome alpha_parity()
{
    std::mt19937_64 rng(20240602);
    int bad = 0;
    for (int i = 0; i < 50; ++i)
        bad += !core::check_alpha_parity(core::quick_instance(core::random_params(rng))).all();
    return {bad == 0, std::to_string(50 - bad) + "/50 instances"};
}

Outcome ramification()
{
    bool ok = true;
    std::string detail;
    for (long d : {-3L, -7L}) {
        auto I = core::build_instance(Integer(d), 3, 1, Integer(1));
        int mismatches = 0;
        for (Integer p = 2; p < 1000; p = next_prime(p))
            mismatches += !core::class_matches(core::classify_prime(p, I), I.K().factor_prime(p));
        std::set<Integer> tr;
        std::string shape7;
        for (auto& r : core::ramification_report(I).rows) {
            if (r.totally_ramified)
                tr.insert(r.p);
            if (r.p == 7)
                shape7 = r.shape;
        }
        bool fx = d == -3 ? (tr.count(2) && tr.count(7) && tr.count(13)) : (tr.count(5) && tr.count(463) && shape7 == "1 1^2");
        ok = ok && mismatches == 0 && fx;
        detail += "d=" + std::to_string(d) + ": " + std::to_string(mismatches) + " mismatches, fixture " + (fx ? "ok" : "differs") + "; ";
    }
    return {ok, detail};
}

Outcome witness()
{
    int hard = 0, bad = 0;
    for (long d : {-3L, -7L}) {
        try {
            auto I = core::build_instance(Integer(d), 3, 1, Integer(1));
            auto w = core::decompose_alpha(I, core::alpha_data(I));
            for (auto& r : w.rows)
                bad += r.v_alpha % 3 != 0;
        } catch (const Error& e) {
            if (e.code() != Errc::internal_assertion)
                throw;
            ++hard;
        }
    }
    return {hard == 0 && bad == 0, "hard errors " + std::to_string(hard) + ", valuations not divisible by n: " + std::to_string(bad)};
}

Outcome class_certificate()
{
    // Fixture cross-checked once with PARI: B has norm 7 and class of
    // order 3 in Cl(K) = Z/24 x Z/3; B^3 = beta O_K.
    auto I = core::build_instance(D7, 3, 1, Integer(1));
    auto bd = core::beta_ideal(I, core::alpha_data(I));
    auto cert = oracle::class_element_order(I, bd);
    IntMatrix H(3, 3);
    long rows[3][3] = {{7, 5, 2}, {0, 1, 0}, {0, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            H(i, j) = rows[i][j];
    bool fixture = bd.B.hnf == H && bd.beta == nf::Elem{Rational(1, 3), Rational(-62507, 9), Rational(1, 9)};
    bool nonprincipal = cert.tests.size() == 1 && cert.tests[0].result.verdict == nf::Principality::non_principal;
    bool ok = cert.verdict == oracle::Verdict::certified && cert.generator_checked && nonprincipal && fixture;
    return {ok, std::string("\"3 | h(K)\" ") + oracle::verdict_name(cert.verdict) + ", B^3 = (beta) " +
                    (cert.generator_checked ? "checked" : "unchecked") + ", fixture " + (fixture ? "matches" : "differs")};
}

std::vector<search::PrimePairCertificate> orientation1_certs;

Outcome prime_search()
{
    std::string detail;
    bool ok = true;
    for (int o : {1, 2}) {
        auto b = search::build_base(Integer(1), 5, 1, o);
        auto r = search::search_pairs(b, D7, search::SearchOptions{1'000'000, 4, 1 << 16, {}});
        int bad = 0;
        for (auto& [t, c] : r.found)
            bad += !search::verify_certificate(c, b, D7) || !c.q1 || (c.q2 && c.q1->screen.q == c.q2->screen.q);
        if (o == 1)
            for (auto& [t, c] : r.found)
                orientation1_certs.push_back(c);
        std::string missing;
        for (auto& t : r.not_found) {
            bool obs = std::find(r.obstructed.begin(), r.obstructed.end(), t) != r.obstructed.end();
            missing += " " + t.key() + (obs ? "(obstructed)" : "(not found)");
        }
        ok = ok && bad == 0 && r.not_found.empty();
        detail += "orientation " + std::to_string(o) + ": " + std::to_string(r.found.size()) + "/" +
                  std::to_string(search::all_triples(b).size()) + " found, " + std::to_string(bad) + " fail re-verification" +
                  (missing.empty() ? "" : ", missing" + missing) + "; ";
    }
    if (!ok)
        detail += "alpha~ is a unit (N = -1) for a~ = 1, so the hypothesis on (alpha~) fails and some alpha~_ij is a global l-th power";
    return {ok, detail};
}

Outcome congruences()
{
    auto b = search::build_base(Integer(1), 5, 1, 1);
    if (orientation1_certs.empty()) {
        auto r = search::search_pairs(b, D7, search::SearchOptions{1'000'000, 4, 1 << 16, {}});
        for (auto& [t, c] : r.found)
            orientation1_certs.push_back(c);
    }
    auto sol = search::solve_congruences(orientation1_certs, b, D7);
    auto I = core::build_instance(D7, 5, 1, sol.a, FactorBudget{1000, 1000});
    int bad = 0;
    for (auto& w : sol.witnesses) {
        bad += !search::congruence_holds(sol.a, w.q, b, D7);
        for (std::size_t k = 0; k < 4; ++k)
            bad += mod(I.u().coeffs()[k], w.q) != mod(b.u.coeffs()[k], w.q);
    }
    return {bad == 0, "a = " + sol.a.get_str() + " over " + std::to_string(sol.witnesses.size()) + " primes, " + std::to_string(bad) + " failures"};
}

Outcome class_groups()
{
    nf::CubicField K0(IntPoly({-1, -1, 0, 1}));
    auto g0 = oracle::class_group_small(K0);
    // regression values fixed after a one-time PARI bnfinit cross-check
    auto g1 = oracle::class_group_small(nf::CubicField(IntPoly({-1, 4, 0, 1})));
    auto g2 = oracle::class_group_small(nf::CubicField(IntPoly({-7, 0, 0, 1})));
    bool ok = g0.h == 1 && g0.minkowski < 2 && g1.cyclic == IntVec{Integer(2)} && g2.cyclic == IntVec{Integer(3)};
    return {ok, "x^3-x-1 h=" + g0.h.get_str() + " (M=" + g0.minkowski.get_str() + "), x^3+4x-1 h=" + g1.h.get_str() +
                    ", x^3-7 h=" + g2.h.get_str()};
}

Outcome determinism()
{
    cli::RunConfig sc;
    sc.command = "search";
    sc.a_tilde = Integer(1);
    sc.n = 5;
    sc.s = 1;
    sc.d = D7;
    sc.q_bound = 100'000;
    auto b = search::build_base(Integer(1), 5, 1, 1);
    auto run_search = [&](unsigned w) {
        return cli::search_report(sc, b, D7, search::search_pairs(b, D7, search::SearchOptions{sc.q_bound, w, 4096, {}})).dump(2);
    };
    cli::RunConfig vc;
    vc.command = "verify";
    vc.d = D7;
    vc.n = 3;
    vc.s = 1;
    vc.a = Integer(1);
    auto run_verify = [&]() { return cli::verify_report(vc, core::build_instance(D7, 3, 1, Integer(1))).report.dump(2); };
    bool s = run_search(4) == run_search(4);
    bool s1 = run_search(1) == run_search(4);
    bool v = run_verify() == run_verify();
    return {s && s1 && v, std::string("search ") + (s ? "identical" : "differs") + ", workers 1 vs 4 " + (s1 ? "identical" : "differs") +
                              ", verify " + (v ? "identical" : "differs")};
}

} // namespace

int main(int argc, char** argv)
{
    std::set<int> expect_fail;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc)
            expect_fail.insert(std::atoi(argv[++i]));

    const std::vector<Criterion> all{
        {1, "exact identity suite", 10, identities},
        {2, "h(x) integrality and trace parity", 30, alpha_parity},
        {3, "ramification oracle equivalence", 120, ramification},
        {4, "n-th power witness", 120, witness},
        {5, "class divisibility certificate", 900, class_certificate},
        {6, "prime-pair search", 600, prime_search},
        {7, "congruence solution", 60, congruences},
        {8, "class-group oracle sanity", 300, class_groups},
        {9, "determinism", 600, determinism},
    };
    bool as_expected = true;
    for (auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs <= c.limit_s;
        bool pass = o.pass && in_time;
        std::printf("criterion %d %s: %s (%.2f s, limit %.0f s) %s\n", c.id, c.name, pass ? "PASS" : "FAIL", secs, c.limit_s,
                    (in_time ? o.detail : o.detail + " [over time limit]").c_str());
        std::fflush(stdout);
        as_expected = as_expected && (pass != (expect_fail.count(c.id) > 0));
    }
    return as_expected ? 0 : 1;
}
