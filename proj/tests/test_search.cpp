#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "uchida/core/ramification.hpp"
#include "uchida/search/congruence.hpp"
#include "uchida/search/probe.hpp"

using namespace uchida;
using namespace uchida::arith;
using namespace uchida::search;

namespace {

const Integer D(-7);

const UchidaBase& base(int orientation)
{
    static const UchidaBase b1 = build_base(Integer(1), 5, 1, 1);
    static const UchidaBase b2 = build_base(Integer(1), 5, 1, 2);
    return orientation == 1 ? b1 : b2;
}

const SearchResult& result(int orientation)
{
    static const SearchResult r1 = search_pairs(base(1), D, SearchOptions{1'000'000, 4, 1 << 16, {}});
    static const SearchResult r2 = search_pairs(base(2), D, SearchOptions{1'000'000, 4, 1 << 16, {}});
    return orientation == 1 ? r1 : r2;
}

struct Pair {
    std::string key;
    u64 q1, q2;
};

// Brute-forced independently with PARI (tests/oracles/search_pairs.py).
std::vector<Pair> expected(int orientation)
{
    std::vector<Pair> out;
    for (unsigned long i = 0; i < 5; ++i)
        for (unsigned long j = 0; j < 5; ++j) {
            std::string k = "5:" + std::to_string(i) + ":" + std::to_string(j);
            if ((orientation == 1 && k == "5:1:0") || (orientation == 2 && k == "5:4:2"))
                continue;
            out.push_back({k, 491, i == 0 && j == 0 ? 0u : 2521u});
        }
    if (orientation == 1) {
        out.push_back({"2:0:0", 491, 0});
        out.push_back({"2:0:1", 491, 2591});
        out.push_back({"2:1:0", 491, 2591});
        out.push_back({"2:1:1", 491, 2591});
    } else {
        out.push_back({"2:0:0", 2591, 0});
        out.push_back({"2:1:0", 2591, 3851});
        out.push_back({"2:1:1", 2591, 3851});
    }
    return out;
}

bool brute_residue(u64 x, u64 r, u64 q)
{
    for (u64 y = 1; y < q; ++y)
        if (powmod64(y, r, q) == x % q)
            return true;
    return false;
}

std::vector<PrimePairCertificate> certificates(const SearchResult& r)
{
    std::vector<PrimePairCertificate> cs;
    for (auto& [t, c] : r.found)
        cs.push_back(c);
    return cs;
}

} // namespace

TEST(Base, Fixtures)
{
    const auto& b = base(1);
    EXPECT_EQ(b.m, 7);
    EXPECT_EQ(b.disc, 49);
    EXPECT_EQ(b.exponent, 10u);
    EXPECT_EQ(b.ells, (std::vector<unsigned long>{2, 5}));
    EXPECT_EQ(build_base(Integer(5), 5, 1).m, 2441413);
}

TEST(Base, RejectsBadParameters)
{
    auto tag = [](long a, unsigned long n, unsigned long s, int o) {
        try {
            build_base(Integer(a), n, s, o);
        } catch (const Error& e) {
            return e.tag();
        }
        return std::string("ok");
    };
    EXPECT_EQ(tag(2, 5, 1, 1), "a-tilde");
    EXPECT_EQ(tag(1, 3, 1, 1), "n-gcd6");
    EXPECT_EQ(tag(1, 5, 0, 1), "s-range");
    EXPECT_EQ(tag(1, 5, 1, 3), "orientation");
    EXPECT_EQ(tag(1, 7, 2, 2), "ok");
}

TEST(Splitting, ZeroOrThreeRoots)
{
    const auto& b = base(1);
    for (u64 q = 5; q < 100000; ++q) {
        if (!is_prime(from_u64(q)) || divides(from_u64(q), 6 * b.disc))
            continue;
        auto all = roots_mod_p(b.u, from_u64(q)).roots.size();
        auto s = splits_completely(q, b);
        EXPECT_EQ(s.has_value(), all == 3) << q;
        EXPECT_TRUE(all == 0 || all == 1 || all == 3) << q;
    }
    auto first = splits_completely(13, b);
    ASSERT_TRUE(first);
    EXPECT_EQ(*first, (std::array<u64, 3>{5, 6, 8}));
    EXPECT_THROW(splits_completely(7, b), Error);
}

TEST(Residue, PowerTestMatchesBruteForce)
{
    for (u64 q = 3; q < 500; ++q) {
        if (!is_prime(from_u64(q)))
            continue;
        for (u64 l : {2u, 3u, 5u}) {
            if ((q - 1) % l != 0)
                continue;
            for (u64 x = 1; x < q; ++x)
                EXPECT_EQ(powmod64(x, (q - 1) / l, q) == 1, brute_residue(x, l, q)) << q << " " << l << " " << x;
        }
    }
}

TEST(Conditions, RejectionReasons)
{
    const auto& b = base(1);
    TripleIndex t{5, 1, 1};
    EXPECT_EQ(check_conditions(15, b, D, t, Role::q1).reason, "not-prime");
    EXPECT_EQ(check_conditions(7, b, D, t, Role::q1).reason, "divides-6-disc");
    EXPECT_EQ(check_conditions(2, b, D, t, Role::q1).reason, "divides-6-disc");
    EXPECT_EQ(check_conditions(11, b, D, t, Role::q1).reason, "screen");
    EXPECT_EQ(check_conditions(2521, b, D, {5, 0, 0}, Role::q2).reason, "v-unsatisfiable-at-00");
    EXPECT_TRUE(check_conditions(491, b, D, t, Role::q1).evidence);
    EXPECT_TRUE(check_conditions(2521, b, D, t, Role::q2).evidence);
}

TEST(Search, MatchesIndependentFixture)
{
    for (int o : {1, 2}) {
        const auto& r = result(o);
        auto exp = expected(o);
        EXPECT_EQ(r.found.size(), exp.size()) << "orientation " << o;
        for (auto& e : exp) {
            auto it = std::find_if(r.found.begin(), r.found.end(), [&](auto& kv) { return kv.first.key() == e.key; });
            ASSERT_NE(it, r.found.end()) << e.key;
            const auto& c = it->second;
            ASSERT_TRUE(c.q1);
            EXPECT_EQ(c.q1->screen.q, e.q1) << e.key;
            EXPECT_EQ(c.q2 ? c.q2->screen.q : 0, e.q2) << e.key;
            EXPECT_EQ(c.v_unsatisfiable, e.q2 == 0);
        }
    }
}

TEST(Search, ObstructedTriplesAreGlobalPowers)
{
    auto keys = [](const std::vector<TripleIndex>& ts) {
        std::vector<std::string> k;
        for (auto& t : ts)
            k.push_back(t.key());
        return k;
    };
    EXPECT_EQ(keys(result(1).obstructed), std::vector<std::string>{"5:1:0"});
    EXPECT_EQ(keys(result(2).obstructed), (std::vector<std::string>{"2:0:1", "5:4:2"}));
    EXPECT_EQ(keys(result(1).not_found), keys(result(1).obstructed));
    EXPECT_TRUE(q1_globally_obstructed(base(1), {5, 1, 0}));
    EXPECT_FALSE(q1_globally_obstructed(base(1), {5, 1, 1}));
}

TEST(Search, CertificatesReverifyAndRoundTrip)
{
    for (int o : {1, 2})
        for (auto& [t, c] : result(o).found) {
            EXPECT_TRUE(verify_certificate(c, base(o), D)) << t.key();
            if (c.q1 && c.q2) {
                EXPECT_NE(c.q1->screen.q, c.q2->screen.q);
                EXPECT_EQ(c.q2->screen.q % 10, 1u);
            }
            EXPECT_EQ(c.q1->screen.q % 10, 1u);
            auto back = certificate_from_json(nf::Json::parse(to_json(c).dump()));
            EXPECT_EQ(to_json(back).dump(), to_json(c).dump());
            EXPECT_TRUE(verify_certificate(back, base(o), D));
        }
}

TEST(Search, TamperedCertificateFails)
{
    auto c = result(1).found.begin()->second;
    ASSERT_TRUE(c.q1);
    c.q1->value_power = 1;
    EXPECT_FALSE(verify_certificate(c, base(1), D));
}

TEST(Search, WorkerCountAndResumeDoNotChangeOutput)
{
    auto dump = [](const SearchResult& r) {
        nf::Json j = nf::Json::array();
        for (auto& [t, c] : r.found)
            j.push_back(to_json(c));
        return j.dump();
    };
    auto one = search_pairs(base(1), D, SearchOptions{200'000, 1, 4096, {}});
    auto four = search_pairs(base(1), D, SearchOptions{200'000, 4, 4096, {}});
    EXPECT_EQ(dump(one), dump(four));

    auto path = (std::filesystem::temp_directory_path() / "uchida_resume_test.json").string();
    std::remove(path.c_str());
    auto first = search_pairs(base(1), D, SearchOptions{200'000, 2, 4096, path});
    auto again = search_pairs(base(1), D, SearchOptions{200'000, 2, 4096, path});
    EXPECT_EQ(dump(first), dump(one));
    EXPECT_EQ(dump(again), dump(one));
    EXPECT_THROW(search_pairs(base(1), Integer(-3), SearchOptions{200'000, 2, 4096, path}), Error);
    std::remove(path.c_str());
}

TEST(Congruence, SolutionReducesToBase)
{
    const auto& b = base(1);
    auto sol = solve_congruences(certificates(result(1)), b, D);
    EXPECT_EQ(sol.a, Integer("6116051685"));
    EXPECT_EQ(sol.modulus, Integer("6414336602"));
    auto I = core::build_instance(D, 5, 1, sol.a, FactorBudget{1000, 1000});
    for (auto& w : sol.witnesses) {
        EXPECT_TRUE(congruence_holds(sol.a, w.q, b, D));
        EXPECT_EQ(powmod(w.z1, Integer(10), w.q), 3);
        EXPECT_EQ(powmod(w.z2, Integer(2), w.q), mod(D, w.q));
        for (std::size_t k = 0; k < 4; ++k)
            EXPECT_EQ(mod(I.u().coeffs()[k], w.q), mod(b.u.coeffs()[k], w.q)) << "q=" << w.q << " k=" << k;
    }
}

TEST(Congruence, AugmentRamification)
{
    const auto& b = base(1);
    auto sol = solve_congruences(certificates(result(1)), b, D);
    EXPECT_EQ(augment_ramification(sol, D, 5, 1, 0).a, sol.a);
    auto aug = augment_ramification(sol, D, 5, 1, 2);
    ASSERT_EQ(aug.ramified.size(), 2u);
    Integer M = sol.modulus;
    for (auto& p : aug.ramified)
        M *= p * p;
    EXPECT_EQ(aug.modulus, M);
    for (auto& w : sol.witnesses)
        EXPECT_TRUE(congruence_holds(aug.a, w.q, b, D));
    auto I = core::build_instance(D, 5, 1, aug.a, FactorBudget{100000, 100000});
    for (auto& p : aug.ramified) {
        EXPECT_TRUE(divides(p, I.m()));
        EXPECT_FALSE(divides(p * p, I.m()));
        EXPECT_EQ(core::classify_prime(p, I), core::PrimeClass::totally_ramified);
        if (I.K().maximal_at(p)) {
            auto ps = I.K().factor_prime(p);
            ASSERT_EQ(ps.size(), 1u);
            EXPECT_EQ(ps[0].e, 3u);
        }
    }
}

TEST(Probe, UnitAlphaViolatesHypothesis)
{
    auto rep = hypothesis_probe(base(1));
    EXPECT_EQ(rep.norm_alpha, -1);
    EXPECT_TRUE(rep.valuations.empty());
    for (auto& [l, s] : rep.not_lth_power)
        EXPECT_EQ(s, ProbeStatus::violated) << l;
    EXPECT_EQ(rep.units_independent, ProbeStatus::verified);
    EXPECT_NEAR(static_cast<double>(rep.pair_regulator.mid_ld()), 1.5764, 1e-3);
}
