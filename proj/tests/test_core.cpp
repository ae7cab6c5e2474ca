#include <gtest/gtest.h>

#include <random>

#include "uchida/core/identities.hpp"
#include "uchida/core/ramification.hpp"
#include "uchida/core/witness.hpp"

using namespace uchida;
using namespace uchida::arith;
using namespace uchida::core;

namespace {

const UchidaInstance& inst7()
{
    static const UchidaInstance I = build_instance(Integer(-7), 3, 1, Integer(1));
    return I;
}

const UchidaInstance& inst3()
{
    static const UchidaInstance I = build_instance(Integer(-3), 3, 1, Integer(1));
    return I;
}

std::set<Integer> totally_ramified(const RamificationReport& rep)
{
    std::set<Integer> out;
    for (auto& r : rep.rows)
        if (r.totally_ramified)
            out.insert(r.p);
    return out;
}

const PrimeRow& row(const RamificationReport& rep, long p)
{
    for (auto& r : rep.rows)
        if (r.p == p)
            return r;
    throw std::runtime_error("no row");
}

} // namespace

TEST(Instance, RejectsBadParameters)
{
    auto code = [](long d, unsigned long n, unsigned long s, long a) {
        try {
            build_instance(Integer(d), n, s, Integer(a));
        } catch (const Error& e) {
            return e.tag();
        }
        return std::string("ok");
    };
    EXPECT_EQ(code(7, 3, 1, 1), "d-positive");
    EXPECT_EQ(code(-5, 3, 1, 1), "d-not-1-mod-4");
    EXPECT_EQ(code(-7, 2, 1, 1), "n-even");
    EXPECT_EQ(code(-7, 3, 0, 1), "s-nonpositive");
    EXPECT_EQ(code(-7, 3, 1, 2), "a-even");
    EXPECT_EQ(code(-63, 3, 1, 1), "d-not-squarefree");
    EXPECT_EQ(code(-7, 3, 1, 1), "ok");
}

TEST(Instance, FixtureInvariants)
{
    const auto& I = inst7();
    EXPECT_EQ(I.m(), -62505);
    EXPECT_EQ(I.K().disc(), Integer("-37514575"));
    EXPECT_EQ(I.K().index(), 5103);
    EXPECT_TRUE(I.K().maximal());

    const auto& J = inst3();
    EXPECT_EQ(J.m(), -4914);
    EXPECT_EQ(J.K().disc(), -99372);
    EXPECT_EQ(J.K().index(), 2187);
}

TEST(Instance, RandomIdentitySuite)
{
    std::mt19937_64 rng(0x1d);
    for (int it = 0; it < 200; ++it) {
        auto p = random_params(rng);
        auto I = quick_instance(p);
        auto r = check_identities(I);
        EXPECT_TRUE(r.disc_u && r.four_m && r.shifted && r.minpoly && r.trace_pair)
            << "d=" << p.d << " n=" << p.n << " s=" << p.s << " a=" << p.a;
        if (it % 10 == 0) {
            EXPECT_TRUE(check_identities(p).all());
        }
    }
}

TEST(Instance, ShiftedPolynomialForArbitraryM)
{
    // u(x - 1) = x^3 + (m - 3) x^2 + 3x - 1 for any integer m
    std::mt19937_64 rng(0x2e);
    std::uniform_int_distribution<long> dist(-1000000, 1000000);
    for (int it = 0; it < 100; ++it) {
        Integer m = dist(rng);
        IntPoly u = uchida_poly(m);
        IntPoly xm1({Integer(-1), Integer(1)});
        IntPoly lhs = u.compose(xm1);
        EXPECT_EQ(lhs, IntPoly({Integer(-1), Integer(3), m - 3, Integer(1)}));
    }
}

TEST(Alpha, IntegralityAndTraceParity)
{
    std::mt19937_64 rng(0x3f);
    for (int it = 0; it < 50; ++it) {
        auto p = random_params(rng);
        auto r = check_alpha_parity(quick_instance(p));
        EXPECT_TRUE(r.all()) << "d=" << p.d << " n=" << p.n << " s=" << p.s << " a=" << p.a;
    }
}

TEST(Alpha, FixtureTrace)
{
    auto ad = alpha_data(inst7());
    EXPECT_EQ(ad.trace_identity, (nf::QuadNumber{ad.trace_identity_expected, 0}));
    EXPECT_EQ(ad.norm_F_sign, -1);
    EXPECT_TRUE(ad.trace_in_3OF);
    EXPECT_FALSE(ad.trace_pair_in_3OF);
}

TEST(Ramification, FixtureD7)
{
    auto rep = ramification_report(inst7());
    EXPECT_TRUE(rep.cross_checked);
    auto tr = totally_ramified(rep);
    EXPECT_TRUE(tr.count(5) && tr.count(463));
    EXPECT_EQ(row(rep, 7).shape, "1 1^2");
    EXPECT_EQ(row(rep, 7).cls, PrimeClass::p1sq_p2);
    EXPECT_EQ(row(rep, 3).cls, PrimeClass::special3);
    ASSERT_TRUE(rep.cube_free);
    EXPECT_EQ(rep.cube_free->first, -2315);
    EXPECT_EQ(rep.cube_free->second, 3);
}

TEST(Ramification, FixtureD3)
{
    auto rep = ramification_report(inst3());
    auto tr = totally_ramified(rep);
    EXPECT_TRUE(tr.count(2) && tr.count(7) && tr.count(13));
    EXPECT_EQ(rep.totally_ramified_count, 3u);
}

TEST(Ramification, ClassifyAgreesWithFactorization)
{
    std::vector<const UchidaInstance*> insts{&inst7(), &inst3()};
    std::vector<UchidaInstance> extra;
    std::mt19937_64 rng(0x40);
    while (extra.size() < 5) {
        auto p = random_params(rng, 60);
        p.n = std::min<unsigned long>(p.n, 3);
        p.s = 1;
        p.a = p.a % 10 + (p.a % 10 % 2 == 0);
        auto I = build_instance(p.d, p.n, p.s, p.a);
        if (I.K().maximal())
            extra.push_back(std::move(I));
    }
    for (auto& I : extra)
        insts.push_back(&I);
    for (auto* I : insts)
        for (Integer p = 2; p < 1000; p = next_prime(p)) {
            auto ps = I->K().factor_prime(p);
            EXPECT_TRUE(class_matches(classify_prime(p, *I), ps)) << "m=" << I->m() << " p=" << p;
        }
}

TEST(Witness, ValuationsDivisibleByN)
{
    for (auto* I : {&inst7(), &inst3()}) {
        auto ad = alpha_data(*I);
        auto w = decompose_alpha(*I, ad);
        EXPECT_FALSE(w.rows.empty());
        for (auto& r : w.rows)
            EXPECT_EQ(r.v_alpha % static_cast<long>(I->n()), 0) << "p=" << r.p;
        auto bd = beta_ideal(*I, ad);
        for (auto& r : bd.rows)
            EXPECT_EQ(r.v_beta % static_cast<long>(I->n()), 0);
        EXPECT_EQ(bd.unit_form, "-pi^sigma/pi^sigma^2");
        // norm(B)^n = |N(beta)|
        EXPECT_EQ(ipow(bd.B.norm(), I->n()), abs(I->K().order().norm(bd.beta_order)));
    }
}

TEST(Witness, BetaIdealFixture)
{
    // cross-checked once with PARI: norm 7, non-principal, B^3 = beta O_K
    auto bd = beta_ideal(inst7(), alpha_data(inst7()));
    IntMatrix H(3, 3);
    long rows[3][3] = {{7, 5, 2}, {0, 1, 0}, {0, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            H(i, j) = rows[i][j];
    EXPECT_EQ(bd.B.hnf, H);
    EXPECT_EQ(bd.beta, (Elem{Rational(1, 3), Rational(-62507, 9), Rational(1, 9)}));
    const auto& O = inst7().K().order();
    EXPECT_EQ(nf::ideal_pow(O, bd.B, 3), nf::principal_ideal(O, bd.beta_order));
}
