#include <gtest/gtest.h>

#include "uchida/core/ramification.hpp"
#include "uchida/oracle/class_group.hpp"
#include "uchida/oracle/class_order.hpp"

using namespace uchida;
using namespace uchida::arith;

namespace {

IntVec ivec(std::initializer_list<long> xs)
{
    IntVec v;
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

} // namespace

// Class groups frozen from PARI bnfinit.
TEST(ClassGroup, SmallCubics)
{
    struct Case {
        IntPoly f;
        long disc;
        IntVec cyc;
    };
    const std::vector<Case> cases{
        {IntPoly({-1, -1, 0, 1}), -23, {}},
        {IntPoly({-1, 4, 0, 1}), -283, ivec({2})},
        {IntPoly({-11, 0, 0, 1}), -3267, ivec({2})},
        {IntPoly({-2, 0, 0, 1}), -108, {}},
        {IntPoly({-7, 0, 0, 1}), -1323, ivec({3})},
        {IntPoly({-19, 0, 0, 1}), -1083, ivec({3})},
        {IntPoly({-3, 1, 0, 1}), -247, {}},
    };
    for (auto& c : cases) {
        nf::CubicField K(c.f);
        ASSERT_EQ(K.disc(), c.disc);
        auto cg = oracle::class_group_small(K);
        EXPECT_EQ(cg.cyclic, c.cyc) << "disc " << c.disc;
        Integer h = 1;
        for (auto& x : c.cyc)
            h *= x;
        EXPECT_EQ(cg.h, h);
    }
}

TEST(ClassGroup, TrivialMinkowskiBound)
{
    nf::CubicField K(IntPoly({-1, -1, 0, 1}));
    auto cg = oracle::class_group_small(K);
    EXPECT_LT(cg.minkowski, 2);
    EXPECT_EQ(cg.h, 1);
}

TEST(ClassGroup, InstanceD3)
{
    auto I = core::build_instance(Integer(-3), 3, 1, Integer(1));
    auto cg = oracle::class_group_small(I.K());
    EXPECT_EQ(cg.cyclic, ivec({3, 3}));
}

TEST(ClassGroup, RejectsTotallyRealAndLargeBounds)
{
    nf::CubicField real(IntPoly({1, -2, -1, 1})); // x^3 - x^2 - 2x + 1, disc 49
    EXPECT_THROW(oracle::class_group_small(real), Error);
    auto I = core::build_instance(Integer(-7), 3, 1, Integer(1));
    try {
        oracle::class_group_small(I.K(), 100);
        FAIL() << "expected minkowski-effort";
    } catch (const Error& e) {
        EXPECT_EQ(e.tag(), "minkowski-effort");
    }
}

TEST(ClassOrder, CertifiedForD7)
{
    auto I = core::build_instance(Integer(-7), 3, 1, Integer(1));
    auto ad = core::alpha_data(I);
    auto bd = core::beta_ideal(I, ad);
    auto cert = oracle::class_element_order(I, bd);
    EXPECT_EQ(cert.verdict, oracle::Verdict::certified);
    EXPECT_TRUE(cert.generator_checked);
    ASSERT_EQ(cert.tests.size(), 1u);
    EXPECT_EQ(cert.tests[0].l, 3u);
    EXPECT_EQ(cert.tests[0].result.verdict, nf::Principality::non_principal);
    EXPECT_EQ(cert.B.norm(), 7);

    auto ev = oracle::even_order_evidence(I, ad, cert.unit);
    EXPECT_EQ(ev.norm_to_K.norm(), 7);
    EXPECT_EQ(ev.norm_to_K_principal, nf::Principality::non_principal);

    auto g = oracle::genus_factor_report(core::ramification_report(I), I.n());
    EXPECT_EQ(g.count, 2u);
    EXPECT_EQ(g.divisor, 3);
}

TEST(ClassOrder, ConsistentWithClassGroup)
{
    // h = 72 for the d = -7 instance; the certified order 3 must divide it
    auto I = core::build_instance(Integer(-7), 3, 1, Integer(1));
    auto cg = oracle::class_group_small(I.K(), 5000);
    EXPECT_EQ(cg.cyclic, ivec({3, 24}));
    EXPECT_TRUE(divides(Integer(3), cg.h));
}

TEST(ClassOrder, PrimeDivisors)
{
    EXPECT_EQ(oracle::prime_divisors(1), std::vector<unsigned long>{});
    EXPECT_EQ(oracle::prime_divisors(45), (std::vector<unsigned long>{3, 5}));
    EXPECT_EQ(oracle::prime_divisors(7), std::vector<unsigned long>{7});
}
