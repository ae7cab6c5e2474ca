#include <gtest/gtest.h>

#include <random>

#include "uchida/arith/integer.hpp"
#include "uchida/arith/matrix.hpp"
#include "uchida/arith/poly.hpp"
#include "uchida/arith/residue.hpp"

using namespace uchida::arith;

namespace {

IntPoly uchida_poly(const Integer& m) { return IntPoly({m, 2 * m, m, 1}); }

bool brute_residue(u64 x, u64 r, u64 q)
{
    for (u64 y = 1; y < q; ++y)
        if (powmod64(y, r, q) == x % q)
            return true;
    return false;
}

} // namespace

TEST(Factorize, SmallExamples)
{
    auto f = factorize(-4914);
    EXPECT_EQ(f.sign, -1);
    ASSERT_EQ(f.factors.size(), 4u);
    EXPECT_EQ(f.factors[0], std::make_pair(Integer(2), 1ul));
    EXPECT_EQ(f.factors[1], std::make_pair(Integer(3), 3ul));
    EXPECT_EQ(f.factors[2], std::make_pair(Integer(7), 1ul));
    EXPECT_EQ(f.factors[3], std::make_pair(Integer(13), 1ul));

    auto one = factorize(1);
    EXPECT_EQ(one.sign, 1);
    EXPECT_TRUE(one.factors.empty());

    auto g = factorize(-250047);
    EXPECT_EQ(g.sign, -1);
    ASSERT_EQ(g.factors.size(), 2u);
    EXPECT_EQ(g.exponent_of(3), 6u);
    EXPECT_EQ(g.exponent_of(7), 3u);
}

TEST(Factorize, RoundTripRandom512)
{
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(12345);
    FactorBudget small{10'000, 2'000};
    for (int i = 0; i < 10'000; ++i) {
        Integer n = rng.get_z_bits(1 + i % 512) + 1;
        if (i % 2)
            n = -n;
        auto f = factorize(n, small);
        ASSERT_EQ(f.product(), n);
        Integer prev = 0;
        for (auto& [p, e] : f.factors) {
            ASSERT_GT(p, prev);
            ASSERT_TRUE(is_prime(p));
            prev = p;
        }
        for (auto& c : f.unfactored)
            ASSERT_FALSE(is_prime(c));
    }
}

TEST(Factorize, SmoothProductsComplete)
{
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(99);
    for (int i = 0; i < 300; ++i) {
        Integer n = 1;
        for (int j = 0; j <= i % 5; ++j)
            n *= next_prime(rng.get_z_bits(8 + (i * 7 + j * 13) % 21));
        auto f = factorize(n);
        ASSERT_TRUE(f.complete()) << n;
        EXPECT_EQ(f.product(), n);
    }
}

TEST(Factorize, BudgetExhaustionIsReported)
{
    // product of two 100-bit primes is far beyond the rho budget
    Integer p = next_prime(ipow(2, 100));
    Integer q = next_prime(ipow(3, 64));
    auto f = factorize(p * q, FactorBudget{1000, 1000});
    EXPECT_FALSE(f.complete());
    EXPECT_THROW(f.require_complete(), uchida::Error);
}

TEST(Valuation, Examples)
{
    EXPECT_EQ(valuation(-4914, 3), 3u);
    EXPECT_EQ(valuation(7, 7), 1u);
    EXPECT_EQ(valuation(-250047, 7), 3u);
}

TEST(CubeFree, Examples)
{
    EXPECT_EQ(cube_free_split(-4914), std::make_pair(Integer(-182), Integer(3)));
    EXPECT_EQ(cube_free_split(8), std::make_pair(Integer(1), Integer(2)));
    EXPECT_EQ(cube_free_split(-62505), std::make_pair(Integer(-2315), Integer(3)));
}

TEST(Crt, Examples)
{
    EXPECT_EQ(crt({{1, 3}, {2, 5}}), std::make_pair(Integer(7), Integer(15)));
    EXPECT_EQ(crt({{0, 101}}), std::make_pair(Integer(0), Integer(101)));
    auto [x, M] = crt({{2, 7}, {3, 11}, {5, 13}});
    EXPECT_EQ(x, 135);
    EXPECT_EQ(M, 1001);
    EXPECT_EQ(mod(x, 7), 2);
    EXPECT_EQ(mod(x, 11), 3);
    EXPECT_EQ(mod(x, 13), 5);
    EXPECT_THROW(crt({{1, 4}, {2, 6}}), uchida::Error);
}

TEST(PowerResidue, Examples)
{
    EXPECT_FALSE(power_residue_test(3, 6, 13));
    EXPECT_TRUE(power_residue_test(1, 10, 31));
    EXPECT_TRUE(power_residue_test(4, 2, 7));
    EXPECT_THROW(power_residue_test(14, 2, 7), uchida::Error);
}

TEST(PowerResidue, AgreesWithBruteForce)
{
    for (u64 q = 3; q < 200; ++q) {
        if (!is_prime64(q))
            continue;
        for (u64 r = 1; r <= 12; ++r)
            for (u64 x = 1; x < q; ++x) {
                bool expect = brute_residue(x, r, q);
                ASSERT_EQ(power_residue_test(x, r, q), expect) << x << " " << r << " " << q;
                ASSERT_EQ(power_residue_test64(x, r, q), expect);
            }
    }
}

TEST(RootMod, Examples)
{
    auto z = rth_root_mod(4, 2, 7);
    ASSERT_TRUE(z);
    EXPECT_TRUE(*z == 2 || *z == 5);
    EXPECT_EQ(rth_root_mod(30, 1, 7).value(), 2);
    EXPECT_FALSE(rth_root_mod(3, 6, 13));
}

TEST(RootMod, ConsistentWithResidueTest)
{
    for (u64 q = 3; q < 400; ++q) {
        if (!is_prime64(q))
            continue;
        for (u64 r = 1; r <= 20; ++r)
            for (u64 x = 1; x < q; x += 1 + q / 40) {
                auto z = rth_root_mod(x, r, q);
                ASSERT_EQ(z.has_value(), power_residue_test(x, r, q));
                if (z) {
                    ASSERT_EQ(powmod(*z, r, q), x);
                }
            }
    }
    // large prime with a deep 2-Sylow subgroup
    Integer q = 998244353; // 119 * 2^23 + 1
    for (Integer x = 2; x < 60; ++x) {
        auto z = rth_root_mod(x, 1 << 10, q);
        EXPECT_EQ(z.has_value(), power_residue_test(x, 1 << 10, q));
        if (z) {
            EXPECT_EQ(powmod(*z, 1 << 10, q), x);
        }
    }
}

TEST(RootsModP, Examples)
{
    IntPoly f({0, -1, 0, 1});
    EXPECT_EQ(roots_mod_p(f, 5).roots, (std::vector<u64>{0, 1, 4}));
    EXPECT_TRUE(roots_mod_p(IntPoly({1, 0, 1}), 3).roots.empty());
    EXPECT_THROW(roots_mod_p(IntPoly({5, 10}), 5), uchida::Error);
}

TEST(RootsModP, UchidaCongruence)
{
    // u(x) = (x+3)^2 (x+m-6) mod 4m-27; m = -62505, 4m-27 = -3^6 7^3
    Integer m = -62505;
    auto r = roots_mod_p(uchida_poly(m), 7);
    ASSERT_EQ(r.roots.size(), 2u);
    for (std::size_t i = 0; i < r.roots.size(); ++i) {
        if (r.roots[i] == 4)
            EXPECT_EQ(r.multiplicity[i], 2u);
        else
            EXPECT_EQ(Integer(r.roots[i]), mod(6 - m, 7));
    }
}

TEST(RootsModP, AgreesWithExhaustive)
{
    std::mt19937_64 rng(7);
    for (u64 p = 2; p < 1000; ++p) {
        if (!is_prime64(p))
            continue;
        for (int t = 0; t < 3; ++t) {
            IntPoly f({Integer(static_cast<long>(rng() % 2001) - 1000), Integer(static_cast<long>(rng() % 2001) - 1000),
                       Integer(static_cast<long>(rng() % 2001) - 1000), 1});
            std::vector<u64> expect;
            for (u64 x = 0; x < p; ++x)
                if (mod(f.eval(Integer(x)), p) == 0)
                    expect.push_back(x);
            EXPECT_EQ(roots_mod_p(f, p).roots, expect) << p;
        }
    }
    // large prime path: product of linear factors
    Integer p = 1000003;
    IntPoly g = IntPoly({-17, 1}) * IntPoly({-400000, 1}) * IntPoly({5, 1});
    EXPECT_EQ(roots_mod_p(g, p).roots, (std::vector<u64>{17, 400000, 999998}));
}

TEST(Discriminant, Examples)
{
    Integer m = -4914;
    EXPECT_EQ(poly_discriminant(uchida_poly(m)), m * m * (4 * m - 27));
    EXPECT_EQ(poly_discriminant(uchida_poly(m)), Integer(-4914) * -4914 * -19683);
    EXPECT_EQ(poly_discriminant(IntPoly({7, 3, 1})), 9 - 28);
    // g(x) = x^3 + b(cx+1)^2 with (b,c) = (-182,3)
    Integer b = -182, c = 3;
    IntPoly g({b, 2 * b * c, b * c * c, 1});
    EXPECT_EQ(poly_discriminant(g), b * b * (4 * m - 27));
    EXPECT_EQ(poly_discriminant(IntPoly({1, -1, 0, 1})), 23 - 46);
}

TEST(Hnf, CanonicalFormAndModular)
{
    IntMatrix A(3, 4);
    long vals[3][4] = {{4, 6, 2, 8}, {2, 1, 7, 3}, {5, 5, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j)
            A(i, j) = vals[i][j];
    IntMatrix H = hnf(A);
    ASSERT_EQ(H.cols(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_GT(H(i, i), 0);
        for (std::size_t j = 0; j < i; ++j)
            EXPECT_EQ(H(i, j), 0);
        for (std::size_t j = i + 1; j < 3; ++j) {
            EXPECT_GE(H(i, j), 0);
            EXPECT_LT(H(i, j), H(i, i));
        }
    }
    Integer D = det(H);
    EXPECT_EQ(hnf(A, D), H);
    for (std::size_t j = 0; j < 4; ++j)
        EXPECT_TRUE(lattice_coords(H, A.column(j)).has_value());
}

TEST(Smith, Invariants)
{
    IntMatrix A(2, 2);
    A(0, 0) = 2;
    A(0, 1) = 4;
    A(1, 0) = 6;
    A(1, 1) = 8;
    EXPECT_EQ(smith_invariants(A), (IntVec{2, 4}));
}
