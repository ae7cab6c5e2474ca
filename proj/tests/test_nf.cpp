#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "uchida/core/instance.hpp"
#include "uchida/nf/serialize.hpp"
#include "uchida/nf/units.hpp"

using namespace uchida;
using namespace uchida::arith;
using namespace uchida::nf;

namespace {

IntVec random_vec(std::mt19937_64& rng, std::size_t n, long lo, long hi)
{
    std::uniform_int_distribution<long> dist(lo, hi);
    IntVec v(n);
    for (auto& x : v)
        x = dist(rng);
    return v;
}

bool is_zero_vec(const IntVec& v)
{
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

// Exponent of p in the integer N.
long vp(Integer N, const Integer& p)
{
    N = abs(N);
    long e = 0;
    while (N != 0 && divides(p, N)) {
        N /= p;
        ++e;
    }
    return e;
}

} // namespace

// Regulators frozen from PARI/GP (bnfinit, 40 digits).
TEST(Units, RegulatorsMatchFrozenValues)
{
    struct Case {
        IntPoly f;
        long double reg;
    };
    for (const auto& c : {Case{IntPoly({-1, -1, 0, 1}), 0.28119957432L}, Case{IntPoly({-1, 4, 0, 1}), 1.4013423273L}}) {
        CubicField K(c.f);
        auto fu = fundamental_unit(K);
        EXPECT_NEAR(static_cast<double>(fu.regulator.mid_ld()), static_cast<double>(c.reg), 1e-9);
        EXPECT_EQ(abs(K.order().norm(fu.unit)), 1);
    }
}

TEST(Units, InstanceRegulatorWithHint)
{
    auto I = core::build_instance(Integer(-7), 3, 1, Integer(1));
    const CubicField& K = I.K();
    auto fu = fundamental_unit(K, K.algebra().add(K.pi(), K.algebra().one()));
    EXPECT_NEAR(static_cast<double>(fu.regulator.mid_ld()), 11.04304982676, 1e-8);
}

TEST(Ideals, NormIsMultiplicative)
{
    CubicField K(IntPoly({-1, 4, 0, 1}));
    const Order& O = K.order();
    std::mt19937_64 rng(11);
    for (int it = 0; it < 40; ++it) {
        IntVec x = random_vec(rng, 3, -9, 9), y = random_vec(rng, 3, -9, 9);
        if (is_zero_vec(x) || is_zero_vec(y))
            continue;
        Ideal I = principal_ideal(O, x), J = principal_ideal(O, y);
        EXPECT_EQ(I.norm(), abs(O.norm(x)));
        EXPECT_EQ(ideal_mul(O, I, J).norm(), I.norm() * J.norm());
        EXPECT_EQ(ideal_mul(O, I, J), principal_ideal(O, O.mul(x, y)));
    }
}

TEST(Ideals, ValuationsAccountForTheNorm)
{
    auto I = core::build_instance(Integer(-3), 3, 1, Integer(1));
    const CubicField& K = I.K();
    const Order& O = K.order();
    std::mt19937_64 rng(12);
    for (int it = 0; it < 30; ++it) {
        IntVec x = random_vec(rng, 3, -20, 20), y = random_vec(rng, 3, -20, 20);
        if (is_zero_vec(x) || is_zero_vec(y))
            continue;
        Integer N = O.norm(x);
        for (auto& p : factorize(N).require_complete().primes()) {
            long total = 0;
            for (auto& P : K.factor_prime(p)) {
                long v = valuation(O, P, x);
                total += v * static_cast<long>(P.f);
                EXPECT_EQ(valuation(O, P, O.mul(x, y)), v + valuation(O, P, y));
            }
            EXPECT_EQ(total, vp(N, p)) << "p=" << p;
        }
    }
}

TEST(Ideals, PrimeDecompositionDegrees)
{
    CubicField K(IntPoly({-2, 0, 0, 1}));
    for (Integer p = 2; p < 200; p = next_prime(p)) {
        auto ps = K.factor_prime(p);
        unsigned sum = 0;
        Ideal prod = unit_ideal(K.order());
        for (auto& P : ps) {
            sum += P.e * P.f;
            EXPECT_EQ(P.norm(), ipow(p, P.f));
            prod = ideal_mul(K.order(), prod, ideal_pow(K.order(), P.ideal, P.e));
        }
        EXPECT_EQ(sum, 3u);
        EXPECT_EQ(prod, principal_ideal(K.order(), IntVec{p, 0, 0}));
    }
    EXPECT_EQ(shape_string(K.factor_prime(2)), "1^3");
    EXPECT_EQ(shape_string(K.factor_prime(3)), "1^3");
}

TEST(Principality, TrivialClassGroupEveryIdealPrincipal)
{
    CubicField K(IntPoly({-1, -1, 0, 1}));
    auto fu = fundamental_unit(K);
    for (Integer p = 2; p < 60; p = next_prime(p))
        for (auto& P : K.factor_prime(p)) {
            auto r = is_principal(K, fu, P.ideal);
            ASSERT_EQ(r.verdict, Principality::principal) << "p=" << p;
            EXPECT_EQ(principal_ideal(K.order(), r.generator), P.ideal);
        }
}

TEST(Principality, ClassNumberTwo)
{
    // disc -283, class group Z/2
    CubicField K(IntPoly({-1, 4, 0, 1}));
    auto fu = fundamental_unit(K);
    int nonprincipal = 0;
    for (Integer p = 2; p < 40; p = next_prime(p))
        for (auto& P : K.factor_prime(p)) {
            auto r = is_principal(K, fu, P.ideal);
            ASSERT_NE(r.verdict, Principality::inconclusive);
            if (r.verdict == Principality::non_principal)
                ++nonprincipal;
            auto r2 = is_principal(K, fu, ideal_pow(K.order(), P.ideal, 2));
            EXPECT_EQ(r2.verdict, Principality::principal) << "p=" << p;
        }
    EXPECT_GT(nonprincipal, 0);
}

TEST(Principality, GeneratorOfPrincipalIdeal)
{
    CubicField K(IntPoly({-7, 0, 0, 1}));
    auto fu = fundamental_unit(K);
    const Order& O = K.order();
    std::mt19937_64 rng(13);
    for (int it = 0; it < 10; ++it) {
        IntVec x = random_vec(rng, 3, -6, 6);
        if (is_zero_vec(x))
            continue;
        Ideal I = principal_ideal(O, x);
        auto r = is_principal(K, fu, I);
        ASSERT_EQ(r.verdict, Principality::principal);
        EXPECT_EQ(abs(O.norm(r.generator)), I.norm());
        EXPECT_TRUE(I.contains(r.generator));
    }
}

TEST(Galois, SigmaIdentitiesOnInstance)
{
    auto I = core::build_instance(Integer(-7), 3, 1, Integer(1));
    const GaloisCubic& G = I.G();
    const Algebra& A = G.algebra();
    EXPECT_EQ(G.trace_rel(G.pi()), A.scalar(Rational(-I.m())));
    EXPECT_EQ(G.norm_rel(G.pi()), A.scalar(Rational(-I.m())));
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<long> dist(-5, 5);
    for (int it = 0; it < 20; ++it) {
        Elem x(A.dim()), y(A.dim());
        for (std::size_t i = 0; i < A.dim(); ++i) {
            x[i] = Rational(dist(rng));
            y[i] = Rational(dist(rng));
        }
        EXPECT_EQ(G.sigma(G.sigma2(x)), x);
        EXPECT_EQ(G.sigma(A.mul(x, y)), A.mul(G.sigma(x), G.sigma(y)));
        EXPECT_EQ(G.tau(G.tau(x)), x);
        EXPECT_EQ(G.sigma(G.tau(x)), G.tau(G.sigma2(x)));
        EXPECT_EQ(G.norm_Q(x), A.norm(x));
    }
}

TEST(Serialize, IdealRoundTrip)
{
    CubicField K(IntPoly({-19, 0, 0, 1}));
    for (Integer p = 2; p < 30; p = next_prime(p))
        for (auto& P : K.factor_prime(p)) {
            Json j = to_json(P.ideal);
            EXPECT_EQ(ideal_from_json(Json::parse(j.dump())), P.ideal);
        }
    Integer big = ipow(Integer(3), 200) - 1;
    EXPECT_EQ(integer_from_json(Json::parse(to_json(big).dump())), big);
    IntVec v{Integer(-5), big, Integer(0)};
    EXPECT_EQ(intvec_from_json(to_json(v)), v);
}

TEST(Interval, EnclosuresStayValidAcrossPrecision)
{
    PrecisionScope scope(256);
    Interval two(2L);
    Interval r = two.sqrt();
    EXPECT_TRUE((r * r).contains(two) || (r * r).overlaps(two));
    EXPECT_LT(r.width().upper(), 1e-70);
    Interval pi = Interval::pi();
    EXPECT_LT(pi.lower(), 3.14159265359);
    EXPECT_GT(pi.upper(), 3.14159265358);
}

TEST(CubicField, BasicFixtures)
{
    CubicField K(IntPoly({-1, -1, 0, 1}));
    EXPECT_EQ(K.index(), 1);
    EXPECT_EQ(K.disc(), -23);
    EXPECT_THROW(CubicField(IntPoly({0, 0, 0, 1})), Error);
    EXPECT_THROW(CubicField(IntPoly({-8, 0, 0, 1})), Error);
    EXPECT_EQ(K.algebra().trace(K.algebra().one()), 3);
}

TEST(CubicField, IndexIdentityAndShapesAwayFromIndex)
{
    auto I = core::build_instance(Integer(-3), 3, 1, Integer(1));
    const CubicField& K = I.K();
    EXPECT_EQ(K.poly_disc(), K.index() * K.index() * K.disc());
    bool saw_split = false;
    for (Integer p = 2; p < 300; p = next_prime(p)) {
        auto ps = K.factor_prime(p);
        unsigned sum = 0;
        for (auto& P : ps) {
            sum += P.e * P.f;
            EXPECT_EQ(valuation(K.order(), P, IntVec{p, 0, 0}), static_cast<long>(P.e));
        }
        EXPECT_EQ(sum, 3u);
        if (ps.size() == 3) {
            saw_split = true;
            for (auto& P : ps)
                EXPECT_TRUE(P.e == 1 && P.f == 1);
        }
        if (divides(p, K.index()))
            continue;
        auto mod_p = factor_small_mod_p(K.poly(), to_u64(p));
        std::multiset<std::pair<unsigned, unsigned>> a, b;
        for (auto& [g, e] : mod_p)
            a.insert({static_cast<unsigned>(g.size() - 1), e});
        for (auto& P : ps)
            b.insert({P.f, P.e});
        EXPECT_EQ(a, b) << "p=" << p;
    }
    EXPECT_TRUE(saw_split);
}

TEST(Norms, InstanceNormsAndResultants)
{
    auto I = core::build_instance(Integer(-7), 3, 1, Integer(1));
    const CubicField& K = I.K();
    const Algebra& A = K.algebra();
    const Integer& m = I.m();
    EXPECT_EQ(A.norm(A.add(K.pi(), A.scalar(Rational(3)))), Rational(27 - 4 * m));
    EXPECT_EQ(A.norm(A.add(K.pi(), A.scalar(Rational(m - 6)))), Rational((m - 8) * (27 - 4 * m)));

    OrderGeometry geo(K.order(), EmbeddingData::of_cubic(K.poly()));
    ASSERT_EQ(geo.embeddings().place_count(), 2u);
    std::mt19937_64 rng(15);
    RatPoly f = to_rational(K.poly());
    for (int it = 0; it < 100; ++it) {
        IntVec x = random_vec(rng, 3, -50, 50);
        if (is_zero_vec(x))
            continue;
        Integer N = K.order().norm(x);
        Elem e = K.order().to_algebra(x);
        EXPECT_EQ(Rational(N), resultant(f, RatPoly(std::vector<Rational>(e.begin(), e.end()))));
        Interval prod = geo.image(0, x).re * geo.image(1, x).abs2();
        EXPECT_TRUE(prod.contains(Interval(N))) << prod.to_string();
    }
}

TEST(Galois, RelativeTraceAndNormsOnKF)
{
    auto I = core::build_instance(Integer(-7), 3, 1, Integer(1));
    const GaloisCubic& G = I.G();
    const Algebra& A = G.algebra();
    const Integer& m = I.m();
    QuadNumber tr = G.trace_F(A.div(G.pi_sigma(), G.pi()));
    EXPECT_EQ(tr, (QuadNumber{frac(2 * m - 3, 2), frac(I.S(), 2)}));
    std::mt19937_64 rng(16);
    std::uniform_int_distribution<long> dist(-4, 4);
    for (int it = 0; it < 20; ++it) {
        Elem x(A.dim());
        for (auto& c : x)
            c = Rational(dist(rng));
        if (A.is_zero(x))
            continue;
        EXPECT_EQ(A.norm(x), G.norm_F(x).norm(I.d()));
        // the F-coefficients of the characteristic polynomial are the sigma-orbit sums
        auto cp = G.charpoly_F(x);
        EXPECT_EQ(cp[2], -G.trace_F(x));
        EXPECT_EQ(cp[0], -G.norm_F(x));
    }
}

TEST(Principality, RandomPrincipalIdealsNeverRejected)
{
    CubicField K(IntPoly({-11, 0, 0, 1}));
    auto fu = fundamental_unit(K);
    const Order& O = K.order();
    auto unit = is_principal(K, fu, unit_ideal(O));
    ASSERT_EQ(unit.verdict, Principality::principal);
    EXPECT_TRUE(nf::detail::is_plus_minus_one(unit.generator));
    std::mt19937_64 rng(17);
    int tested = 0;
    while (tested < 1000) {
        IntVec x = random_vec(rng, 3, -12, 12);
        if (is_zero_vec(x))
            continue;
        ++tested;
        auto r = is_principal(K, fu, principal_ideal(O, x));
        ASSERT_EQ(r.verdict, Principality::principal) << "x=" << x[0] << "," << x[1] << "," << x[2];
    }
}

TEST(Units, PairRegulators)
{
    auto I = core::build_instance(Integer(-7), 3, 1, Integer(1));
    const GaloisCubic& G = I.G();
    const Algebra& A = G.algebra();
    Elem eps = A.add(G.pi(), A.one());
    EXPECT_TRUE(certify_independent(G, eps, G.sigma(eps)).positive());
    EXPECT_TRUE(regulator_of_pair(G, eps, eps).contains_zero());
    EXPECT_TRUE(regulator_of_pair(G, eps, A.inverse(eps)).contains_zero());
    EXPECT_EQ(abs(A.norm(eps)), 1);
}
