#ifndef UCHIDA_ORACLE_CLASS_GROUP_HPP
#define UCHIDA_ORACLE_CLASS_GROUP_HPP

#include <random>
#include <vector>

#include "uchida/nf/units.hpp"

namespace uchida::oracle {

using namespace uchida::arith;
using nf::CubicField;
using nf::Interval;

struct ClassGroup {
    IntVec cyclic;          // invariants > 1, each dividing the next
    Integer h;
    Integer minkowski;      // floor of the Minkowski bound
    std::size_t factor_base = 0;
    std::size_t relations = 0;
    std::size_t saturation_tests = 0;
};

namespace detail {

class RelationSearch {
public:
    RelationSearch(const CubicField& K, const Integer& M) : K_(K), O_(K.order())
    {
        for (Integer p = 2; p <= M; p = next_prime(p)) {
            small_primes_.push_back(p);
            auto ps = K.factor_prime(p);
            for (auto& P : ps) {
                above_[p].push_back(P);
                if (P.norm() <= M) {
                    fb_.push_back(P);
                    index_[{p, above_[p].size() - 1}] = fb_.size() - 1;
                }
            }
        }
    }

    const std::vector<nf::PrimeIdeal>& factor_base() const { return fb_; }

    /// Exponent vector of x over the factor base, if x O_K factors there.
    std::optional<IntVec> relation(const IntVec& x) const
    {
        Integer N = abs(O_.norm(x));
        if (N == 0)
            return std::nullopt;
        IntVec v(fb_.size(), Integer(0));
        for (auto& p : small_primes_) {
            if (!divides(p, N))
                continue;
            while (divides(p, N))
                N /= p;
            const auto& ps = above_.at(p);
            for (std::size_t j = 0; j < ps.size(); ++j) {
                long e = nf::valuation(O_, ps[j], x);
                if (e == 0)
                    continue;
                auto it = index_.find({p, j});
                if (it == index_.end())
                    return std::nullopt;
                v[it->second] = e;
            }
        }
        if (N != 1)
            return std::nullopt;
        return v;
    }

private:
    const CubicField& K_;
    const nf::Order& O_;
    std::vector<Integer> small_primes_;
    std::map<Integer, std::vector<nf::PrimeIdeal>> above_;
    std::map<std::pair<Integer, std::size_t>, std::size_t> index_;
    std::vector<nf::PrimeIdeal> fb_;
};

inline bool full_rank(const std::vector<IntVec>& rels, std::size_t k)
{
    if (rels.size() < k)
        return false;
    IntMatrix A = IntMatrix::from_columns(rels, k);
    return rank_mod_p(A, Integer(1000003)) == k;
}

} // namespace detail

/// Class group of a complex cubic field by relations over the primes of
/// norm up to the Minkowski bound.  The relation lattice L' may be too
/// small at first; for every prime l dividing [Z^k : L'] each nonzero
/// class killed by l is tested for principality, and a principal one is
/// added as a relation.  When no such class is principal, L' is the full
/// relation lattice and Z^k / L' is the class group.
inline ClassGroup class_group_small(const CubicField& K, unsigned long effort = 5000, std::uint64_t node_limit = 50'000'000ULL)
{
    K.require_maximal("class_group_small");
    const nf::Order& O = K.order();
    nf::OrderGeometry geo(O, nf::EmbeddingData::of_cubic(K.poly()));
    if (geo.embeddings().place_count() != 2)
        fail(Errc::precondition, "class-group-signature", "class_group_small handles complex cubic fields only");

    ClassGroup out;
    // (4/pi) (3!/3^3) sqrt|D|
    Interval mk = Interval(4L) / Interval::pi() * Interval(Rational(6, 27)) * Interval(Integer(abs(K.disc()))).sqrt();
    out.minkowski = mk.upper_floor();
    if (out.minkowski > effort)
        fail(Errc::budget_exhausted, "minkowski-effort",
             "Minkowski bound " + out.minkowski.get_str() + " exceeds the effort limit " + std::to_string(effort));

    detail::RelationSearch rs(K, out.minkowski);
    const auto& fb = rs.factor_base();
    const std::size_t k = fb.size();
    out.factor_base = k;
    if (k == 0) {
        out.h = 1;
        return out;
    }

    std::vector<IntVec> rels;
    Interval root_d = Interval(Integer(abs(K.disc()))).sqrt();
    auto harvest = [&](const nf::Ideal& I, std::size_t want) {
        Interval base = (Interval(I.norm()) * root_d).sqr().root(3) * Interval(3L);
        std::size_t got = 0;
        for (int round = 0; round < 8 && got < want; ++round) {
            Interval bound = base * Interval(1L << round);
            got = 0;
            std::vector<IntVec> found;
            nf::enumerate_short(
                I.hnf, geo.t2_map(), bound,
                [&](const IntVec& x) {
                    if (auto r = rs.relation(x)) {
                        found.push_back(std::move(*r));
                        ++got;
                    }
                    return got < want;
                },
                node_limit);
            if (got >= want || round == 7)
                for (auto& r : found)
                    rels.push_back(std::move(r));
        }
    };

    for (auto& P : fb)
        harvest(P.ideal, 3);
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    Integer last_h = 0;
    int stable = 0;
    for (std::size_t iter = 0; iter < 50 * k + 100; ++iter) {
        if (detail::full_rank(rels, k)) {
            IntMatrix H = hnf(IntMatrix::from_columns(rels, k));
            Integer h = 1;
            for (std::size_t i = 0; i < k; ++i)
                h *= H(i, i);
            stable = h == last_h ? stable + 1 : 0;
            last_h = h;
            if (stable >= 3 || h == 1)
                break;
        }
        const nf::PrimeIdeal& a = fb[pick(rng)];
        const nf::PrimeIdeal& b = fb[pick(rng)];
        harvest(nf::ideal_mul(O, a.ideal, b.ideal), 2);
    }
    if (!detail::full_rank(rels, k))
        fail(Errc::budget_exhausted, "relations-rank", "relations did not reach full rank");

    nf::FundamentalUnit fu = nf::fundamental_unit(K);
    for (;;) {
        IntMatrix H = hnf(IntMatrix::from_columns(rels, k));
        Integer h = 1;
        for (std::size_t i = 0; i < k; ++i)
            h *= H(i, i);
        bool added = false;
        auto lp = factorize(h).require_complete();
        for (auto& l : lp.primes()) {
            auto ker = kernel_mod_p(H, l);
            const std::size_t r = ker.size();
            // lines in F_l^r: first nonzero coefficient equal to 1
            std::vector<Integer> c(r, Integer(0));
            auto next = [&]() {
                for (std::size_t i = 0; i < r; ++i) {
                    c[i] += 1;
                    if (c[i] < l)
                        return true;
                    c[i] = 0;
                }
                return false;
            };
            while (!added && next()) {
                std::size_t lead = 0;
                while (c[lead] == 0)
                    ++lead;
                if (c[lead] != 1)
                    continue;
                IntVec y(k, Integer(0));
                for (std::size_t j = 0; j < r; ++j)
                    for (std::size_t i = 0; i < k; ++i)
                        y[i] += c[j] * ker[j][i];
                IntVec v(k, Integer(0));
                for (std::size_t i = 0; i < k; ++i) {
                    for (std::size_t j = 0; j < k; ++j)
                        v[i] += H(i, j) * y[j];
                    ensure(divides(l, v[i]), "saturation-kernel", "H y is not divisible by l");
                    v[i] = mod(v[i] / l, h);
                }
                std::vector<std::pair<const nf::PrimeIdeal*, unsigned long>> fac;
                for (std::size_t i = 0; i < k; ++i)
                    if (v[i] != 0)
                        fac.emplace_back(&fb[i], v[i].get_ui());
                nf::Ideal J = nf::ideal_product(O, fac);
                ++out.saturation_tests;
                auto res = nf::is_principal(K, fu, J, node_limit);
                if (res.verdict == nf::Principality::inconclusive)
                    fail(Errc::inconclusive, "saturation-inconclusive", "principality test hit its node limit");
                if (res.verdict == nf::Principality::principal) {
                    rels.push_back(v);
                    added = true;
                }
            }
            if (added)
                break;
        }
        if (added)
            continue;
        out.h = h;
        for (auto& x : smith_invariants(H))
            if (x != 1)
                out.cyclic.push_back(abs(x));
        std::sort(out.cyclic.begin(), out.cyclic.end());
        out.relations = rels.size();
        return out;
    }
}

} // namespace uchida::oracle

#endif
