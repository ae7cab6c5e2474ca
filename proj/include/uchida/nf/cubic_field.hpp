#ifndef UCHIDA_NF_CUBIC_FIELD_HPP
#define UCHIDA_NF_CUBIC_FIELD_HPP

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <vector>

#include "uchida/nf/ideal.hpp"

namespace uchida::nf {

namespace detail {

/// Integer k with f(k) <= 0 < f(k+1) on [lo, hi] where f is increasing
/// there (or the mirror for decreasing); returns a root if one exists.
inline std::optional<Integer> integer_root_monotone(const IntPoly& f, Integer lo, Integer hi)
{
    if (lo > hi)
        return std::nullopt;
    Integer flo = f.eval(lo), fhi = f.eval(hi);
    if (flo == 0)
        return lo;
    if (fhi == 0)
        return hi;
    if ((flo > 0) == (fhi > 0))
        return std::nullopt;
    bool inc = flo < 0;
    while (hi - lo > 1) {
        Integer mid = floor_div(lo + hi, 2);
        Integer fm = f.eval(mid);
        if (fm == 0)
            return mid;
        if ((fm < 0) == inc)
            lo = mid;
        else
            hi = mid;
    }
    return std::nullopt;
}

} // namespace detail

/// Integer root of a monic integer cubic, if any.  Exact: splits the line
/// at the critical points and bisects each monotone piece.
inline std::optional<Integer> cubic_integer_root(const IntPoly& f)
{
    ensure(f.degree() == 3 && f.leading() == 1, "cubic-root", "monic cubic expected");
    Integer B = 1;
    for (int i = 0; i < 3; ++i)
        B = std::max(B, Integer(abs(f.coeff(static_cast<std::size_t>(i)))));
    B += 1;
    // f'(x) = 3x^2 + 2bx + c
    Integer b = f.coeff(2), c = f.coeff(1);
    Integer disc = 4 * b * b - 12 * c;
    std::vector<Integer> cuts{-B};
    if (disc > 0) {
        Integer r = isqrt(disc);
        // critical points (-2b -+ sqrt(disc)) / 6, bracketed by integers
        Integer lo = floor_div(-2 * b - r - 1, 6), hi = floor_div(-2 * b + r + 1, 6) + 1;
        // generous windows so each critical point sits between two cuts
        for (Integer k = lo - 3; k <= lo + 3; ++k)
            cuts.push_back(k);
        for (Integer k = hi - 3; k <= hi + 3; ++k)
            cuts.push_back(k);
    }
    cuts.push_back(B);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (f.eval(cuts[i]) == 0)
            return cuts[i];
        if (auto r = detail::integer_root_monotone(f, cuts[i], cuts[i + 1]))
            return r;
    }
    if (f.eval(cuts.back()) == 0)
        return cuts.back();
    return std::nullopt;
}

/// Cubic field K = Q(pi), pi a root of the monic integer cubic f, with its
/// maximal order.
class CubicField {
public:
    /// `square_primes` must contain every prime p with p^2 | disc(f); when
    /// have_primes is false, disc(f) is factored within the default budget.
    /// With complete = false the list is known to miss some primes: the
    /// order is then maximal only at the listed primes (and wherever p^2
    /// does not divide disc(f)), and maximal() reports false.
    explicit CubicField(IntPoly f, std::vector<Integer> square_primes = {}, bool have_primes = false, bool complete = true)
        : f_(std::move(f)), maximal_(complete)
    {
        if (f_.degree() != 3 || f_.leading() != 1)
            fail(Errc::precondition, "cubic-shape", "monic cubic expected");
        if (cubic_integer_root(f_))
            fail(Errc::precondition, "reducible", "polynomial has a rational root");
        disc_f_ = poly_discriminant(f_);
        alg_ = std::make_shared<const Algebra>(Algebra::power_basis(f_));
        Order O = Order::equation_order(alg_);
        if (!have_primes) {
            auto fac = factorize(disc_f_);
            fac.require_complete();
            for (auto& [p, e] : fac.factors)
                if (e >= 2)
                    square_primes.push_back(p);
        }
        for (auto& p : square_primes)
            if (divides(p * p, disc_f_)) {
                O = p_maximal(O, p);
                cache_->processed.insert(p);
            }
        order_ = std::make_shared<const Order>(std::move(O));
        index_ = order_->index_over_basis_lattice();
        ensure(disc_f_ == index_ * index_ * order_->disc(), "index-identity", "disc(f) != index^2 disc(K)");
    }

    /// True when the stored order is the full maximal order.
    bool maximal() const { return maximal_; }

    /// Whether the stored order is known to be p-maximal.
    bool maximal_at(const Integer& p) const
    {
        return maximal_ || !divides(p * p, disc_f_) || cache_->processed.count(p) > 0;
    }

    void require_maximal(const std::string& what) const
    {
        if (!maximal_)
            fail(Errc::budget_exhausted, "order-not-maximal", what + " needs the maximal order, but disc(f) is not fully factored");
    }

    const IntPoly& poly() const { return f_; }
    const Algebra& algebra() const { return *alg_; }
    std::shared_ptr<const Algebra> algebra_ptr() const { return alg_; }
    const Order& order() const { return *order_; }
    const Integer& poly_disc() const { return disc_f_; }
    const Integer& disc() const { return order_->disc(); }
    const Integer& index() const { return index_; }

    Elem pi() const { return alg_->basis(1); }

    /// Factorization of p O_K.  Kummer-Dedekind when p does not divide the
    /// index, lattice kernel computations otherwise.
    std::vector<PrimeIdeal> factor_prime(const Integer& p) const
    {
        if (!maximal_at(p))
            fail(Errc::budget_exhausted, "order-not-maximal", "order not known to be maximal at " + p.get_str());
        {
            std::lock_guard lock(cache_->mu);
            auto it = cache_->primes.find(p);
            if (it != cache_->primes.end())
                return it->second;
        }
        std::vector<PrimeIdeal> out = divides(p, index_) ? primes_above(*order_, p) : kummer_dedekind(p);
        std::lock_guard lock(cache_->mu);
        cache_->primes.emplace(p, out);
        return out;
    }

    /// Generic lattice method regardless of the index (for cross-checks).
    std::vector<PrimeIdeal> factor_prime_generic(const Integer& p) const
    {
        if (!maximal_at(p))
            fail(Errc::budget_exhausted, "order-not-maximal", "order not known to be maximal at " + p.get_str());
        return primes_above(*order_, p);
    }

private:
    std::vector<PrimeIdeal> kummer_dedekind(const Integer& p) const
    {
        const Order& O = *order_;
        std::vector<PrimeIdeal> out;
        for (auto& [g, e] : factor_small_mod_p(f_, to_u64(p))) {
            std::vector<Integer> gc;
            for (u64 c : g)
                gc.push_back(from_u64(c));
            Elem gpi = alg_->eval(IntPoly(gc), pi());
            Ideal P = ideal_from_generators(O, {O.require_integral(gpi)}, p);
            PrimeIdeal pr = make_prime(O, p, P);
            ensure(pr.e == e && pr.f == g.size() - 1, "kummer-dedekind",
                   "residue data disagree with the factorization of f mod " + p.get_str());
            out.push_back(std::move(pr));
        }
        std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
            if (a.f != b.f)
                return a.f < b.f;
            if (a.e != b.e)
                return a.e < b.e;
            return a.ideal < b.ideal;
        });
        return out;
    }

    struct Cache {
        std::mutex mu;
        std::map<Integer, std::vector<PrimeIdeal>> primes;
        std::set<Integer> processed;
    };

    IntPoly f_;
    bool maximal_ = true;
    Integer disc_f_, index_;
    std::shared_ptr<const Algebra> alg_;
    std::shared_ptr<const Order> order_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Decomposition shape of p in a cubic field, e.g. "1^2 1" or "3".
inline std::string shape_string(const std::vector<PrimeIdeal>& ps)
{
    std::string s;
    for (auto& P : ps) {
        if (!s.empty())
            s += " ";
        s += std::to_string(P.f);
        if (P.e > 1)
            s += "^" + std::to_string(P.e);
    }
    return s;
}

} // namespace uchida::nf

#endif
