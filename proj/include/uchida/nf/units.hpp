#ifndef UCHIDA_NF_UNITS_HPP
#define UCHIDA_NF_UNITS_HPP

#include <optional>
#include <string>
#include <vector>

#include "uchida/nf/compositum.hpp"
#include "uchida/nf/lattice.hpp"

namespace uchida::nf {

/// Archimedean data of an order: images of its basis at every place, and
/// the T2 map on integer coordinates.
class OrderGeometry {
public:
    OrderGeometry(const Order& O, EmbeddingData E) : O_(&O), E_(std::move(E))
    {
        const std::size_t n = O.dim();
        img_.assign(E_.place_count(), {});
        std::vector<std::vector<Interval>> cols(n);
        for (std::size_t j = 0; j < n; ++j) {
            Elem b = O.basis().column(j);
            for (std::size_t k = 0; k < E_.place_count(); ++k)
                img_[k].push_back(E_.image(k, b));
            cols[j] = E_.real_coords(b);
        }
        phi_ = LinearImage(std::move(cols));
    }

    const Order& order() const { return *O_; }
    const EmbeddingData& embeddings() const { return E_; }
    const LinearImage& t2_map() const { return phi_; }

    CInterval image(std::size_t k, const IntVec& x) const
    {
        CInterval acc{Interval(0L), Interval(0L)};
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j] != 0)
                acc = acc + img_[k][j] * Interval(x[j]);
        return acc;
    }

    Interval t2(const IntVec& x) const { return phi_.norm2(x); }

    /// Integer vector with the given image at every place, if one exists.
    /// values: real value at real places, complex value at complex places.
    /// Returns nullopt when some coordinate interval holds no integer.
    std::optional<IntVec> solve_integral(const std::vector<CInterval>& values) const
    {
        const std::size_t n = O_->dim();
        // real system rows: real place -> Re, complex place -> Re, Im
        std::vector<std::vector<Interval>> A;
        std::vector<Interval> rhs;
        for (std::size_t k = 0; k < E_.place_count(); ++k) {
            std::vector<Interval> re, im;
            for (std::size_t j = 0; j < n; ++j) {
                re.push_back(img_[k][j].re);
                im.push_back(img_[k][j].im);
            }
            A.push_back(re);
            rhs.push_back(values[k].re);
            if (!E_.is_real(k)) {
                A.push_back(im);
                rhs.push_back(values[k].im);
            }
        }
        ensure(A.size() == n, "solve-integral", "place count does not match the degree");
        // Gaussian elimination, pivot by largest midpoint
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = c;
            long double best = -1;
            for (std::size_t r = c; r < n; ++r) {
                long double v = std::fabs(A[r][c].mid_ld());
                if (v > best) {
                    best = v;
                    piv = r;
                }
            }
            std::swap(A[c], A[piv]);
            std::swap(rhs[c], rhs[piv]);
            if (A[c][c].contains_zero())
                fail(Errc::precision, "solve-pivot", "pivot interval contains zero");
            for (std::size_t r = c + 1; r < n; ++r) {
                Interval f = A[r][c] / A[c][c];
                for (std::size_t j = c; j < n; ++j)
                    A[r][j] -= f * A[c][j];
                rhs[r] -= f * rhs[c];
            }
        }
        std::vector<Interval> x(n);
        for (std::size_t i = n; i-- > 0;) {
            Interval s = rhs[i];
            for (std::size_t j = i + 1; j < n; ++j)
                s -= A[i][j] * x[j];
            x[i] = s / A[i][i];
        }
        IntVec out(n);
        for (std::size_t i = 0; i < n; ++i) {
            Integer lo = x[i].lower_ceil(), hi = x[i].upper_floor();
            if (lo > hi)
                return std::nullopt;
            if (lo < hi)
                fail(Errc::precision, "solve-round", "coordinate enclosure holds several integers");
            out[i] = lo;
        }
        return out;
    }

private:
    const Order* O_;
    EmbeddingData E_;
    std::vector<std::vector<CInterval>> img_;
    LinearImage phi_;
};

/// A fundamental unit of a complex cubic field, normalized to real image
/// > 1, with the regulator log(real image).
struct FundamentalUnit {
    IntVec unit;        // coordinates in the maximal order
    Elem element;       // power-basis coordinates
    Interval regulator;
    std::string method; // "artin-bound", "root-test" or "enumeration"
    mpfr_prec_t bits = 0;
};

namespace detail {

inline bool is_plus_minus_one(const IntVec& x)
{
    if (abs(x[0]) != 1)
        return false;
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i] != 0)
            return false;
    return true;
}

inline IntVec unit_inverse(const Order& O, const IntVec& u)
{
    return O.require_integral(O.algebra().inverse(O.to_algebra(u)));
}

/// Any unit of infinite order, by enumeration with a growing T2 bound.
inline IntVec search_unit(const OrderGeometry& geo)
{
    const Order& O = geo.order();
    IntMatrix I = IntMatrix::identity(O.dim());
    for (long bound = 16; bound <= (1L << 40); bound *= 4) {
        std::optional<IntVec> found;
        enumerate_short(I, geo.t2_map(), Interval(bound), [&](const IntVec& x) {
            if (abs(O.norm(x)) == 1 && !is_plus_minus_one(x)) {
                found = x;
                return false;
            }
            return true;
        });
        if (found)
            return *found;
    }
    fail(Errc::budget_exhausted, "unit-search", "no unit found below T2 = 2^40");
}

/// eta with real image > 1.
inline IntVec normalize_unit(const OrderGeometry& geo, IntVec eta)
{
    Interval r = geo.image(0, eta).re;
    if (r.abs().contains(Interval(1L)) && r.abs().width().upper() > 0.5)
        fail(Errc::precision, "unit-normalize", "real image not separated from 1");
    if (certainly_less(r.abs(), Interval(1L)))
        eta = unit_inverse(geo.order(), eta);
    if (geo.image(0, eta).re.negative())
        for (auto& c : eta)
            c = -c;
    ensure(geo.image(0, eta).re.positive(), "unit-normalize", "could not make the real image positive");
    return eta;
}

/// The k-th root of a unit eta (real image theta > 1) with positive real
/// image, if it lies in the order.  A unit e with real image rho has
/// |e_c|^2 = 1/rho and integral trace rho + 2 Re(e_c), which leaves
/// finitely many candidates for e_c; each is tested exactly.
inline std::optional<IntVec> unit_kth_root(const OrderGeometry& geo, const IntVec& eta, unsigned long k)
{
    const Order& O = geo.order();
    Interval theta = geo.image(0, eta).re;
    Interval rho = theta.root(k);
    Interval inv_sqrt = Interval(1L) / rho.sqrt();
    Integer a_lo = (rho - inv_sqrt * Interval(2L)).lower_ceil();
    Integer a_hi = (rho + inv_sqrt * Interval(2L)).upper_floor();
    for (Integer a = a_lo; a <= a_hi; ++a) {
        Interval X = (Interval(a) - rho) * Interval(Rational(1, 2));
        Interval Y2 = Interval(1L) / rho - X.sqr();
        if (Y2.negative())
            continue;
        Interval Y = Y2.sqrt();
        for (int sgn : {1, -1}) {
            std::vector<CInterval> vals{CInterval{rho, Interval(0L)}, CInterval{X, sgn > 0 ? Y : -Y}};
            auto c = geo.solve_integral(vals);
            if (!c)
                continue;
            IntVec p = O.one();
            for (unsigned long i = 0; i < k; ++i)
                p = O.mul(p, *c);
            if (p == eta)
                return c;
        }
    }
    return std::nullopt;
}

inline std::vector<unsigned long> primes_up_to(unsigned long n)
{
    std::vector<unsigned long> out;
    for (unsigned long p = 2; p <= n; ++p) {
        bool pr = true;
        for (unsigned long q : out) {
            if (q * q > p)
                break;
            if (p % q == 0) {
                pr = false;
                break;
            }
        }
        if (pr)
            out.push_back(p);
    }
    return out;
}

} // namespace detail

/// Fundamental unit of a complex cubic field.  Starts from the hint unit
/// (or a searched one) and certifies it: Artin's inequality |D| < 4e^3 + 24
/// caps the root degree k with eta = e^k, and each prime k up to the cap
/// is excluded exactly.  Tiny discriminants, where the inequality says
/// nothing, fall back to enumerating every unit with smaller real image.
inline FundamentalUnit fundamental_unit(const CubicField& K, const std::optional<Elem>& hint = std::nullopt)
{
    return with_precision_ladder([&](mpfr_prec_t bits) {
        const Order& O = K.order();
        OrderGeometry geo(O, EmbeddingData::of_cubic(K.poly()));
        if (geo.embeddings().place_count() != 2)
            fail(Errc::precondition, "unit-signature", "fundamental_unit needs a cubic field with one real embedding");
        IntVec eta;
        if (hint) {
            auto c = O.from_algebra(*hint);
            if (!c || abs(O.norm(*c)) != 1 || detail::is_plus_minus_one(*c))
                fail(Errc::precondition, "unit-hint", "hint is not a unit of infinite order");
            eta = *c;
        } else {
            eta = detail::search_unit(geo);
        }
        eta = detail::normalize_unit(geo, eta);

        FundamentalUnit out;
        out.bits = bits;
        Interval D(Integer(abs(K.disc())));
        const bool artin = certainly_less(Interval(28L), D);
        for (;;) {
            Interval theta = geo.image(0, eta).re;
            if (artin) {
                // e^3 > (|D| - 24)/4
                Interval A = ((D - Interval(24L)) * Interval(Rational(1, 4))).root(3);
                Interval kmax_f = theta.log() / A.log();
                unsigned long kmax = kmax_f.upper_floor().get_ui();
                bool reduced = false;
                for (unsigned long k : detail::primes_up_to(kmax)) {
                    if (auto r = detail::unit_kth_root(geo, eta, k)) {
                        eta = *r;
                        reduced = true;
                        break;
                    }
                }
                if (reduced)
                    continue;
                out.method = kmax < 2 ? "artin-bound" : "root-test";
            } else {
                // every unit u with 1 < u_r < theta has T2(u) = u_r^2 + 2/u_r < theta^2 + 2/theta
                Interval bound = theta.sqr() + Interval(2L) / theta;
                std::optional<IntVec> smaller;
                Interval best = theta;
                enumerate_short(IntMatrix::identity(3), geo.t2_map(), bound, [&](const IntVec& x) {
                    if (abs(O.norm(x)) != 1 || detail::is_plus_minus_one(x))
                        return true;
                    Interval r = geo.image(0, x).re.abs();
                    if (certainly_less(Interval(1L), r) && certainly_less(r, best)) {
                        best = r;
                        smaller = x;
                    }
                    return true;
                });
                if (smaller) {
                    eta = detail::normalize_unit(geo, *smaller);
                    continue;
                }
                out.method = "enumeration";
            }
            out.unit = eta;
            out.element = O.to_algebra(eta);
            out.regulator = theta.log();
            return out;
        }
    });
}

enum class Principality { principal, non_principal, inconclusive };

inline const char* principality_name(Principality p)
{
    switch (p) {
    case Principality::principal: return "principal";
    case Principality::non_principal: return "non-principal";
    case Principality::inconclusive: return "inconclusive";
    }
    return "?";
}

struct PrincipalityResult {
    Principality verdict = Principality::inconclusive;
    IntVec generator;     // set when principal
    Interval t2_bound;    // enumeration bound used
    std::uint64_t candidates = 0;
};

/// Decides whether I is principal in a complex cubic field, given a unit
/// of infinite order with real image theta > 1 (a fundamental unit keeps
/// the search small, any unit keeps it correct).
///
/// A generator g can be moved by a power of the unit so that
/// t = log|g_r| - log(N)/3 lies in [-R/2, R/2], R = log theta.  Then
/// T2(g) = N^(2/3) (e^(2t) + 2e^(-t)) <= N^(2/3) (theta + 2 theta^(-1/2)).
/// Every lattice point of I below that bound is tested for |N(g)| = N(I).
inline PrincipalityResult is_principal(const CubicField& K, const FundamentalUnit& fu, const Ideal& I,
                                       std::uint64_t node_limit = 200'000'000ULL)
{
    return with_precision_ladder(
        [&](mpfr_prec_t) {
            const Order& O = K.order();
            PrincipalityResult res;
            Integer N = I.norm();
            if (N == 1) {
                res.verdict = Principality::principal;
                res.generator = O.one();
                return res;
            }
            OrderGeometry geo(O, EmbeddingData::of_cubic(K.poly()));
            if (geo.embeddings().place_count() != 2)
                fail(Errc::precondition, "principal-signature", "is_principal needs a cubic field with one real embedding");
            Interval theta = fu.regulator.exp();
            Interval bound = Interval(N).sqr().root(3) * (theta + Interval(2L) / theta.sqrt()) * Interval(Rational(101, 100));
            res.t2_bound = bound;
            std::optional<IntVec> gen;
            auto status = enumerate_short(
                I.hnf, geo.t2_map(), bound,
                [&](const IntVec& x) {
                    ++res.candidates;
                    if (abs(O.norm(x)) == N) {
                        gen = x;
                        return false;
                    }
                    return true;
                },
                node_limit);
            if (gen) {
                ensure(principal_ideal(O, *gen) == I, "principal-generator", "generator of the right norm spans a different ideal");
                res.verdict = Principality::principal;
                res.generator = *gen;
            } else {
                res.verdict = status == EnumStatus::complete ? Principality::non_principal : Principality::inconclusive;
            }
            return res;
        },
        std::max<mpfr_prec_t>(current_precision(), fu.bits));
}

/// |det| of the 2x2 matrix of 2 log|.| at the first two complex places of
/// KF (or log|.| at two real places of a totally real cubic).  A strictly
/// positive enclosure certifies that the two units are independent.
inline Interval regulator_of_pair(const GaloisCubic& G, const Elem& e1, const Elem& e2)
{
    EmbeddingData E = G.is_compositum() ? EmbeddingData::of_compositum(G.K().poly(), G.d()) : EmbeddingData::of_cubic(G.K().poly());
    ensure(E.place_count() == 3, "regulator-places", "three places expected");
    Interval l00 = E.log_abs(0, e1), l01 = E.log_abs(1, e1);
    Interval l10 = E.log_abs(0, e2), l11 = E.log_abs(1, e2);
    return (l00 * l11 - l01 * l10).abs();
}

/// regulator_of_pair, raising precision until the enclosure excludes 0;
/// throws Errc::precision when the units look dependent at every precision.
inline Interval certify_independent(const GaloisCubic& G, const Elem& e1, const Elem& e2, mpfr_prec_t ceiling = 1024)
{
    return with_precision_ladder(
        [&](mpfr_prec_t) {
            Interval r = regulator_of_pair(G, e1, e2);
            if (!r.positive())
                fail(Errc::precision, "regulator-zero", "regulator enclosure contains zero");
            return r;
        },
        current_precision(), ceiling);
}

} // namespace uchida::nf

#endif
