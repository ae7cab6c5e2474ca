#ifndef UCHIDA_NF_LATTICE_HPP
#define UCHIDA_NF_LATTICE_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "uchida/nf/embedding.hpp"

namespace uchida::nf {

using RealRow = std::vector<long double>;
using RealMat = std::vector<RealRow>;

/// Images of integer coordinate vectors under a fixed real linear map,
/// kept in MPFR so exact integer combinations of huge vectors stay accurate.
class LinearImage {
public:
    LinearImage() = default;
    /// columns[j] = image of the j-th coordinate vector.
    explicit LinearImage(std::vector<std::vector<Interval>> columns) : cols_(std::move(columns)) {}

    std::size_t dim() const { return cols_.size(); }
    std::size_t rank_space() const { return cols_.empty() ? 0 : cols_[0].size(); }

    std::vector<Interval> operator()(const IntVec& x) const
    {
        std::vector<Interval> out(rank_space(), Interval(0L));
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j] != 0) {
                Interval c(x[j]);
                for (std::size_t i = 0; i < out.size(); ++i)
                    out[i] += cols_[j][i] * c;
            }
        return out;
    }

    Interval norm2(const IntVec& x) const
    {
        Interval s(0L);
        for (auto& v : (*this)(x))
            s += v.sqr();
        return s;
    }

private:
    std::vector<std::vector<Interval>> cols_;
};

namespace detail {

inline RealMat gram_ld(const std::vector<std::vector<Interval>>& imgs)
{
    const std::size_t n = imgs.size();
    RealMat G(n, RealRow(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            Interval s(0L);
            for (std::size_t k = 0; k < imgs[i].size(); ++k)
                s += imgs[i][k] * imgs[j][k];
            G[i][j] = G[j][i] = s.mid_ld();
        }
    return G;
}

} // namespace detail

/// LLL reduction (delta = 0.99) of the lattice spanned by the columns of B.
/// The integer basis is updated exactly; Gram-Schmidt data is recomputed
/// from MPFR images after every change, which is cheap in dimension <= 6.
inline IntMatrix lll_reduce(const IntMatrix& B, const LinearImage& phi)
{
    const std::size_t n = B.cols();
    std::vector<IntVec> b(n);
    for (std::size_t j = 0; j < n; ++j)
        b[j] = B.column(j);
    if (n <= 1)
        return B;
    const long double delta = 0.99L;

    std::vector<std::vector<Interval>> img(n);
    for (std::size_t j = 0; j < n; ++j)
        img[j] = phi(b[j]);

    auto gso = [&](RealMat& mu, RealRow& bb) {
        RealMat G = detail::gram_ld(img);
        mu.assign(n, RealRow(n, 0));
        bb.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                long double s = G[i][j];
                for (std::size_t k = 0; k < j; ++k)
                    s -= mu[j][k] * mu[i][k] * bb[k];
                mu[i][j] = bb[j] != 0 ? s / bb[j] : 0;
            }
            long double s = G[i][i];
            for (std::size_t k = 0; k < i; ++k)
                s -= mu[i][k] * mu[i][k] * bb[k];
            bb[i] = s;
        }
    };

    RealMat mu;
    RealRow bb;
    gso(mu, bb);
    std::size_t k = 1;
    long guard = 0;
    while (k < n) {
        if (++guard > 100000)
            fail(Errc::precision, "lll-stall", "LLL did not terminate");
        for (std::size_t j = k; j-- > 0;) {
            long double q = std::nearbyint(mu[k][j]);
            if (q != 0) {
                Integer qi;
                mpfr_t t;
                mpfr_init2(t, 64);
                mpfr_set_ld(t, q, MPFR_RNDN);
                mpfr_get_z(qi.get_mpz_t(), t, MPFR_RNDN);
                mpfr_clear(t);
                for (std::size_t i = 0; i < b[k].size(); ++i)
                    b[k][i] -= qi * b[j][i];
                img[k] = phi(b[k]);
                gso(mu, bb);
            }
        }
        if (bb[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bb[k - 1]) {
            std::swap(b[k], b[k - 1]);
            std::swap(img[k], img[k - 1]);
            gso(mu, bb);
            k = std::max<std::size_t>(k - 1, 1);
        } else {
            ++k;
        }
    }
    return IntMatrix::from_columns(b, B.rows());
}

enum class EnumStatus { complete, stopped, node_limit };

/// Fincke-Pohst: calls visit(x) for every nonzero integer x, one of each
/// pair +-x, with x^T G x <= bound.  visit returns false to stop early.
/// Intended for an LLL-reduced Gram matrix; callers pass a bound that
/// already carries their safety margin.
inline EnumStatus fincke_pohst(const RealMat& G, long double bound, const std::function<bool(const std::vector<long>&)>& visit,
                               std::uint64_t node_limit = 200'000'000ULL)
{
    const std::size_t n = G.size();
    // q[i][i] and q[i][j] (j > i) with x^T G x = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    RealMat q = G;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] = q[i][j] / q[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l)
                q[k][l] -= q[k][i] * q[i][l];
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!(q[i][i] > 0))
            fail(Errc::precision, "fp-cholesky", "Gram matrix not numerically positive definite");

    std::vector<long> x(n, 0);
    std::vector<long double> rem(n + 1, 0);
    rem[n] = bound;
    std::uint64_t nodes = 0;
    bool stop = false;
    bool limit = false;

    std::function<void(std::size_t, bool)> rec = [&](std::size_t lvl, bool upper_zero) {
        long double c = 0;
        for (std::size_t j = lvl + 1; j < n; ++j)
            c -= q[lvl][j] * static_cast<long double>(x[j]);
        long double r2 = rem[lvl + 1] / q[lvl][lvl];
        if (r2 < 0)
            return;
        long double r = std::sqrt(r2);
        long double lo_f = std::ceil(c - r - 1e-12L), hi_f = std::floor(c + r + 1e-12L);
        if (hi_f - lo_f > 1e12L)
            fail(Errc::precision, "fp-range", "enumeration range too large");
        long lo = static_cast<long>(lo_f), hi = static_cast<long>(hi_f);
        if (upper_zero)
            lo = std::max(lo, 0L);
        for (long v = lo; v <= hi && !stop; ++v) {
            if (++nodes > node_limit) {
                limit = stop = true;
                return;
            }
            long double t = static_cast<long double>(v) - c;
            long double left = rem[lvl + 1] - q[lvl][lvl] * t * t;
            if (left < 0)
                continue;
            x[lvl] = v;
            bool zero_here = upper_zero && v == 0;
            if (lvl == 0) {
                if (!zero_here && !visit(x))
                    stop = true;
            } else {
                rem[lvl] = left;
                rec(lvl - 1, zero_here);
            }
        }
        x[lvl] = 0;
    };
    if (n > 0)
        rec(n - 1, true);
    if (limit)
        return EnumStatus::node_limit;
    return stop ? EnumStatus::stopped : EnumStatus::complete;
}

/// Enumerates the nonzero vectors (up to sign) of the lattice with columns
/// B whose image has squared length <= bound (an upper bound).  visit gets
/// ambient integer coordinates.  The bound is inflated by a relative 1e-9
/// to absorb floating error of the enumeration itself.
inline EnumStatus enumerate_short(const IntMatrix& B, const LinearImage& phi, const Interval& bound,
                                  const std::function<bool(const IntVec&)>& visit, std::uint64_t node_limit = 200'000'000ULL)
{
    IntMatrix R = lll_reduce(B, phi);
    const std::size_t n = R.cols();
    std::vector<std::vector<Interval>> img(n);
    for (std::size_t j = 0; j < n; ++j)
        img[j] = phi(R.column(j));
    RealMat G = detail::gram_ld(img);
    long double bd = static_cast<long double>(bound.upper());
    bd = bd * (1 + 1e-9L) + 1e-9L;
    return fincke_pohst(
        G, bd,
        [&](const std::vector<long>& c) {
            IntVec x(R.rows(), Integer(0));
            for (std::size_t j = 0; j < n; ++j)
                if (c[j] != 0)
                    for (std::size_t i = 0; i < R.rows(); ++i)
                        x[i] += R(i, j) * c[j];
            return visit(x);
        },
        node_limit);
}

} // namespace uchida::nf

#endif
