#ifndef UCHIDA_NF_INTERVAL_HPP
#define UCHIDA_NF_INTERVAL_HPP

#include <mpfr.h>

#include <cstdlib>
#include <string>
#include <utility>

#include "uchida/arith/integer.hpp"

namespace uchida::nf {

using arith::Integer;
using arith::Rational;

namespace detail {
inline mpfr_prec_t& working_precision()
{
    thread_local mpfr_prec_t prec = 0;
    return prec;
}
} // namespace detail

/// Starting precision in bits: UCHIDA_PRECISION if set, else 64.
inline mpfr_prec_t default_precision()
{
    static const mpfr_prec_t p = [] {
        const char* env = std::getenv("UCHIDA_PRECISION");
        long v = env ? std::strtol(env, nullptr, 10) : 0;
        return static_cast<mpfr_prec_t>(v >= 32 && v <= 65536 ? v : 64);
    }();
    return p;
}

inline mpfr_prec_t current_precision()
{
    mpfr_prec_t p = detail::working_precision();
    return p ? p : default_precision();
}

/// Sets the working precision of the calling thread for its lifetime.
class PrecisionScope {
public:
    explicit PrecisionScope(mpfr_prec_t bits) : saved_(detail::working_precision()) { detail::working_precision() = bits; }
    ~PrecisionScope() { detail::working_precision() = saved_; }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    mpfr_prec_t saved_;
};

/// Closed real interval [lo, hi] with MPFR endpoints and outward rounding.
class Interval {
public:
    Interval() : Interval(0L) {}

    Interval(long v)
    {
        init();
        mpfr_set_si(lo_, v, MPFR_RNDD);
        mpfr_set_si(hi_, v, MPFR_RNDU);
    }

    explicit Interval(const Integer& z)
    {
        init();
        mpfr_set_z(lo_, z.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(hi_, z.get_mpz_t(), MPFR_RNDU);
    }

    explicit Interval(const Rational& q)
    {
        init();
        mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
    }

    Interval(const Interval& o)
    {
        mpfr_init2(lo_, mpfr_get_prec(o.lo_));
        mpfr_init2(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }

    Interval(Interval&& o) noexcept : Interval(0L) { swap(o); }

    Interval& operator=(Interval o) noexcept
    {
        swap(o);
        return *this;
    }

    ~Interval()
    {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    void swap(Interval& o) noexcept
    {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }

    static Interval hull(const Interval& a, const Interval& b)
    {
        Interval r;
        mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    /// [c - r, c + r]
    static Interval ball(const Interval& c, const Interval& r)
    {
        Interval out;
        mpfr_sub(out.lo_, c.lo_, r.hi_, MPFR_RNDD);
        mpfr_add(out.hi_, c.hi_, r.hi_, MPFR_RNDU);
        return out;
    }

    static Interval pi()
    {
        Interval r;
        mpfr_const_pi(r.lo_, MPFR_RNDD);
        mpfr_const_pi(r.hi_, MPFR_RNDU);
        return r;
    }

    double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    long double mid_ld() const
    {
        Interval m = midpoint();
        return mpfr_get_ld(m.lo_, MPFR_RNDN);
    }

    Interval midpoint() const
    {
        Interval r;
        mpfr_add(r.lo_, lo_, hi_, MPFR_RNDN);
        mpfr_div_2ui(r.lo_, r.lo_, 1, MPFR_RNDN);
        mpfr_set(r.hi_, r.lo_, MPFR_RNDN);
        return r;
    }

    Interval width() const
    {
        Interval r;
        mpfr_sub(r.lo_, hi_, lo_, MPFR_RNDD);
        mpfr_sub(r.hi_, hi_, lo_, MPFR_RNDU);
        return r;
    }

    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
    bool positive() const { return mpfr_sgn(lo_) > 0; }
    bool negative() const { return mpfr_sgn(hi_) < 0; }
    bool finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }
    /// Certainly a < b.
    friend bool certainly_less(const Interval& a, const Interval& b) { return mpfr_less_p(a.hi_, b.lo_); }
    bool overlaps(const Interval& o) const { return !certainly_less(*this, o) && !certainly_less(o, *this); }
    bool contains(const Interval& o) const { return mpfr_lessequal_p(lo_, o.lo_) && mpfr_lessequal_p(o.hi_, hi_); }

    /// Relative width |hi - lo| / max(1, |mid|) as a double, for precision control.
    double rel_width() const
    {
        return (width() / (abs() + Interval(1L))).upper();
    }

    /// Floor of the upper end, as an Integer (used to bound searches).
    Integer upper_floor() const
    {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), hi_, MPFR_RNDD);
        return z;
    }
    Integer lower_ceil() const
    {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), lo_, MPFR_RNDU);
        return z;
    }

    friend Interval operator+(const Interval& a, const Interval& b)
    {
        Interval r;
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a, const Interval& b)
    {
        Interval r;
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }
    Interval operator-() const
    {
        Interval r;
        mpfr_neg(r.lo_, hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
        return r;
    }
    friend Interval operator*(const Interval& a, const Interval& b)
    {
        // min/max over the four endpoint products
        Interval r;
        mpfr_t t;
        mpfr_init2(t, current_precision());
        bool first = true;
        for (auto x : {a.lo_, a.hi_})
            for (auto y : {b.lo_, b.hi_}) {
                mpfr_mul(t, x, y, MPFR_RNDD);
                if (first || mpfr_less_p(t, r.lo_))
                    mpfr_set(r.lo_, t, MPFR_RNDD);
                mpfr_mul(t, x, y, MPFR_RNDU);
                if (first || mpfr_greater_p(t, r.hi_))
                    mpfr_set(r.hi_, t, MPFR_RNDU);
                first = false;
            }
        mpfr_clear(t);
        return r;
    }
    friend Interval operator/(const Interval& a, const Interval& b)
    {
        if (b.contains_zero())
            fail(Errc::precision, "interval-div-zero", "divisor interval contains zero");
        Interval inv;
        mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
        mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
        return a * inv;
    }
    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }

    Interval sqr() const
    {
        Interval a = abs();
        Interval r;
        mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }

    Interval abs() const
    {
        if (mpfr_sgn(lo_) >= 0)
            return *this;
        if (mpfr_sgn(hi_) <= 0)
            return -*this;
        Interval r;
        mpfr_set_zero(r.lo_, 1);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
        if (mpfr_greater_p(hi_, r.hi_))
            mpfr_set(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    Interval sqrt() const
    {
        if (mpfr_sgn(hi_) < 0)
            fail(Errc::precision, "interval-sqrt", "sqrt of a negative interval");
        Interval r;
        if (mpfr_sgn(lo_) <= 0)
            mpfr_set_zero(r.lo_, 1);
        else
            mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
        mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    Interval log() const
    {
        if (mpfr_sgn(lo_) <= 0)
            fail(Errc::precision, "interval-log", "log of an interval reaching zero");
        Interval r;
        mpfr_log(r.lo_, lo_, MPFR_RNDD);
        mpfr_log(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    Interval exp() const
    {
        Interval r;
        mpfr_exp(r.lo_, lo_, MPFR_RNDD);
        mpfr_exp(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    /// x^(1/k) for x >= 0.
    Interval root(unsigned long k) const
    {
        if (mpfr_sgn(lo_) < 0)
            fail(Errc::precision, "interval-root", "root of a negative interval");
        Interval r;
        mpfr_rootn_ui(r.lo_, lo_, k, MPFR_RNDD);
        mpfr_rootn_ui(r.hi_, hi_, k, MPFR_RNDU);
        return r;
    }

    std::string to_string(int digits = 12) const
    {
        char buf[256];
        mpfr_snprintf(buf, sizeof buf, "[%.*RDe, %.*RUe]", digits, lo_, digits, hi_);
        return buf;
    }

    /// Decimal string of the midpoint with the given significant digits.
    std::string mid_string(int digits = 12) const
    {
        Interval m = midpoint();
        char buf[256];
        mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, m.lo_);
        return buf;
    }

private:
    void init()
    {
        mpfr_init2(lo_, current_precision());
        mpfr_init2(hi_, current_precision());
    }

    mpfr_t lo_, hi_;
};

/// Complex rectangle.
struct CInterval {
    Interval re, im;

    friend CInterval operator+(const CInterval& a, const CInterval& b) { return {a.re + b.re, a.im + b.im}; }
    friend CInterval operator-(const CInterval& a, const CInterval& b) { return {a.re - b.re, a.im - b.im}; }
    friend CInterval operator*(const CInterval& a, const CInterval& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CInterval operator*(const CInterval& a, const Interval& s) { return {a.re * s, a.im * s}; }
    CInterval conj() const { return {re, -im}; }
    Interval abs2() const { return re.sqr() + im.sqr(); }
    Interval abs() const { return abs2().sqrt(); }
    friend CInterval operator/(const CInterval& a, const CInterval& b)
    {
        Interval n = b.abs2();
        CInterval t = a * b.conj();
        return {t.re / n, t.im / n};
    }
    CInterval midpoint() const { return {re.midpoint(), im.midpoint()}; }
};

} // namespace uchida::nf

#endif
