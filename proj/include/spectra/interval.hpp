#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace spectra {

using Integer = mpz_class;
using Rational = mpq_class;

// Closed interval with MPFR endpoints. Every operation rounds the lower
// endpoint down and the upper endpoint up, so the result always encloses
// the exact image of the operands.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 128);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(const Interval& o);
    Interval& operator=(Interval&& o) noexcept;
    ~Interval();

    static Interval from_rational(const Rational& q, mpfr_prec_t prec);
    static Interval from_integer(const Integer& z, mpfr_prec_t prec);
    static Interval from_double(double x, mpfr_prec_t prec);
    static Interval hull(const Rational& a, const Rational& b, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return prec_; }
    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }

    double lo_double() const;  // rounded down
    double hi_double() const;  // rounded up
    double mid_double() const;
    double width_double() const;

    // Exact rational values of the endpoints.
    Rational lo_rational() const;
    Rational hi_rational() const;

    bool contains(const Rational& q) const;
    bool contains_zero() const;
    bool positive() const;  // lo > 0
    bool negative() const;  // hi < 0
    bool certainly_less(const Interval& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
    bool disjoint(const Interval& o) const;

    Interval operator-() const;
    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b);

    friend Interval sqrt(const Interval& a);
    friend Interval log(const Interval& a);
    friend Interval exp(const Interval& a);
    friend Interval square(const Interval& a);
    friend Interval pow(const Interval& a, const Interval& b);  // a > 0
    friend Interval join(const Interval& a, const Interval& b);

    std::string str(int digits = 20) const;

private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

Interval interval_phi(mpfr_prec_t prec);

// Decimal rendering of an MPFR value with the given number of significant digits.
std::string mpfr_to_string(const mpfr_t x, int digits);

}  // namespace spectra
