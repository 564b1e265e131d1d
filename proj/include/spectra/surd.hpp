#pragma once

#include "spectra/interval.hpp"

#include <compare>
#include <string>
#include <vector>

namespace spectra {

// Exact element x + y*sqrt(D) of a real quadratic field, exposed in the
// canonical form (a + b*sqrt(D))/c with c > 0 and gcd(a, b, c) = 1.
//
// D is reduced by removing square factors found by trial division and by a
// perfect-square test on the cofactor. Equality and ordering never rely on
// D being fully square-free: two surds with different D are compared
// through D1*D2 being a square or by interval refinement.
class QuadraticSurd {
public:
    QuadraticSurd() = default;
    QuadraticSurd(long v) : x_(v) {}                                // NOLINT
    QuadraticSurd(const Integer& v) : x_(v) {}                      // NOLINT
    QuadraticSurd(const Rational& v) : x_(v) {}                     // NOLINT
    QuadraticSurd(const Rational& x, const Rational& y, const Integer& D);

    // (a + b*sqrt(D))/c
    static QuadraticSurd from_canonical(const Integer& a, const Integer& b, const Integer& c,
                                        const Integer& D);
    static QuadraticSurd sqrt_of(const Integer& n);

    const Rational& rational_part() const { return x_; }
    const Rational& radical_coeff() const { return y_; }
    const Integer& discriminant() const { return D_; }
    bool is_rational() const { return y_ == 0; }

    Integer a() const;
    Integer b() const;
    Integer c() const;

    int sign() const;
    Interval enclose(mpfr_prec_t prec) const;
    double to_double() const;
    std::string to_string() const;  // e.g. "(-1+sqrt(5))/2"
    std::string decimal(int digits = 40) const;

    QuadraticSurd conjugate() const;
    QuadraticSurd operator-() const;
    friend QuadraticSurd operator+(const QuadraticSurd& u, const QuadraticSurd& v);
    friend QuadraticSurd operator-(const QuadraticSurd& u, const QuadraticSurd& v);
    friend QuadraticSurd operator*(const QuadraticSurd& u, const QuadraticSurd& v);
    friend QuadraticSurd operator/(const QuadraticSurd& u, const QuadraticSurd& v);

    friend bool operator==(const QuadraticSurd& u, const QuadraticSurd& v);
    friend std::strong_ordering operator<=>(const QuadraticSurd& u, const QuadraticSurd& v);

private:
    void normalize();

    Rational x_{0};
    Rational y_{0};
    Integer D_{0};
};

// Returns {s, f} with n = s^2 * f, removing square factors of primes below the
// trial bound and a square cofactor when present.
std::pair<Integer, Integer> split_square(const Integer& n);

// Rational plus a combination of square roots, possibly from different
// fields. Arises as the value of a_i + right tail + left tail when the two
// tails have different discriminants.
class SurdSum {
public:
    struct Term {
        Rational coeff;
        Integer D;
    };

    SurdSum() = default;
    SurdSum(const QuadraticSurd& s);  // NOLINT
    SurdSum(const Rational& q) : rational_(q) {}  // NOLINT

    const Rational& rational_part() const { return rational_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool single_field() const { return terms_.size() <= 1; }
    QuadraticSurd as_surd() const;  // throws unless single_field()

    bool is_zero() const { return rational_ == 0 && terms_.empty(); }
    int sign() const;
    Interval enclose(mpfr_prec_t prec) const;
    double to_double() const;
    std::string to_string() const;
    std::string decimal(int digits = 40) const;

    SurdSum operator-() const;
    friend SurdSum operator+(const SurdSum& u, const SurdSum& v);
    friend SurdSum operator-(const SurdSum& u, const SurdSum& v);

    friend bool operator==(const SurdSum& u, const SurdSum& v) { return (u - v).is_zero(); }
    friend std::strong_ordering operator<=>(const SurdSum& u, const SurdSum& v);

private:
    void add_term(const Rational& coeff, const Integer& D);

    Rational rational_{0};
    std::vector<Term> terms_;
};

}  // namespace spectra
