#include "spectra/surd.hpp"

#include <stdexcept>

namespace spectra {

namespace {

constexpr unsigned long kTrialBound = 1000;
constexpr mpfr_prec_t kMaxRefinePrec = 1 << 22;

bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Integer isqrt(const Integer& n) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// If D1*D2 is a square k^2, then sqrt(D2) = (k/D1) sqrt(D1).
bool field_ratio(const Integer& D1, const Integer& D2, Rational& ratio) {
    Integer prod = D1 * D2;
    if (!is_square(prod)) return false;
    ratio = Rational(isqrt(prod), D1);
    ratio.canonicalize();
    return true;
}

template <typename F>
int refine_sign(F&& enclose) {
    for (mpfr_prec_t prec = 128; prec <= kMaxRefinePrec; prec *= 2) {
        Interval iv = enclose(prec);
        if (iv.positive()) return 1;
        if (iv.negative()) return -1;
    }
    throw std::runtime_error("sign refinement did not terminate");
}

}  // namespace

std::pair<Integer, Integer> split_square(const Integer& n) {
    if (n < 0) throw std::domain_error("split_square of a negative integer");
    if (n == 0) return {0, 0};
    Integer s = 1;
    Integer f = n;
    for (unsigned long d = 2; d <= kTrialBound; ++d) {
        unsigned long dd = d * d;
        if (dd > f) break;
        while (mpz_divisible_ui_p(f.get_mpz_t(), dd)) {
            f /= dd;
            s *= d;
        }
    }
    if (is_square(f)) {
        s *= isqrt(f);
        f = 1;
    }
    return {s, f};
}

QuadraticSurd::QuadraticSurd(const Rational& x, const Rational& y, const Integer& D) : x_(x), y_(y), D_(D) {
    normalize();
}

QuadraticSurd QuadraticSurd::from_canonical(const Integer& a, const Integer& b, const Integer& c,
                                            const Integer& D) {
    if (c <= 0) throw std::domain_error("surd denominator must be positive");
    Rational x(a, c), y(b, c);
    x.canonicalize();
    y.canonicalize();
    return QuadraticSurd(x, y, D);
}

QuadraticSurd QuadraticSurd::sqrt_of(const Integer& n) { return QuadraticSurd(0, 1, n); }

void QuadraticSurd::normalize() {
    if (D_ < 0) throw std::domain_error("negative discriminant");
    if (y_ == 0 || D_ == 0) {
        y_ = 0;
        D_ = 0;
        return;
    }
    auto [s, f] = split_square(D_);
    y_ *= s;
    if (f == 1) {
        x_ += y_;
        y_ = 0;
        D_ = 0;
    } else {
        D_ = f;
    }
}

Integer QuadraticSurd::c() const {
    Integer l;
    mpz_lcm(l.get_mpz_t(), x_.get_den_mpz_t(), y_.get_den_mpz_t());
    return l;
}

Integer QuadraticSurd::a() const {
    Rational t = x_ * Rational(c());
    return t.get_num();
}

Integer QuadraticSurd::b() const {
    Rational t = y_ * Rational(c());
    return t.get_num();
}

int QuadraticSurd::sign() const {
    int sx = sgn(x_);
    int sy = sgn(y_);
    if (sy == 0) return sx;
    if (sx == 0 || sx == sy) return sy;
    // x and y*sqrt(D) have opposite signs; compare x^2 with y^2 D.
    int c = cmp(x_ * x_, y_ * y_ * Rational(D_));
    return c > 0 ? sx : sy;
}

Interval QuadraticSurd::enclose(mpfr_prec_t prec) const {
    Interval r = Interval::from_rational(x_, prec);
    if (y_ != 0) {
        r = r + Interval::from_rational(y_, prec) * sqrt(Interval::from_integer(D_, prec));
    }
    return r;
}

double QuadraticSurd::to_double() const { return enclose(128).mid_double(); }

std::string QuadraticSurd::to_string() const {
    Integer A = a(), B = b(), C = c();
    std::string num;
    if (B == 0) {
        num = A.get_str();
        return C == 1 ? num : num + "/" + C.get_str();
    }
    if (A != 0) num = A.get_str();
    std::string rad = "sqrt(" + D_.get_str() + ")";
    if (B == 1) {
        num += (A != 0 ? "+" : "") + rad;
    } else if (B == -1) {
        num += "-" + rad;
    } else {
        num += (B > 0 && A != 0 ? "+" : "") + B.get_str() + "*" + rad;
    }
    if (C == 1) return num;
    return "(" + num + ")/" + C.get_str();
}

std::string QuadraticSurd::decimal(int digits) const {
    Interval iv = enclose(static_cast<mpfr_prec_t>(digits * 3.33) + 64);
    return mpfr_to_string(iv.lo(), digits);
}

QuadraticSurd QuadraticSurd::conjugate() const {
    QuadraticSurd r = *this;
    r.y_ = -r.y_;
    return r;
}

QuadraticSurd QuadraticSurd::operator-() const {
    QuadraticSurd r = *this;
    r.x_ = -r.x_;
    r.y_ = -r.y_;
    return r;
}

namespace {

// Rewrites v in the field of u when possible.
bool align(const QuadraticSurd& u, const QuadraticSurd& v, Rational& vy, Integer& D) {
    if (v.is_rational()) {
        vy = 0;
        D = u.discriminant();
        return true;
    }
    if (u.is_rational() || u.discriminant() == v.discriminant()) {
        vy = v.radical_coeff();
        D = v.discriminant();
        return true;
    }
    Rational ratio;
    if (!field_ratio(u.discriminant(), v.discriminant(), ratio)) return false;
    vy = v.radical_coeff() * ratio;
    D = u.discriminant();
    return true;
}

}  // namespace

QuadraticSurd operator+(const QuadraticSurd& u, const QuadraticSurd& v) {
    Rational vy;
    Integer D;
    if (!align(u, v, vy, D)) throw std::domain_error("sum of surds from different quadratic fields");
    Rational uy = u.is_rational() ? Rational(0) : u.y_;
    return QuadraticSurd(u.x_ + v.x_, uy + vy, D);
}

QuadraticSurd operator-(const QuadraticSurd& u, const QuadraticSurd& v) { return u + (-v); }

QuadraticSurd operator*(const QuadraticSurd& u, const QuadraticSurd& v) {
    Rational vy;
    Integer D;
    if (!align(u, v, vy, D)) throw std::domain_error("product of surds from different quadratic fields");
    const Rational& uy = u.y_;
    Rational x = u.x_ * v.x_ + uy * vy * Rational(D);
    Rational y = u.x_ * vy + uy * v.x_;
    return QuadraticSurd(x, y, D);
}

QuadraticSurd operator/(const QuadraticSurd& u, const QuadraticSurd& v) {
    if (v.sign() == 0) throw std::domain_error("division by zero surd");
    Rational norm = v.x_ * v.x_ - v.y_ * v.y_ * Rational(v.D_);
    QuadraticSurd inv(v.x_ / norm, -v.y_ / norm, v.D_);
    return u * inv;
}

bool operator==(const QuadraticSurd& u, const QuadraticSurd& v) {
    if (u.x_ == v.x_ && u.y_ == v.y_ && (u.y_ == 0 || u.D_ == v.D_)) return true;
    Rational vy;
    Integer D;
    if (align(u, v, vy, D)) return u.x_ == v.x_ && u.y_ == vy;
    // 1, sqrt(D1), sqrt(D2) are linearly independent here.
    return false;
}

std::strong_ordering operator<=>(const QuadraticSurd& u, const QuadraticSurd& v) {
    int s;
    Rational vy;
    Integer D;
    if (align(u, v, vy, D)) {
        s = QuadraticSurd(u.x_ - v.x_, u.y_ - vy, D).sign();
    } else {
        s = refine_sign([&](mpfr_prec_t p) { return u.enclose(p) - v.enclose(p); });
    }
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

SurdSum::SurdSum(const QuadraticSurd& s) : rational_(s.rational_part()) {
    if (!s.is_rational()) terms_.push_back({s.radical_coeff(), s.discriminant()});
}

void SurdSum::add_term(const Rational& coeff, const Integer& D) {
    if (coeff == 0) return;
    for (size_t i = 0; i < terms_.size(); ++i) {
        Rational ratio;
        if (terms_[i].D == D || field_ratio(terms_[i].D, D, ratio)) {
            if (terms_[i].D == D) ratio = 1;
            terms_[i].coeff += coeff * ratio;
            if (terms_[i].coeff == 0) terms_.erase(terms_.begin() + static_cast<long>(i));
            return;
        }
    }
    terms_.push_back({coeff, D});
}

QuadraticSurd SurdSum::as_surd() const {
    if (terms_.empty()) return QuadraticSurd(rational_);
    if (terms_.size() > 1) throw std::domain_error("value does not lie in a single quadratic field");
    return QuadraticSurd(rational_, terms_[0].coeff, terms_[0].D);
}

int SurdSum::sign() const {
    if (is_zero()) return 0;
    if (single_field()) return as_surd().sign();
    return refine_sign([&](mpfr_prec_t p) { return enclose(p); });
}

Interval SurdSum::enclose(mpfr_prec_t prec) const {
    Interval r = Interval::from_rational(rational_, prec);
    for (const auto& t : terms_) {
        r = r + Interval::from_rational(t.coeff, prec) * sqrt(Interval::from_integer(t.D, prec));
    }
    return r;
}

double SurdSum::to_double() const { return enclose(128).mid_double(); }

std::string SurdSum::to_string() const {
    if (single_field()) return as_surd().to_string();
    std::string s = rational_.get_str();
    for (const auto& t : terms_) {
        s += (t.coeff >= 0 ? "+" : "") + t.coeff.get_str() + "*sqrt(" + t.D.get_str() + ")";
    }
    return s;
}

std::string SurdSum::decimal(int digits) const {
    Interval iv = enclose(static_cast<mpfr_prec_t>(digits * 3.33) + 64);
    return mpfr_to_string(iv.lo(), digits);
}

SurdSum SurdSum::operator-() const {
    SurdSum r = *this;
    r.rational_ = -r.rational_;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

SurdSum operator+(const SurdSum& u, const SurdSum& v) {
    SurdSum r = u;
    r.rational_ += v.rational_;
    for (const auto& t : v.terms_) r.add_term(t.coeff, t.D);
    return r;
}

SurdSum operator-(const SurdSum& u, const SurdSum& v) { return u + (-v); }

std::strong_ordering operator<=>(const SurdSum& u, const SurdSum& v) {
    int s = (u - v).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace spectra
