#include "spectra/continued_fraction.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

namespace spectra {

namespace {

// Convergents of [0; w]; the empty word gives (0, 1, 1, 0).
ContinuantPair raw_continuants(const Word& w) {
    Integer p = 0, q = 1, pp = 1, qp = 0;
    for (Letter a : w.letters) {
        Integer np = a * p + pp;
        Integer nq = a * q + qp;
        pp = std::move(p);
        qp = std::move(q);
        p = std::move(np);
        q = std::move(nq);
    }
    return {p, q, pp, qp};
}

Integer floor_surd(const QuadraticSurd& s) {
    Interval iv = s.enclose(256);
    Integer f;
    mpfr_get_z(f.get_mpz_t(), iv.lo(), MPFR_RNDD);
    while ((s - QuadraticSurd(f)).sign() < 0) --f;
    while ((s - QuadraticSurd(Integer(f + 1))).sign() >= 0) ++f;
    return f;
}

Rational dyadic(const Integer& num, unsigned bits) {
    Rational r(num);
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), bits);
    return r;
}

Rational scale_dyadic(unsigned bits) {
    Rational r(1);
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), bits);
    return r;
}

}  // namespace

ContinuantPair continuants(const Word& w) {
    if (w.empty()) throw std::invalid_argument("empty-word");
    return raw_continuants(w);
}

Integer continuant(const Word& w) { return raw_continuants(w).q; }

Rational eval_finite(const Word& w, const Integer& a0) {
    ContinuantPair c = continuants(w);
    Rational r(c.p, c.q);
    r.canonicalize();
    return r + Rational(a0);
}

Rational eval_with_tail(const Word& w, const Rational& y) {
    ContinuantPair c = raw_continuants(w);
    Rational r = (Rational(c.p) + y * Rational(c.p_prev)) / (Rational(c.q) + y * Rational(c.q_prev));
    return r;
}

QuadraticSurd eval_periodic(const Word& preperiod, const Word& period) {
    if (period.empty()) throw std::invalid_argument("empty period");
    ContinuantPair c = raw_continuants(period);
    // x = (p + x p')/(q + x q')  <=>  q' x^2 + (q - p') x - p = 0
    Integer B = c.q - c.p_prev;
    Integer disc = B * B + 4 * c.p * c.q_prev;
    Rational two_qp(2 * c.q_prev);
    QuadraticSurd x(Rational(-B) / two_qp, Rational(1) / two_qp, disc);
    if (preperiod.empty()) return x;
    ContinuantPair m = raw_continuants(preperiod);
    return (QuadraticSurd(m.p) + x * QuadraticSurd(m.p_prev)) /
           (QuadraticSurd(m.q) + x * QuadraticSurd(m.q_prev));
}

int surd_compare(const QuadraticSurd& x, const QuadraticSurd& y) {
    auto c = x <=> y;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::pair<Rational, Rational> cylinder_interval(const Word& w) {
    ContinuantPair c = continuants(w);
    Rational a(c.p, c.q), b(c.p + c.p_prev, c.q + c.q_prev);
    a.canonicalize();
    b.canonicalize();
    if (b < a) std::swap(a, b);
    return {a, b};
}

Rational sizes(const Word& w) {
    ContinuantPair c = continuants(w);
    return Rational(1, c.q * (c.q + c.q_prev));
}

Interval log_inverse_size(const Word& w, mpfr_prec_t prec) {
    ContinuantPair c = continuants(w);
    return log(Interval::from_integer(c.q * (c.q + c.q_prev), prec));
}

long sizer(const Word& w) {
    ContinuantPair c = continuants(w);
    Integer n = c.q * (c.q + c.q_prev);
    // log n is irrational for n >= 2, so the floor settles.
    for (mpfr_prec_t prec = 64;; prec *= 2) {
        Interval l = log(Interval::from_integer(n, prec));
        Integer a, b;
        mpfr_get_z(a.get_mpz_t(), l.lo(), MPFR_RNDD);
        mpfr_get_z(b.get_mpz_t(), l.hi(), MPFR_RNDD);
        if (a == b) return a.get_si();
        if (prec > (1 << 20)) throw std::runtime_error("sizer refinement did not settle");
    }
}

std::vector<Word> q_r_partition(long r, Letter maxLetter) {
    if (r < 1 || maxLetter < 1) throw std::invalid_argument("q_r_partition needs r >= 1 and maxLetter >= 1");
    std::vector<Word> out;
    Word cur;
    std::function<void()> dfs = [&]() {
        for (Letter a = 1; a <= maxLetter; ++a) {
            cur.letters.push_back(a);
            if (sizer(cur) >= r) {
                out.push_back(cur);
            } else {
                dfs();
            }
            cur.letters.pop_back();
        }
    };
    dfs();
    return out;
}

Rational gap_lower_bound(const Word& prefix, Letter T) {
    for (Letter a : prefix.letters)
        if (a > T) throw std::invalid_argument("prefix letter exceeds T");
    Word ext = prefix;
    ext.push(T);
    Integer q = continuant(ext);
    return Rational(1, Integer((T + 1) * (T + 2)) * q * q);
}

Rational floor_dyadic(const QuadraticSurd& x, unsigned bits) {
    return dyadic(floor_surd(x * QuadraticSurd(scale_dyadic(bits))), bits);
}

Rational ceil_dyadic(const QuadraticSurd& x, unsigned bits) {
    return -floor_dyadic(-x, bits);
}

IntervalBound tail_range(Letter T, unsigned bits) {
    if (T < 1) throw std::invalid_argument("maxLetter must be >= 1");
    QuadraticSurd lo = eval_periodic(Word{}, Word({T, 1}));
    QuadraticSurd hi = eval_periodic(Word{}, Word({1, T}));
    return {floor_dyadic(lo, bits), ceil_dyadic(hi, bits)};
}

IntervalBound tail_interval(const Word& prefix, Letter maxLetter) {
    static std::mutex mu;
    static std::map<Letter, IntervalBound> cache;
    IntervalBound y;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(maxLetter);
        if (it == cache.end()) it = cache.emplace(maxLetter, tail_range(maxLetter)).first;
        y = it->second;
    }
    Rational a = eval_with_tail(prefix, y.lo);
    Rational b = eval_with_tail(prefix, y.hi);
    if (b < a) std::swap(a, b);
    return {a, b};
}

}  // namespace spectra
