#pragma once

#include "spectra/interval.hpp"
#include "spectra/surd.hpp"
#include "spectra/word.hpp"

#include <utility>
#include <vector>

namespace spectra {

// Convergent data of [0; a_1, ..., a_n]: p = p_n, q = q_n, p_prev = p_{n-1},
// q_prev = q_{n-1}, with p*q_prev - p_prev*q = (-1)^(n-1).
struct ContinuantPair {
    Integer p, q, p_prev, q_prev;
};

struct IntervalBound {
    Rational lo, hi;
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    Rational width() const { return hi - lo; }
};

ContinuantPair continuants(const Word& w);

// Denominator q(w); q of the empty word is 1.
Integer continuant(const Word& w);

// a0 + [0; w]
Rational eval_finite(const Word& w, const Integer& a0 = 0);

// [0; w, y] for a rational tail y in [0, 1]; y = 0 gives [0; w].
Rational eval_with_tail(const Word& w, const Rational& y);

// [0; preperiod, period, period, ...]
QuadraticSurd eval_periodic(const Word& preperiod, const Word& period);

// Exact total order on surds.
int surd_compare(const QuadraticSurd& x, const QuadraticSurd& y);

// Endpoints of I(w), lo <= hi.
std::pair<Rational, Rational> cylinder_interval(const Word& w);

// |I(w)| = 1/(q_n (q_n + q_{n-1}))
Rational sizes(const Word& w);

// floor(log(1/sizes(w)))
long sizer(const Word& w);

// Enclosure of log(1/sizes(w)).
Interval log_inverse_size(const Word& w, mpfr_prec_t prec);

// Q_r: words with sizer >= r whose parent has sizer < r.
std::vector<Word> q_r_partition(long r, Letter maxLetter);

// Lower bound for |x - x'| when the expansions of x, x' in {1..T} first
// differ right after the prefix.
Rational gap_lower_bound(const Word& prefix, Letter T);

// Rational enclosure of every [0; prefix, c_1, c_2, ...] with c_i in {1..maxLetter}.
IntervalBound tail_interval(const Word& prefix, Letter maxLetter);

// Extreme tails [0; c_1, c_2, ...] over {1..T}: min = [0; (T,1)-bar],
// max = [0; (1,T)-bar], rounded outward to the dyadic grid 2^-bits.
IntervalBound tail_range(Letter T, unsigned bits = 128);

// Rounds a surd down / up to a multiple of 2^-bits.
Rational floor_dyadic(const QuadraticSurd& x, unsigned bits);
Rational ceil_dyadic(const QuadraticSurd& x, unsigned bits);

}  // namespace spectra
