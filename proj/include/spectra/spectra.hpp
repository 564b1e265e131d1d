#pragma once

#include "spectra/continued_fraction.hpp"
#include "spectra/surd.hpp"
#include "spectra/word.hpp"

#include <map>
#include <string>
#include <vector>

namespace spectra {

// Eventually periodic bi-infinite sequence around a center letter a_0.
// Left data is stored in outward order: leftTransient[0] = a_{-1}, and the
// left tail value is [0; leftTransient, leftPeriod, leftPeriod, ...].
struct BiInfiniteSpec {
    Word leftPeriod;
    Word leftTransient;
    Letter center = 1;
    Word rightTransient;
    Word rightPeriod;

    Letter at(long i) const;
    // Letters a_{i+1}, a_{i+2}, ... as preperiod + period.
    std::pair<Word, Word> right_tail(long i) const;
    // Letters a_{i-1}, a_{i-2}, ... as preperiod + period.
    std::pair<Word, Word> left_tail(long i) const;
    void validate() const;
};

// Purely periodic sequence ...PPP... with a_0 = period[0].
BiInfiniteSpec periodic_spec(const Word& period);

// lambda_i = a_i + [0; a_{i+1}, ...] + [0; a_{i-1}, ...]
SurdSum lambda_at(const BiInfiniteSpec& spec, long i);

struct MarkovValue {
    QuadraticSurd value;
    std::size_t position = 0;  // smallest index attaining the maximum
};

MarkovValue markov_value_periodic(const Word& period);

// limsup of lambda_n as n -> +infinity.
QuadraticSurd lagrange_value(const BiInfiniteSpec& spec);

// Partial window: offset -> letter.
struct WindowConstraint {
    std::map<long, Letter> offsets;
    bool has(long i) const { return offsets.count(i) != 0; }
};

// Enclosure of lambda_i over every completion in {1..maxLetter} agreeing
// with the window. Uses the contiguous known letters on each side of i.
IntervalBound lambda_bounds(const WindowConstraint& wc, long i, Letter maxLetter);

struct CutValue {
    std::string label;  // e.g. "1^6 22 | 1^3"
    long position;      // index in the spec used for evaluation
    SurdSum value;
};

struct CutComparison {
    std::vector<CutValue> ordered;  // decreasing lambda
    std::string lemma_case;         // "first", "second"
    bool lemma_holds = false;       // all stated inequalities verified exactly
};

class HypothesesNotMet : public std::invalid_argument {
public:
    HypothesesNotMet() : std::invalid_argument("hypotheses-not-met") {}
};

// Exact lambda at the four cuts of ...1^{k_-1} 22 1^{k0} 22 1^{k1}... .
// leftTail / rightTail are periods (read left to right) repeated on each
// side of the block; empty tails give the periodic word (block 22)^Z.
CutComparison cut_comparison(int k_minus, int k0, int k1, const Word& leftTail, const Word& rightTail);

struct SigmaResult {
    std::vector<Word> words;
    bool stabilized = false;  // identical to the result at deepen - 4 (when computed)
    std::string caveat;
};

// Superset of Sigma(t, n): length-n words over {1,2} extending to a window
// of radius `deepen` on each side with every lambda lower bound <= t.
SigmaResult enumerate_sigma(const SurdSum& t, int n, int deepen);

}  // namespace spectra
