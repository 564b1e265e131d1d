#include "spectra/spectra.hpp"

#include "spectra/words.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace spectra {

namespace {

Word rotate(const Word& w, std::size_t k) {
    Word r;
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) r.letters.push_back(w[(i + k) % n]);
    return r;
}

// Letters of stream + period^infinity starting at index j.
std::pair<Word, Word> stream_from(const Word& transient, const Word& period, std::size_t j) {
    if (j < transient.size()) return {transient.slice(j, transient.size() - j), period};
    return {Word{}, rotate(period, (j - transient.size()) % period.size())};
}

SurdSum tail_value(const std::pair<Word, Word>& t) { return SurdSum(eval_periodic(t.first, t.second)); }

}  // namespace

void BiInfiniteSpec::validate() const {
    if (leftPeriod.empty() || rightPeriod.empty()) throw std::invalid_argument("periods must be nonempty");
    if (center < 1) throw std::invalid_argument("letters must be positive");
    for (const Word* w : {&leftPeriod, &leftTransient, &rightTransient, &rightPeriod})
        for (Letter a : w->letters)
            if (a < 1) throw std::invalid_argument("letters must be positive");
}

Letter BiInfiniteSpec::at(long i) const {
    if (i == 0) return center;
    if (i > 0) {
        auto j = static_cast<std::size_t>(i - 1);
        if (j < rightTransient.size()) return rightTransient[j];
        return rightPeriod[(j - rightTransient.size()) % rightPeriod.size()];
    }
    auto j = static_cast<std::size_t>(-i - 1);
    if (j < leftTransient.size()) return leftTransient[j];
    return leftPeriod[(j - leftTransient.size()) % leftPeriod.size()];
}

std::pair<Word, Word> BiInfiniteSpec::right_tail(long i) const {
    if (i >= 0) return stream_from(rightTransient, rightPeriod, static_cast<std::size_t>(i));
    Word pre;
    for (long m = i + 1; m <= 0; ++m) pre.letters.push_back(at(m));
    pre.append(rightTransient);
    return {pre, rightPeriod};
}

std::pair<Word, Word> BiInfiniteSpec::left_tail(long i) const {
    if (i <= 0) return stream_from(leftTransient, leftPeriod, static_cast<std::size_t>(-i));
    Word pre;
    for (long m = i - 1; m >= 0; --m) pre.letters.push_back(at(m));
    pre.append(leftTransient);
    return {pre, leftPeriod};
}

BiInfiniteSpec periodic_spec(const Word& period) {
    if (period.empty()) throw std::invalid_argument("empty period");
    BiInfiniteSpec s;
    s.center = period[0];
    s.rightPeriod = rotate(period, 1);
    s.leftPeriod = transpose(period);
    return s;
}

SurdSum lambda_at(const BiInfiniteSpec& spec, long i) {
    spec.validate();
    return SurdSum(Rational(spec.at(i))) + tail_value(spec.right_tail(i)) + tail_value(spec.left_tail(i));
}

MarkovValue markov_value_periodic(const Word& period) {
    BiInfiniteSpec s = periodic_spec(period);
    MarkovValue best;
    SurdSum best_val;
    for (std::size_t i = 0; i < period.size(); ++i) {
        SurdSum v = lambda_at(s, static_cast<long>(i));
        if (i == 0 || v > best_val) {
            best_val = v;
            best.position = i;
        }
    }
    best.value = best_val.as_surd();
    return best;
}

QuadraticSurd lagrange_value(const BiInfiniteSpec& spec) {
    spec.validate();
    return markov_value_periodic(spec.rightPeriod).value;
}

IntervalBound lambda_bounds(const WindowConstraint& wc, long i, Letter maxLetter) {
    auto it = wc.offsets.find(i);
    if (it == wc.offsets.end()) throw std::invalid_argument("lambda_bounds: offset not fixed in the window");
    Word right, left;
    for (long j = i + 1; wc.has(j); ++j) right.letters.push_back(wc.offsets.at(j));
    for (long j = i - 1; wc.has(j); --j) left.letters.push_back(wc.offsets.at(j));
    IntervalBound r = tail_interval(right, maxLetter);
    IntervalBound l = tail_interval(left, maxLetter);
    Rational a(it->second);
    return {a + r.lo + l.lo, a + r.hi + l.hi};
}

CutComparison cut_comparison(int k_minus, int k0, int k1, const Word& leftTail, const Word& rightTail) {
    if (k0 % 2 == 0 || k0 < 3 || k_minus <= k0 || k1 <= k0) throw HypothesesNotMet();
    std::string which;
    const bool km_even = k_minus % 2 == 0, k1_even = k1 % 2 == 0;
    if ((km_even && !k1_even) || (!km_even && !k1_even && k_minus > k1)) {
        which = "first";
    } else if (km_even && k1_even && k_minus > k1) {
        which = "second";
    } else {
        throw HypothesesNotMet();
    }
    Word block = ones(static_cast<std::size_t>(k_minus));
    block.push(2, 2).append(ones(static_cast<std::size_t>(k0)));
    block.push(2, 2).append(ones(static_cast<std::size_t>(k1)));
    const Word lt = leftTail.empty() ? block + Word{2, 2} : leftTail;
    const Word rt = rightTail.empty() ? Word{2, 2} + block : rightTail;

    // Center on the second 2 of the first 22 block.
    const auto c = static_cast<std::size_t>(k_minus) + 1;
    BiInfiniteSpec spec;
    spec.center = block[c];
    spec.leftTransient = transpose(block.slice(0, c));
    spec.leftPeriod = transpose(lt);
    spec.rightTransient = block.slice(c + 1, block.size() - c - 1);
    spec.rightPeriod = rt;

    const std::string km = "1^" + std::to_string(k_minus), z = "1^" + std::to_string(k0),
                      kp = "1^" + std::to_string(k1);
    std::vector<CutValue> cuts = {
        {km + " | 22 " + z, -1, lambda_at(spec, -1)},
        {km + " 22 | " + z, 0, lambda_at(spec, 0)},
        {z + " | 22 " + kp, k0 + 1, lambda_at(spec, k0 + 1)},
        {z + " 22 | " + kp, k0 + 2, lambda_at(spec, k0 + 2)},
    };
    CutComparison out;
    out.lemma_case = which;
    const SurdSum three(Rational(3));
    const SurdSum &A = cuts[0].value, &B = cuts[1].value, &C = cuts[2].value, &D = cuts[3].value;
    bool ordered = which == "first" ? (B > C && C > three) : (C > B && B > three);
    out.lemma_holds = ordered && C > D && B > A;
    out.ordered = cuts;
    std::stable_sort(out.ordered.begin(), out.ordered.end(),
                     [](const CutValue& x, const CutValue& y) { return x.value > y.value; });
    return out;
}

namespace {

class SigmaSearch {
public:
    SigmaSearch(const SurdSum& t, int n, int deepen) : t_(t), n_(n), deepen_(deepen), t_iv_(t.enclose(256)) {
        // Core letters first, then alternate right/left so the window stays contiguous.
        for (int i = 0; i < n; ++i) order_.push_back(i);
        for (int d = 0; d < deepen; ++d) {
            order_.push_back(n + d);
            order_.push_back(-1 - d);
        }
    }

    std::vector<Word> run() {
        std::vector<Word> out;
        Word core;
        std::function<void(int)> rec = [&](int depth) {
            if (depth == n_) {
                if (extends(depth)) out.push_back(core);
                return;
            }
            for (Letter a : {1, 2}) {
                wc_.offsets[order_[static_cast<std::size_t>(depth)]] = a;
                core.letters.push_back(a);
                if (admissible()) rec(depth + 1);
                core.letters.pop_back();
                wc_.offsets.erase(order_[static_cast<std::size_t>(depth)]);
            }
        };
        rec(0);
        return out;
    }

private:
    bool exceeds(const Rational& lo) const {
        if (mpfr_cmp_q(t_iv_.hi(), lo.get_mpq_t()) < 0) return true;
        if (mpfr_cmp_q(t_iv_.lo(), lo.get_mpq_t()) >= 0) return false;
        return SurdSum(lo) > t_;
    }

    bool admissible() const {
        for (const auto& [pos, a] : wc_.offsets) {
            (void)a;
            if (exceeds(lambda_bounds(wc_, pos, 2).lo)) return false;
        }
        return true;
    }

    bool extends(int depth) {
        if (static_cast<std::size_t>(depth) == order_.size()) return true;
        long pos = order_[static_cast<std::size_t>(depth)];
        for (Letter a : {1, 2}) {
            wc_.offsets[pos] = a;
            bool ok = admissible() && extends(depth + 1);
            wc_.offsets.erase(pos);
            if (ok) return true;
        }
        return false;
    }

    SurdSum t_;
    int n_;
    int deepen_;
    Interval t_iv_;
    std::vector<long> order_;
    WindowConstraint wc_;
};

}  // namespace

SigmaResult enumerate_sigma(const SurdSum& t, int n, int deepen) {
    if (n < 1 || deepen < 0) throw std::invalid_argument("enumerate_sigma needs n >= 1 and deepen >= 0");
    if (!(t > SurdSum(QuadraticSurd::sqrt_of(5)))) throw std::invalid_argument("enumerate_sigma needs t > sqrt(5)");
    SigmaResult res;
    res.words = SigmaSearch(t, n, deepen).run();
    if (deepen >= 4) {
        auto coarse = SigmaSearch(t, n, deepen - 4).run();
        res.stabilized = coarse == res.words;
    }
    res.caveat = "certified superset of Sigma(t,n); stabilization under deepening is observed, not proven";
    return res;
}

}  // namespace spectra
