#include "spectra/suites.hpp"

#include "spectra/cantor.hpp"
#include "spectra/continued_fraction.hpp"
#include "spectra/spectra.hpp"
#include "spectra/words.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace spectra {

namespace {

using Rng = std::mt19937_64;

Word random_word(Rng& rng, std::size_t n, Letter T = 2) {
    Word w;
    for (std::size_t i = 0; i < n; ++i) w.letters.push_back(1 + static_cast<Letter>(rng() % static_cast<unsigned>(T)));
    return w;
}

Rational random_positive_rational(Rng& rng, long maxValue) {
    const long den = 1 + static_cast<long>(rng() % 997);
    const long num = 1 + static_cast<long>(rng() % static_cast<unsigned long>(maxValue * den));
    return Rational(num, den);
}

long pick(long v, long dflt) { return v > 0 ? v : dflt; }

// Records the first failure; later ones only count.
void expect(SuiteReport& r, bool ok, const std::function<std::string()>& what) {
    ++r.checked;
    if (ok) return;
    if (r.passed) r.witness = what();
    r.passed = false;
}

bool has_121_or_212(const Word& w) {
    for (std::size_t i = 0; i + 2 < w.size(); ++i)
        if (w[i] == w[i + 2] && w[i] != w[i + 1]) return true;
    return false;
}

bool contains(const Word& hay, const Word& needle) {
    return std::search(hay.letters.begin(), hay.letters.end(), needle.letters.begin(), needle.letters.end()) !=
           hay.letters.end();
}

// Whether the text is a factor of some concatenation of the tokens.
bool factor_of_language(const Word& text, const std::vector<Word>& tokens) {
    std::vector<std::pair<std::size_t, std::size_t>> states, next;
    for (std::size_t t = 0; t < tokens.size(); ++t)
        for (std::size_t o = 0; o < tokens[t].size(); ++o) states.emplace_back(t, o);
    for (Letter c : text.letters) {
        next.clear();
        for (auto [t, o] : states) {
            if (tokens[t][o] != c) continue;
            if (o + 1 < tokens[t].size())
                next.emplace_back(t, o + 1);
            else
                for (std::size_t u = 0; u < tokens.size(); ++u) next.emplace_back(u, 0);
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        states.swap(next);
        if (states.empty()) return false;
    }
    return true;
}

std::vector<AlphabetPair> tree_upto(int depth, int from = 0) {
    std::vector<AlphabetPair> all;
    for (int d = from; d <= depth; ++d) {
        std::vector<AlphabetPair> level = alphabet_tree(d);
        all.insert(all.end(), level.begin(), level.end());
    }
    return all;
}

SuiteReport identity(const SuiteOptions& o) {
    SuiteReport r;
    Rng rng(o.seed);
    for (long t = 0; t < pick(o.count, 100); ++t) {
        const Rational x = random_positive_rational(rng, 10);
        const Rational lhs = 2 + 1 / (2 + 1 / x) + 1 / (1 + 1 / (1 + 1 / x));
        expect(r, lhs == 3, [&] { return "x = " + x.get_str(); });
    }
    return r;
}

SuiteReport sizes_bounds(const SuiteOptions& o) {
    SuiteReport r;
    Rng rng(o.seed);
    const double logPhi2 = std::log((3 + std::sqrt(5.0)) / 2), logSilver = std::log(3 + 2 * std::sqrt(2.0));
    for (long t = 0; t < pick(o.count, 1000); ++t) {
        const Word w = random_word(rng, 1 + rng() % 40);
        const Integer q = continuant(w);
        const Rational s = sizes(w), q2 = Rational(q * q);
        // q_n = q_{n-1} only for the word 1, where the lower bound is attained.
        const bool lowerOk = w == Word{1} ? s == 1 / (2 * q2) : 1 / (2 * q2) < s;
        expect(r, lowerOk && s < 1 / q2, [&] { return "size bounds fail for " + format_word(w); });
        const long rw = sizer(w);
        const double n = static_cast<double>(w.size());
        expect(r, (n - 3) * logPhi2 <= static_cast<double>(rw) && static_cast<double>(rw) <= (n + 1) * logSilver,
               [&] { return "length vs sizer fails for " + format_word(w); });

        // Two continuations first differing right after the prefix.
        const Word prefix = random_word(rng, rng() % 12);
        const Word t1 = random_word(rng, 1 + rng() % 3), t2 = random_word(rng, 1 + rng() % 3);
        const Letter c = 1 + static_cast<Letter>(rng() % 2);
        const QuadraticSurd x = eval_periodic(prefix + Word{c}, t1), y = eval_periodic(prefix + Word{3 - c}, t2);
        const SurdSum diff = SurdSum(x) - SurdSum(y);
        const SurdSum gap = diff.sign() >= 0 ? diff : -diff;
        expect(r, gap > SurdSum(gap_lower_bound(prefix, 2)), [&] { return "gap bound fails after " + format_word(prefix); });
    }
    return r;
}

SuiteReport concat(const SuiteOptions& o) {
    SuiteReport r;
    Rng rng(o.seed);
    for (long t = 0; t < pick(o.count, 1000); ++t) {
        const Word a = random_word(rng, 1 + rng() % 25), b = random_word(rng, 1 + rng() % 25);
        const Rational sa = sizes(a), sb = sizes(b), sab = sizes(a + b);
        expect(r, sa * sb / 2 < sab && sab < 2 * sa * sb,
               [&] { return "size concatenation fails for " + format_word(a) + " | " + format_word(b); });
        const long ra = sizer(a), rb = sizer(b), rab = sizer(a + b);
        expect(r, ra + rb - 1 <= rab && rab <= ra + rb + 2,
               [&] { return "sizer concatenation fails for " + format_word(a) + " | " + format_word(b); });
    }
    return r;
}

SuiteReport transpose_suite(const SuiteOptions& o) {
    SuiteReport r;
    Rng rng(o.seed);
    for (long t = 0; t < pick(o.count, 1000); ++t) {
        const Word w = random_word(rng, 1 + rng() % 30, 1 + static_cast<Letter>(rng() % 3) + 1);
        const Word wt = transpose(w);
        const Rational ratio = sizes(wt) / sizes(w);
        const Rational exact = (1 + eval_finite(wt)) / (1 + eval_finite(w));
        const Rational an(w.back()), a1(w.front());
        const Rational lower = (1 + 1 / (an + 1)) / (1 + 1 / a1);  // [1; a_n + 1] / [1; a_1]
        const Rational upper = (1 + 1 / an) / (1 + 1 / (a1 + 1));  // [1; a_n] / [1; a_1 + 1]
        expect(r, ratio == exact && lower <= ratio && ratio <= upper,
               [&] { return "transpose ratio fails for " + format_word(w); });
    }
    return r;
}

SuiteReport euler(const SuiteOptions& o) {
    SuiteReport r;
    Rng rng(o.seed);
    for (long t = 0; t < pick(o.count, 1000); ++t) {
        const Word a = random_word(rng, 1 + rng() % 20, 3), b = random_word(rng, 1 + rng() % 20, 3);
        const Integer lhs = continuant(a + b);
        const Integer rhs = continuant(a) * continuant(b) + continuant(a.without_last()) * continuant(b.without_first());
        expect(r, lhs == rhs && continuant(a) == continuant(transpose(a)),
               [&] { return "Euler's rule fails for " + format_word(a) + " | " + format_word(b); });
        const ContinuantPair c = continuants(a);
        const Integer det = c.p * c.q_prev - c.p_prev * c.q;
        expect(r, det == ((a.size() % 2) ? 1 : -1), [&] { return "determinant fails for " + format_word(a); });
    }
    return r;
}

SuiteReport approx(const SuiteOptions& o) {
    SuiteReport r;
    Rng rng(o.seed);
    for (long t = 0; t < pick(o.count, 1000); ++t) {
        const Word pre = random_word(rng, rng() % 8), per = random_word(rng, 1 + rng() % 4);
        const QuadraticSurd x = eval_periodic(pre, per);
        Word digits = pre;
        while (digits.size() < 30) digits.append(per);
        const std::size_t n = 1 + rng() % 25;
        const ContinuantPair cn = continuants(digits.slice(0, n));
        const Integer qn1 = continuant(digits.slice(0, n + 1));
        const SurdSum err = SurdSum(x) - SurdSum(Rational(cn.p, cn.q));
        const SurdSum abs = err.sign() >= 0 ? err : -err;
        const Rational qq(cn.q * qn1);
        expect(r, SurdSum(1 / (2 * qq)) < abs && abs < SurdSum(1 / qq),
               [&] { return "approximation bounds fail at n = " + std::to_string(n) + " for " + x.to_string(); });
    }
    return r;
}

SuiteReport calc_s(const SuiteOptions& o) {
    SuiteReport r;
    Rng rng(o.seed);
    const std::vector<Word> periods = {parse_word("11"), parse_word("22"), parse_word("1122"), parse_word("2211"),
                                       parse_word("112222")};
    const long want = pick(o.count, 100);
    for (long t = 0; t < 50 * want && r.checked < want; ++t) {
        const Word w = random_word(rng, 2 * (rng() % 6));
        const Word rper = periods[rng() % periods.size()], sper = periods[rng() % periods.size()];
        const Word R{1, 1}, S{2, 2};
        const Word finite = transpose(R + rper + rper) + transpose(w) + parse_word("1122") + w + S + sper + sper;
        if (has_121_or_212(finite)) continue;
        BiInfiniteSpec s;
        s.center = 2;
        s.rightTransient = Word{2} + w + S;
        s.rightPeriod = sper;
        s.leftTransient = Word{1, 1} + w + R;
        s.leftPeriod = rper;
        const SurdSum lam = lambda_at(s, 0) - SurdSum(Rational(3));
        expect(r, SurdSum(sizes(Word{1, 1} + w + Word{1, 1})) < lam && lam < SurdSum(sizes(Word{1, 1} + w + Word{1})),
               [&] { return "calc-s bound fails for w = " + format_word(w); });
    }
    if (r.checked < want) {
        r.passed = false;
        r.witness = "too few admissible samples";
    }
    return r;
}

SuiteReport cut_comparison_suite(const SuiteOptions& o) {
    SuiteReport r;
    Rng rng(o.seed);
    // Tails end (left) or start (right) with 2 so the runs 1^{k_-1}, 1^{k_1} stay maximal.
    const std::vector<Word> lefts = {Word{}, parse_word("1122"), parse_word("22"), parse_word("111222")};
    const std::vector<Word> rights = {Word{}, parse_word("2211"), parse_word("22"), parse_word("222111")};
    const long want = pick(o.count, 100);
    for (long t = 0; t < 20 * want && r.checked < want; ++t) {
        const int k0 = 3 + 2 * static_cast<int>(rng() % 3);
        const int km = k0 + 1 + static_cast<int>(rng() % 8), k1 = k0 + 1 + static_cast<int>(rng() % 8);
        const Word lt = lefts[rng() % lefts.size()], rt = rights[rng() % rights.size()];
        try {
            const CutComparison c = cut_comparison(km, k0, k1, lt, rt);
            expect(r, c.lemma_holds, [&] {
                return "cut comparison fails for (" + std::to_string(km) + ", " + std::to_string(k0) + ", " +
                       std::to_string(k1) + ")";
            });
        } catch (const HypothesesNotMet&) {
        }
    }
    return r;
}

// Ratio quotients |psi_gamma'(x) / psi_gamma'(y)| for x, y in K(B).
void distortion_on(SuiteReport& r, const GaussCantorSpec& spec, const std::string& label, long samples, Rng& rng) {
    const double C = bounded_distortion_constant(spec, 1.0), bound = C * diameter(spec);
    const std::size_t L = spec.size();
    auto point = [&]() {
        Word pre;
        for (int k = 0; k < 6; ++k) pre.append(spec.alphabet[rng() % L]);
        return eval_periodic(pre, spec.alphabet[rng() % L]);
    };
    for (long i = 0; i < samples; ++i) {
        std::vector<std::size_t> gamma;
        for (int k = 0; k < 5; ++k) gamma.push_back(rng() % L);
        const Interval lr = log(derivative_ratio(spec, gamma, point(), point(), 512));
        expect(r, -bound <= lr.lo_double() && lr.hi_double() <= bound,
               [&] { return label + ": ratio quotient outside [e^{-C diam}, e^{C diam}]"; });
    }
    r.metrics["C(" + label + ")"] = C;
}

SuiteReport distortion(const SuiteOptions& o) {
    SuiteReport r;
    Rng rng(o.seed);
    const long n = pick(o.count, 200);
    distortion_on(r, build_cantor({Word{1, 1}, Word{2, 2}}), "B={11,22}", n, rng);
    distortion_on(r, family(40, FamilyKind::small), "K_small(40)", n, rng);
    return r;
}

SuiteReport refinement(const SuiteOptions& o) {
    SuiteReport r;
    Rng rng(o.seed);
    const GaussCantorSpec t = build_cantor({Word{1, 1}, Word{2, 2}});
    const double d1 = palis_takens(t, DimMethod::sharp).d1.lo_double();
    for (long i = 0; i < pick(o.count, 100); ++i) {
        std::vector<std::size_t> p;
        const std::size_t len = rng() % 8;
        for (std::size_t k = 0; k < len; ++k) p.push_back(rng() % 2);
        expect(r, refinement_inequality_check(t, p, d1), [&] { return "refinement fails at depth " + std::to_string(len); });
    }
    r.metrics["d1"] = d1;
    return r;
}

SuiteReport base_case_suite(const SuiteOptions&) {
    SuiteReport r;
    double C = 0;
    for (int n = 5; n <= 40; ++n) {
        const BaseCase b = base_case(n);
        C = std::max(C, b.ratio * std::pow(std::numbers::phi, 2 * n));
        ++r.checked;
    }
    r.metrics["fittedC"] = C;
    if (!(C <= 10)) {
        r.passed = false;
        r.witness = "fitted C = " + std::to_string(C);
    }
    return r;
}

SuiteReport e_bounds(const SuiteOptions& o) {
    SuiteReport r;
    Rng rng(o.seed);
    double worst = 0;
    for (long t = 0; t < pick(o.count, 500); ++t) {
        std::vector<int> exps(2 + rng() % 7);
        for (int& x : exps) x = 2 + static_cast<int>(rng() % 29);
        const QProduct q = q_product_estimate(exps);
        double m = 0;
        for (double e : q.E) m = std::max(m, std::abs(e));
        for (double e : q.E_second) m = std::max(m, std::abs(e));
        worst = std::max(worst, m);
        expect(r, m <= 1.0 / 3, [&] {
            std::string s = "|E| > 1/3 for r =";
            for (int x : exps) s += " " + std::to_string(x);
            return s;
        });
    }
    r.metrics["max|E|"] = worst;
    return r;
}

SuiteReport combinatorial(const SuiteOptions& o) {
    SuiteReport r;
    const int depth = static_cast<int>(pick(o.depth, 4));
    const std::vector<AlphabetPair> all = tree_upto(depth);
    auto descends = [](const AlphabetPair& child, const AlphabetPair& parent) {
        return child.path.size() > parent.path.size() && child.path.rfind(parent.path, 0) == 0;
    };
    for (const AlphabetPair& uv : all)
        for (const Word& theta : {uv.alpha, uv.beta})
            for (const AlphabetPair& ab : all)
                for (std::size_t s = 1; s <= 3; ++s) {
                    const Word ts = repeat(theta, s);
                    if (contains(ts, ab.ab()))
                        expect(r, contains(theta, ab.ab()) && descends(uv, ab), [&] {
                            return "first lemma fails: (" + uv.path + ") over (" + ab.path + "), s = " + std::to_string(s);
                        });
                    const bool rootLetter = theta == Word{2, 2} || theta == Word{1, 1};
                    if (!rootLetter && ts.size() > 2 * ab.max_len() && factor_of_language(ts, {ab.alpha, ab.beta}))
                        expect(r, theta == ab.alpha || theta == ab.beta || descends(uv, ab), [&] {
                            return "second lemma fails: (" + uv.path + ") over (" + ab.path + "), s = " + std::to_string(s);
                        });
                }
    r.metrics["alphabets"] = static_cast<double>(all.size());
    return r;
}

SuiteReport below3(const SuiteOptions& o) {
    SuiteReport r;
    const int depth = static_cast<int>(pick(o.depth, 5));
    const SurdSum three(Rational(3));
    const std::vector<AlphabetPair> all = tree_upto(depth, 1);
    for (const AlphabetPair& p : all) {
        const Word ab = p.ab(), aabb = p.alpha + p.alpha + p.beta + p.beta;
        expect(r, SurdSum(markov_value_periodic(ab).value) < three && below3_period_check(ab),
               [&] { return "m(alpha beta) >= 3 at " + p.path; });
        expect(r, SurdSum(markov_value_periodic(aabb).value) > three && !below3_period_check(aabb),
               [&] { return "m(alpha alpha beta beta) <= 3 at " + p.path; });
    }
    r.metrics["alphabets"] = static_cast<double>(all.size());
    return r;
}

SuiteReport perron(const SuiteOptions& o) {
    SuiteReport r;
    Rng rng(o.seed);
    const long maxLen = pick(o.maxLen, 12);
    const SurdSum root12(QuadraticSurd::sqrt_of(12));
    long attained = 0;
    for (long t = 0; t < pick(o.count, 1000); ++t) {
        const Word p = random_word(rng, 1 + rng() % static_cast<unsigned long>(maxLen));
        const SurdSum m(markov_value_periodic(p).value);
        expect(r, m <= root12, [&] { return "m > sqrt(12) for period " + format_word(p); });
        if (m == root12) {
            ++attained;
            expect(r, cyclically_equal(primitive_root(p), Word{1, 2}),
                   [&] { return "sqrt(12) attained by period " + format_word(p); });
        }
    }
    const bool eq = SurdSum(markov_value_periodic(Word{1, 2}).value) == root12;
    expect(r, eq, [] { return "period (1,2) does not attain sqrt(12)"; });
    r.metrics["attainedBy12"] = static_cast<double>(attained);
    return r;
}

struct Entry {
    const char* name;
    SuiteReport (*run)(const SuiteOptions&);
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r = {
        {"identity", identity},
        {"sizes-bounds", sizes_bounds},
        {"concat", concat},
        {"transpose", transpose_suite},
        {"euler", euler},
        {"approx", approx},
        {"calc-s", calc_s},
        {"cut-comparison", cut_comparison_suite},
        {"distortion", distortion},
        {"refinement", refinement},
        {"base-case", base_case_suite},
        {"e-bounds", e_bounds},
        {"combinatorial", combinatorial},
        {"below3", below3},
        {"perron", perron},
    };
    return r;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const Entry& e : registry()) out.emplace_back(e.name);
    return out;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opt) {
    for (const Entry& e : registry())
        if (name == e.name) {
            SuiteReport r = e.run(opt);
            r.name = name;
            return r;
        }
    throw UnknownSuite(name);
}

}  // namespace spectra
