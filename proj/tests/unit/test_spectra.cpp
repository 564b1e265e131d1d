#include <doctest.h>

#include "spectra/spectra.hpp"
#include "spectra/words.hpp"

#include <random>

using namespace spectra;

namespace {

bool has_121_or_212(const Word& w) {
    for (std::size_t i = 0; i + 2 < w.size(); ++i)
        if (w[i] == w[i + 2] && w[i] != w[i + 1]) return true;
    return false;
}

Word random12(std::mt19937_64& rng, std::size_t n) {
    Word w;
    for (std::size_t i = 0; i < n; ++i) w.letters.push_back(1 + static_cast<Letter>(rng() % 2));
    return w;
}

}  // namespace

TEST_CASE("lambda_at on periodic sequences") {
    for (long i : {0L, 3L, -5L}) {
        CHECK(lambda_at(periodic_spec(Word{1}), i) == SurdSum(QuadraticSurd::sqrt_of(5)));
        CHECK(lambda_at(periodic_spec(Word{2}), i) == SurdSum(QuadraticSurd::sqrt_of(8)));
    }
    CHECK(lambda_at(periodic_spec(Word{2, 1}), 0) == SurdSum(QuadraticSurd::sqrt_of(12)));
    CHECK(lambda_at(periodic_spec(Word{2, 1}), 2) == SurdSum(QuadraticSurd::sqrt_of(12)));

    // Two independent evaluations: spec shifting vs explicit tails.
    std::mt19937_64 rng(2);
    for (int t = 0; t < 50; ++t) {
        Word p = random12(rng, 1 + rng() % 6);
        BiInfiniteSpec s = periodic_spec(p);
        for (long i = -7; i <= 7; ++i) {
            std::size_t n = p.size();
            std::size_t idx = static_cast<std::size_t>(((i % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n));
            Word right, left;
            for (std::size_t k = 1; k <= n; ++k) right.letters.push_back(p[(idx + k) % n]);
            for (std::size_t k = 1; k <= n; ++k) left.letters.push_back(p[(idx + n * 8 - k) % n]);
            SurdSum expect = SurdSum(Rational(p[idx])) + SurdSum(eval_periodic(Word{}, right)) +
                             SurdSum(eval_periodic(Word{}, left));
            CHECK(lambda_at(s, i) == expect);
        }
    }
}

TEST_CASE("markov_value_periodic") {
    MarkovValue m1 = markov_value_periodic(Word{1});
    CHECK(m1.value == QuadraticSurd::sqrt_of(5));
    CHECK(m1.position == 0);
    CHECK(markov_value_periodic(Word{2}).value == QuadraticSurd::sqrt_of(8));
    MarkovValue m = markov_value_periodic(parse_word("2211"));
    CHECK(m.value == QuadraticSurd::sqrt_of(221) / QuadraticSurd(5));
    CHECK(m.value.to_string() == "(sqrt(221))/5");
    CHECK(m.position == 0);

    std::mt19937_64 rng(4);
    for (int t = 0; t < 60; ++t) {
        Word p = random12(rng, 1 + rng() % 9);
        QuadraticSurd v = markov_value_periodic(p).value;
        Word rot = p.slice(1, p.size() - 1);
        rot.push(p[0]);
        CHECK(markov_value_periodic(rot).value == v);
        CHECK(markov_value_periodic(transpose(p)).value == v);
    }
}

TEST_CASE("lagrange_value") {
    BiInfiniteSpec s;
    s.leftPeriod = Word{2};
    s.leftTransient = Word{2, 1};
    s.center = 2;
    s.rightTransient = Word{1, 2, 2};
    s.rightPeriod = Word{1};
    CHECK(lagrange_value(s) == QuadraticSurd::sqrt_of(5));
    s.rightPeriod = parse_word("2211");
    CHECK(lagrange_value(s) == QuadraticSurd::sqrt_of(221) / QuadraticSurd(5));

    // lambda_n converges to the periodic values far to the right.
    std::mt19937_64 rng(8);
    for (int t = 0; t < 40; ++t) {
        BiInfiniteSpec r;
        r.leftPeriod = random12(rng, 1 + rng() % 4);
        r.leftTransient = random12(rng, rng() % 4);
        r.center = 1 + static_cast<Letter>(rng() % 2);
        r.rightTransient = random12(rng, rng() % 4);
        r.rightPeriod = random12(rng, 1 + rng() % 4);
        QuadraticSurd L = lagrange_value(r);
        long far = 60 + static_cast<long>(r.rightTransient.size());
        SurdSum best;
        for (long i = far; i < far + static_cast<long>(r.rightPeriod.size()); ++i) {
            SurdSum v = lambda_at(r, i);
            if (i == far || v > best) best = v;
        }
        CHECK(std::abs((best - SurdSum(L)).to_double()) < 1e-20);
    }
}

TEST_CASE("lambda_bounds") {
    WindowConstraint only;
    only.offsets[0] = 2;
    IntervalBound b = lambda_bounds(only, 0, 2);
    CHECK(SurdSum(b.lo) <= SurdSum(QuadraticSurd::sqrt_of(8)));
    CHECK(SurdSum(QuadraticSurd::sqrt_of(12)) <= SurdSum(b.hi));

    WindowConstraint ones_wc;
    for (long i = -10; i <= 10; ++i) ones_wc.offsets[i] = 1;
    IntervalBound g = lambda_bounds(ones_wc, 0, 2);
    CHECK(g.contains(g.lo));
    CHECK(SurdSum(g.lo) <= SurdSum(QuadraticSurd::sqrt_of(5)));
    CHECK(SurdSum(QuadraticSurd::sqrt_of(5)) <= SurdSum(g.hi));
    CHECK(g.width() < Rational(1, 1000));

    // Shrinks geometrically for periodic constraints.
    Word p = parse_word("2211");
    auto window = [&](long d) {
        WindowConstraint wc;
        for (long i = -d; i <= d; ++i) wc.offsets[i] = p[static_cast<std::size_t>(((i % 4) + 4) % 4)];
        return lambda_bounds(wc, 0, 2).width();
    };
    for (long d = 4; d <= 16; d += 4) CHECK(window(d + 4) * 4 < window(d));

    // Soundness on random completions, and monotonicity.
    std::mt19937_64 rng(6);
    for (int t = 0; t < 1000; ++t) {
        BiInfiniteSpec s;
        s.leftPeriod = random12(rng, 1 + rng() % 3);
        s.leftTransient = random12(rng, rng() % 8);
        s.center = 1 + static_cast<Letter>(rng() % 2);
        s.rightTransient = random12(rng, rng() % 8);
        s.rightPeriod = random12(rng, 1 + rng() % 3);
        long lo = -static_cast<long>(rng() % 6), hi = static_cast<long>(rng() % 6);
        WindowConstraint wc;
        for (long i = lo; i <= hi; ++i) wc.offsets[i] = s.at(i);
        IntervalBound bnd = lambda_bounds(wc, 0, 2);
        SurdSum v = lambda_at(s, 0);
        CHECK(SurdSum(bnd.lo) <= v);
        CHECK(v <= SurdSum(bnd.hi));
        wc.offsets[hi + 1] = s.at(hi + 1);
        IntervalBound tighter = lambda_bounds(wc, 0, 2);
        CHECK(bnd.lo <= tighter.lo);
        CHECK(tighter.hi <= bnd.hi);
    }
}

TEST_CASE("cut comparison") {
    CutComparison a = cut_comparison(6, 3, 5, Word{}, Word{});
    CHECK(a.lemma_case == "first");
    CHECK(a.lemma_holds);
    CHECK(a.ordered[0].label == "1^6 22 | 1^3");
    CHECK(a.ordered[1].label == "1^3 | 22 1^5");

    CutComparison b = cut_comparison(8, 3, 6, Word{}, Word{});
    CHECK(b.lemma_case == "second");
    CHECK(b.lemma_holds);
    CHECK(b.ordered[0].label == "1^3 | 22 1^6");
    CHECK(b.ordered[1].label == "1^8 22 | 1^3");

    CHECK_THROWS_AS(cut_comparison(5, 3, 6, Word{}, Word{}), HypothesesNotMet);
    CHECK_THROWS_AS(cut_comparison(6, 4, 8, Word{}, Word{}), HypothesesNotMet);
    CHECK_THROWS_AS(cut_comparison(6, 3, 8, Word{}, Word{}), HypothesesNotMet);

    std::mt19937_64 rng(12);
    int tested = 0;
    for (int t = 0; t < 200; ++t) {
        int k0 = 3 + 2 * static_cast<int>(rng() % 3);
        int km = k0 + 1 + static_cast<int>(rng() % 8), k1 = k0 + 1 + static_cast<int>(rng() % 8);
        try {
            CutComparison c = cut_comparison(km, k0, k1, Word{}, Word{});
            CHECK(c.lemma_holds);
            ++tested;
        } catch (const HypothesesNotMet&) {
        }
    }
    CHECK(tested > 50);
}

TEST_CASE("calc-s bounds") {
    std::mt19937_64 rng(13);
    const std::vector<Word> periods = {parse_word("11"), parse_word("22"), parse_word("1122"), parse_word("2211"),
                                       parse_word("112222")};
    int tested = 0;
    for (int t = 0; t < 2000 && tested < 100; ++t) {
        Word w = random12(rng, 2 * (rng() % 6));
        Word rper = periods[rng() % periods.size()], sper = periods[rng() % periods.size()];
        Word R = Word{1, 1}, S = Word{2, 2};
        Word finite = transpose(R + rper + rper) + transpose(w) + parse_word("1122") + w + S + sper + sper;
        if (has_121_or_212(finite)) continue;
        BiInfiniteSpec s;
        s.center = 2;
        s.rightTransient = Word{2} + w + S;
        s.rightPeriod = sper;
        s.leftTransient = Word{1, 1} + w + R;
        s.leftPeriod = rper;
        SurdSum lam = lambda_at(s, 0) - SurdSum(Rational(3));
        CHECK(SurdSum(sizes(Word{1, 1} + w + Word{1, 1})) < lam);
        CHECK(lam < SurdSum(sizes(Word{1, 1} + w + Word{1})));
        ++tested;
    }
    CHECK(tested == 100);
}

TEST_CASE("enumerate_sigma") {
    SurdSum just_above_12 = SurdSum(QuadraticSurd::sqrt_of(12)) + SurdSum(Rational(1, 1000));
    CHECK(enumerate_sigma(just_above_12, 3, 2).words.size() == 8);

    SurdSum near5 = SurdSum(QuadraticSurd::sqrt_of(5)) + SurdSum(Rational(1, 1000000));
    auto r = enumerate_sigma(near5, 5, 10);
    REQUIRE(r.words.size() == 1);
    CHECK(r.words[0] == Word({1, 1, 1, 1, 1}));

    SurdSum t299(Rational(299, 100));
    auto a = enumerate_sigma(t299, 4, 8);
    auto b = enumerate_sigma(t299, 4, 4);
    for (const auto& w : a.words) {
        CHECK(std::find(b.words.begin(), b.words.end(), w) != b.words.end());
        CHECK(std::find(a.words.begin(), a.words.end(), transpose(w)) != a.words.end());
        CHECK_FALSE(has_121_or_212(w));
    }
    auto c = enumerate_sigma(SurdSum(Rational(3)), 4, 8);
    for (const auto& w : a.words) CHECK(std::find(c.words.begin(), c.words.end(), w) != c.words.end());
}
