#include <doctest.h>

#include "spectra/continued_fraction.hpp"

#include <random>
#include <set>

using namespace spectra;

namespace {

// Backward nested evaluation, independent of the continuant recurrence.
Rational nested(const Word& w, const Rational& tail = 0) {
    Rational x = tail;
    for (std::size_t i = w.size(); i-- > 0;) x = Rational(1) / (Rational(w[i]) + x);
    return x;
}

Word random_word(std::mt19937_64& rng, std::size_t minLen, std::size_t maxLen, Letter maxLetter = 2) {
    std::uniform_int_distribution<std::size_t> len(minLen, maxLen);
    std::uniform_int_distribution<Letter> let(1, maxLetter);
    Word w;
    std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) w.letters.push_back(let(rng));
    return w;
}

Word reversed(const Word& w) { return Word(std::vector<Letter>(w.letters.rbegin(), w.letters.rend())); }

}  // namespace

TEST_CASE("word grammar") {
    CHECK(parse_word("2 2 1^5 | 2 2 1^3").letters.size() == 12);
    CHECK(*parse_word("2 2 1^5 | 2 2 1^3").mark == 7);
    CHECK(*parse_word("22*1").mark == 1);
    CHECK(parse_word("(21)^3") == Word({2, 1, 2, 1, 2, 1}));
    CHECK(parse_word("10,3^2,1") == Word({10, 3, 3, 1}));
    CHECK_THROWS_AS(parse_word("2 x"), WordParseError);
    CHECK_THROWS_AS(parse_word("2* 2*"), WordParseError);
    CHECK_THROWS_AS(parse_word("0"), WordParseError);
    Word w = parse_word("2 2 1^5 2* 2 1 1");
    CHECK(parse_word(format_word(w)) == w);
    CHECK(parse_word(format_word(w)).mark == w.mark);
}

TEST_CASE("continuants") {
    ContinuantPair c = continuants(Word{1});
    CHECK(c.p == 1);
    CHECK(c.q == 1);
    CHECK(c.p_prev == 0);
    CHECK(c.q_prev == 1);
    ContinuantPair d = continuants(Word{1, 1, 2});
    CHECK(d.p == 3);
    CHECK(d.q == 5);
    CHECK(continuant(Word{1}) * continuant(Word{1, 2}) + continuant(Word{}) * continuant(Word{2}) == 5);
    CHECK_THROWS_WITH(continuants(Word{}), "empty-word");

    std::mt19937_64 rng(7);
    for (int t = 0; t < 300; ++t) {
        Word w = random_word(rng, 1, 30, 4);
        ContinuantPair e = continuants(w);
        Integer det = e.p * e.q_prev - e.p_prev * e.q;
        CHECK(det == (w.size() % 2 == 1 ? 1 : -1));
        CHECK(e.q >= e.q_prev);
        CHECK(Rational(e.p, e.q) == nested(w));
        CHECK(continuant(w) == continuant(reversed(w)));
        // Euler's rule on a random split.
        std::size_t k = std::uniform_int_distribution<std::size_t>(1, w.size())(rng);
        Word a = w.slice(0, k), b = w.slice(k, w.size() - k);
        Integer euler = continuant(a) * continuant(b);
        if (!b.empty()) euler += continuant(a.without_last()) * continuant(b.without_first());
        CHECK(continuant(w) == euler);
    }
}

TEST_CASE("eval_finite") {
    CHECK(eval_finite(Word{1, 2}) == Rational(2, 3));
    CHECK(eval_finite(Word{2, 1}, 2) == Rational(7, 3));
    CHECK(eval_finite(Word{1, 1, 1}) == Rational(2, 3));
}

TEST_CASE("eval_periodic") {
    QuadraticSurd g = eval_periodic(Word{}, Word{1});
    CHECK(g.a() == -1);
    CHECK(g.b() == 1);
    CHECK(g.c() == 2);
    CHECK(g.discriminant() == 5);
    QuadraticSurd s2 = eval_periodic(Word{}, Word{2});
    CHECK(s2 == QuadraticSurd::from_canonical(-1, 1, 1, 2));
    CHECK(s2.to_string() == "-1+sqrt(2)");
    QuadraticSurd x = eval_periodic(Word{}, Word{2, 2, 1, 1});
    CHECK(x == QuadraticSurd::from_canonical(-9, 1, 14, 221));
    CHECK(x.decimal(30).substr(0, 30) == "0.4190049105227503944722863009");
    // Pre-period composes as a Moebius map.
    QuadraticSurd y = eval_periodic(Word{1, 2}, Word{2, 2, 1, 1});
    QuadraticSurd manual = QuadraticSurd(1) / (QuadraticSurd(1) + QuadraticSurd(1) / (QuadraticSurd(2) + x));
    CHECK(y == manual);
    CHECK_THROWS(eval_periodic(Word{1}, Word{}));
}

TEST_CASE("surd_compare") {
    QuadraticSurd a = QuadraticSurd::from_canonical(0, 2, 1, 2);
    QuadraticSurd b = QuadraticSurd::from_canonical(0, 1, 1, 8);
    CHECK(a == b);
    CHECK(surd_compare(a, b) == 0);
    CHECK(b.discriminant() == 2);
    CHECK(surd_compare(eval_periodic(Word{}, Word{1}), QuadraticSurd(Rational(2, 3))) < 0);
    CHECK(surd_compare(QuadraticSurd::sqrt_of(5), QuadraticSurd::sqrt_of(8)) < 0);
    CHECK(surd_compare(QuadraticSurd::sqrt_of(8), QuadraticSurd::sqrt_of(221) / QuadraticSurd(5)) < 0);
    CHECK(QuadraticSurd::sqrt_of(5) != QuadraticSurd::sqrt_of(8));
    // Cross-field order decided by refinement.
    CHECK(QuadraticSurd::sqrt_of(2) + QuadraticSurd(1) > QuadraticSurd::sqrt_of(5));
    CHECK(QuadraticSurd::sqrt_of(Integer(4)) == QuadraticSurd(2));
    // Large square factors beyond trial division are still compared correctly.
    Integer p = 1000003;
    QuadraticSurd big = QuadraticSurd::sqrt_of(p * p * 7);
    CHECK(big == QuadraticSurd(Integer(p)) * QuadraticSurd::sqrt_of(7));
}

TEST_CASE("SurdSum") {
    SurdSum s = SurdSum(QuadraticSurd::sqrt_of(2)) + SurdSum(QuadraticSurd::sqrt_of(3));
    CHECK(!s.single_field());
    CHECK(s.sign() > 0);
    CHECK((s - SurdSum(QuadraticSurd::sqrt_of(3))).as_surd() == QuadraticSurd::sqrt_of(2));
    CHECK(SurdSum(QuadraticSurd::sqrt_of(8)) == SurdSum(QuadraticSurd(2) * QuadraticSurd::sqrt_of(2)));
    CHECK(s > SurdSum(Rational(314, 100)));
    CHECK(s < SurdSum(Rational(315, 100)));
}

TEST_CASE("cylinder_interval, sizes, sizer") {
    CHECK(cylinder_interval(Word{1, 1}) == std::make_pair(Rational(1, 2), Rational(2, 3)));
    CHECK(cylinder_interval(Word{2}) == std::make_pair(Rational(1, 3), Rational(1, 2)));
    CHECK(cylinder_interval(Word{1}) == std::make_pair(Rational(1, 2), Rational(1)));
    CHECK(sizes(Word{1, 1}) == Rational(1, 6));
    CHECK(sizes(Word{2}) == Rational(1, 6));
    CHECK(sizes(Word{1, 1, 2}) == Rational(1, 35));
    CHECK(sizer(Word{1, 1}) == 1);
    CHECK(sizer(Word{2, 2}) == 3);
    CHECK(sizer(Word{1}) == 0);

    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        Word w = random_word(rng, 1, 25, 3);
        auto [lo, hi] = cylinder_interval(w);
        CHECK(hi - lo == sizes(w));
        // Endpoints are [0; w] and [0; w, 1].
        std::set<Rational> ends{nested(w), nested(w, 1)};
        CHECK(ends == std::set<Rational>{lo, hi});
        double expect = std::floor(std::log(1.0 / sizes(w).get_d()));
        long r = sizer(w);
        CHECK(std::abs(static_cast<double>(r) - expect) <= 1.0);
    }
}

TEST_CASE("q_r_partition") {
    auto q1 = q_r_partition(1, 1);
    REQUIRE(q1.size() == 1);
    CHECK(q1[0] == Word({1, 1}));

    for (long r : {1L, 2L, 3L, 5L}) {
        auto part = q_r_partition(r, 2);
        for (std::size_t i = 0; i < part.size(); ++i)
            for (std::size_t j = 0; j < part.size(); ++j)
                if (i != j) CHECK_FALSE(part[j].starts_with(part[i]));
        for (const auto& w : part) {
            CHECK(sizer(w) >= r);
            if (w.size() > 1) CHECK(sizer(w.without_last()) < r);
        }
        // Every word of length 8 has exactly one prefix in the set (all parts are shorter).
        for (int bits = 0; bits < 256; ++bits) {
            Word x;
            for (int k = 0; k < 8; ++k) x.letters.push_back(((bits >> k) & 1) + 1);
            int hits = 0;
            for (const auto& w : part) hits += x.starts_with(w) ? 1 : 0;
            CHECK(hits == 1);
        }
    }
}

TEST_CASE("gap_lower_bound") {
    CHECK(gap_lower_bound(Word{1}, 2) == Rational(1, 108));
    CHECK(gap_lower_bound(Word{1, 1}, 2) == Rational(1, 300));

    std::mt19937_64 rng(3);
    for (Letter T : {2, 3, 4}) {
        for (int t = 0; t < 100; ++t) {
            Word prefix = random_word(rng, 0, 6, T);
            Letter a = std::uniform_int_distribution<Letter>(1, T)(rng);
            Letter b = std::uniform_int_distribution<Letter>(1, T - 1)(rng);
            if (b >= a) ++b;
            Word pa = prefix, pb = prefix;
            pa.push(a);
            pb.push(b);
            pa.append(random_word(rng, 0, 4, T));
            pb.append(random_word(rng, 0, 4, T));
            QuadraticSurd x = eval_periodic(pa, random_word(rng, 1, 4, T));
            QuadraticSurd y = eval_periodic(pb, random_word(rng, 1, 4, T));
            SurdSum diff = x > y ? SurdSum(x) - SurdSum(y) : SurdSum(y) - SurdSum(x);
            CHECK(diff > SurdSum(gap_lower_bound(prefix, T)));
        }
    }
}

TEST_CASE("tail_interval") {
    QuadraticSurd g = eval_periodic(Word{}, Word{1});
    IntervalBound one = tail_interval(Word{}, 1);
    CHECK(QuadraticSurd(one.lo) < g);
    CHECK(g < QuadraticSurd(one.hi));
    CHECK(one.width() < Rational(1, 1000000000));

    IntervalBound two = tail_interval(Word{}, 2);
    for (const Word& p : {Word{1}, Word{2}, Word{1, 2}, Word{2, 1}}) {
        QuadraticSurd v = eval_periodic(Word{}, p);
        CHECK(QuadraticSurd(two.lo) <= v);
        CHECK(v <= QuadraticSurd(two.hi));
    }

    IntervalBound in22 = tail_interval(Word{2, 2}, 2);
    auto [lo, hi] = cylinder_interval(Word{2, 2});
    CHECK(lo <= in22.lo);
    CHECK(in22.hi <= hi);

    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        Word pre = random_word(rng, 0, 8, 3);
        IntervalBound b = tail_interval(pre, 3);
        QuadraticSurd v = eval_periodic(pre + random_word(rng, 0, 5, 3), random_word(rng, 1, 5, 3));
        CHECK(QuadraticSurd(b.lo) <= v);
        CHECK(v <= QuadraticSurd(b.hi));
    }
}
