#include <doctest.h>

#include "spectra/continued_fraction.hpp"
#include "spectra/words.hpp"

#include <random>

using namespace spectra;

namespace {

const char* kExample = "2211 222211 222211 2222112211 222";

}  // namespace

TEST_CASE("transpose and semisymmetry") {
    CHECK(transpose(Word{2, 1, 1}) == Word({1, 1, 2}));
    CHECK(is_semisymmetric(parse_word("1111222")));
    CHECK(is_semisymmetric(parse_word("1211121")));
    CHECK_FALSE(is_semisymmetric(parse_word("2112122")));
    CHECK_FALSE(is_semisymmetric(parse_word("122122221")));
    std::mt19937_64 rng(1);
    for (int t = 0; t < 1000; ++t) {
        Word w;
        std::size_t n = 1 + rng() % 14;
        for (std::size_t i = 0; i < n; ++i) w.letters.push_back(1 + static_cast<Letter>(rng() % 2));
        CHECK(transpose(transpose(w)) == w);
        CHECK(continuant(w) == continuant(transpose(w)));
        CHECK(is_semisymmetric(w) == is_semisymmetric(transpose(w)));
        Word pal = w + transpose(w);
        CHECK(is_semisymmetric(pal));
    }
}

TEST_CASE("alphabet tree") {
    auto d0 = alphabet_tree(0);
    REQUIRE(d0.size() == 1);
    CHECK(d0[0].alpha == Word({2, 2}));
    CHECK(d0[0].beta == Word({1, 1}));
    auto d1 = alphabet_tree(1);
    REQUIRE(d1.size() == 2);
    CHECK(d1[0].alpha == parse_word("2211"));
    CHECK(d1[0].beta == parse_word("11"));
    CHECK(d1[1].alpha == parse_word("22"));
    CHECK(d1[1].beta == parse_word("2211"));
    for (int d = 0; d <= 6; ++d) {
        auto level = alphabet_tree(d);
        CHECK(level.size() == (std::size_t{1} << d));
        for (const auto& a : level) {
            Word ab = a.ab();
            CHECK(ab.starts_with(Word{2, 2}));
            CHECK(ab.ends_with(Word{1, 1}));
            CHECK(alphabet_at(a.path) == a);
        }
    }
}

TEST_CASE("substitute") {
    CHECK(substitute("AB", root_alphabet()) == parse_word("2211"));
    CHECK(substitute("AABB", root_alphabet()) == parse_word("22221111"));
    CHECK(substitute("", root_alphabet()).empty());
}

TEST_CASE("weak renormalization") {
    Word w = parse_word(kExample);
    REQUIRE(w.size() == 29);

    auto r0 = weakly_renormalize(w, root_alphabet());
    REQUIRE(r0.value);
    CHECK(r0.value->kernel == "ABAABAABAABABA");
    CHECK(r0.value->prefix.empty());
    CHECK(r0.value->suffix == Word({2}));

    AlphabetPair a4 = alphabet_at("VUVV");
    auto r4 = weakly_renormalize(w, a4);
    REQUIRE(r4.value);
    CHECK(r4.value->kernel == "AB");
    CHECK(r4.value->prefix == parse_word("2211"));
    CHECK(r4.value->suffix == parse_word("222"));

    auto b = weakly_renormalize(Word{1, 1}, root_alphabet());
    REQUIRE(b.value);
    CHECK(b.value->kernel == "B");
    CHECK(b.value->prefix.empty());
    CHECK(b.value->suffix.empty());

    auto bad = weakly_renormalize(Word{2, 1}, root_alphabet());
    CHECK_FALSE(bad.value);
    CHECK(bad.error == "no-parse");

    // Round trip on random words that do parse.
    std::mt19937_64 rng(9);
    int parsed = 0;
    for (int t = 0; t < 2000; ++t) {
        std::string sym;
        std::size_t n = 1 + rng() % 10;
        for (std::size_t i = 0; i < n; ++i) sym += (rng() % 2) ? 'A' : 'B';
        AlphabetPair a = alphabet_tree(static_cast<int>(rng() % 4))[0];
        Word x = substitute(sym, a);
        auto r = weakly_renormalize(x, a);
        if (!r.value) continue;
        ++parsed;
        Word back = r.value->prefix + substitute(r.value->kernel, a) + r.value->suffix;
        CHECK(back == x);
        CHECK(r.value->prefix.size() < a.max_len());
        CHECK(r.value->suffix.size() < a.max_len());
    }
    CHECK(parsed > 500);
}

TEST_CASE("renormalization chain") {
    Word w = parse_word(kExample);
    RenormChain chain = renormalization_chain(w);
    REQUIRE(chain.steps.size() == 5);
    CHECK(chain.steps[1].alphabet.path == "V");
    CHECK(chain.steps[1].kernel == "BABABABB");
    CHECK(chain.steps[1].suffix == parse_word("222"));
    CHECK(chain.steps[2].alphabet.path == "VU");
    CHECK(chain.steps[2].kernel == "AAAB");
    CHECK(chain.steps[2].prefix == parse_word("2211"));
    CHECK(chain.steps[3].alphabet.path == "VUV");
    CHECK(chain.steps[3].kernel == "AAB");
    CHECK(chain.steps[4].alphabet.path == "VUVV");
    CHECK(chain.steps[4].kernel == "AB");

    RenormChain rep = renormalization_chain(repeat(parse_word("2211"), 4));
    REQUIRE(rep.steps.size() >= 2);
    CHECK(rep.steps.back().kernel.size() <= 2);
    for (const auto& s : rep.steps)
        CHECK(s.prefix + substitute(s.kernel, s.alphabet) + s.suffix == repeat(parse_word("2211"), 4));

    RenormChain fail = renormalization_chain(Word{2, 1});
    CHECK(fail.steps.empty());
    CHECK_FALSE(fail.diagnostic.empty());
}

TEST_CASE("below-3 periods") {
    CHECK(below3_period_check(Word{1}));
    CHECK(below3_period_check(Word{2, 2}));
    CHECK(below3_period_check(parse_word("2211")));
    CHECK(below3_period_check(parse_word("1122")));
    CHECK_FALSE(below3_period_check(parse_word("22221111")));
    CHECK_FALSE(below3_period_check(parse_word("21")));
    for (const auto& a : alphabet_tree(4)) {
        CHECK(below3_period_check(a.ab()));
        CHECK_FALSE(below3_period_check(a.alpha + a.alpha + a.beta + a.beta));
    }
}

TEST_CASE("candidate construction") {
    CHECK(s_minus_one_rule(21) == 47);
    CandidateWord c = construct_candidate(21, 2, 2, {{2, 43}, {-2, 44}});
    CHECK(c.exponents.at(1) == 41);
    CHECK(c.exponents.at(-1) == 47);
    CHECK(c.word.size() == 183);
    CHECK(c.word.mark == c.left().size() + 1);
    CHECK(c.word[*c.word.mark] == 2);
    CHECK(c.word[*c.word.mark - 1] == 2);
    CHECK(c.left() + Word{2, 2} + c.right() == c.word);
    CHECK_FALSE(is_semisymmetric(c.word));
    CHECK(construct_candidate(21, 2, 2, {{2, 45}}).exponents.at(2) == 45);
    CHECK_THROWS_AS(construct_candidate(21, 2, 2, {{2, 47}}), CandidateError);
    CHECK_THROWS_AS(construct_candidate(21, 2, 2, {{2, 44}}), CandidateError);
    CHECK_THROWS_AS(construct_candidate(21, 2, 2, {{-2, 30}}), CandidateError);
    CHECK_THROWS_AS(construct_candidate(1, 2, 2, {}), CandidateError);
    // Small k is feasible under the committed s_-1 rule.
    CHECK(construct_candidate(3, 1, 2, {}).exponents.at(-1) == 9);
}
