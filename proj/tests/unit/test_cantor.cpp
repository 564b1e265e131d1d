#include <doctest.h>

#include "spectra/cantor.hpp"

#include <cmath>
#include <random>

using namespace spectra;

TEST_CASE("build_cantor") {
    GaussCantorSpec s = build_cantor({Word{1}, Word{2}});
    CHECK(s.crude_lo[0] == 1);
    CHECK(s.crude_hi[0] == 4);
    CHECK(s.crude_lo[1] == 4);
    CHECK(s.crude_hi[1] == 16);
    // Odd branches alternate: min = [0; (2,1)-bar], max = [0; (1,2)-bar].
    CHECK(s.hull_max == eval_periodic(Word{}, Word{1, 2}));
    CHECK(s.hull_min == eval_periodic(Word{}, Word{2, 1}));

    GaussCantorSpec t = build_cantor({Word{1, 1}, Word{2, 2}});
    CHECK(t.crude_lo[0] == 4);
    CHECK(t.crude_hi[0] == 16);
    CHECK(t.crude_lo[1] == 25);
    CHECK(t.crude_hi[1] == 100);
    CHECK(t.hull_max == eval_periodic(Word{}, Word{1}));
    CHECK(t.hull_min == eval_periodic(Word{}, Word{2}));

    CHECK_THROWS_AS(build_cantor({Word{1}, Word{1, 2}}), CantorError);
    CHECK_THROWS_AS(build_cantor({Word{1, 2}}), CantorError);
    try {
        build_cantor({Word{1}, Word{1, 2}});
    } catch (const CantorError& e) {
        CHECK(std::string(e.what()).rfind("not-primitive", 0) == 0);
    }

    // Hull endpoints are attained and bound every one-step image.
    std::mt19937_64 rng(3);
    for (int t2 = 0; t2 < 30; ++t2) {
        std::vector<Word> B;
        while (B.size() < 2 + rng() % 3) {
            Word w;
            std::size_t n = 1 + rng() % 4;
            for (std::size_t i = 0; i < n; ++i) w.letters.push_back(1 + static_cast<Letter>(rng() % 3));
            bool ok = true;
            for (const Word& b : B)
                if (b.starts_with(w) || w.starts_with(b)) ok = false;
            if (ok) B.push_back(w);
        }
        GaussCantorSpec g = build_cantor(B);
        CHECK(g.hull_min < g.hull_max);
        for (std::size_t j = 0; j < g.size(); ++j) {
            for (const PeriodicPoint* p : {&g.hull_min_point, &g.hull_max_point}) {
                QuadraticSurd img = eval_periodic(B[j] + p->pre, p->period);
                CHECK(g.hull_min <= img);
                CHECK(img <= g.hull_max);
            }
            CHECK(mpfr_cmp_z(g.sharp_lo[j].lo(), g.crude_lo[j].get_mpz_t()) >= 0);
            CHECK(mpfr_cmp_z(g.sharp_hi[j].hi(), g.crude_hi[j].get_mpz_t()) <= 0);
        }
    }
}

TEST_CASE("palis_takens brackets") {
    GaussCantorSpec t = build_cantor({Word{1, 1}, Word{2, 2}});
    DimensionBounds crude = palis_takens(t, DimMethod::crude);
    // Roots of 16^-d + 100^-d = 1 and 4^-d + 25^-d = 1.
    CHECK(crude.d1.mid_double() == doctest::Approx(0.192078896577086630).epsilon(1e-11));
    CHECK(crude.d2.mid_double() == doctest::Approx(0.319365546522040056).epsilon(1e-11));
    CHECK(crude.lower() <= crude.upper());
    double d = crude.d1.mid_double();
    CHECK(std::abs(std::pow(16.0, -d) + std::pow(100.0, -d) - 1) <= 1e-10);

    DimensionBounds sharp = palis_takens(t, DimMethod::sharp);
    CHECK(crude.lower() <= sharp.lower());
    CHECK(sharp.lower() <= sharp.upper());
    CHECK(sharp.upper() <= crude.upper());

    GaussCantorSpec u = build_cantor({Word{1, 2}, Word{2, 1}});
    DimensionBounds ub = palis_takens(u, DimMethod::crude);
    CHECK(ub.lower() <= ub.upper());

    GaussCantorSpec withone = build_cantor({Word{1}, Word{2}});
    DimensionBounds fb = palis_takens(withone, DimMethod::crude);
    CHECK(fb.fell_back);
    CHECK(fb.method == DimMethod::sharp);
    CHECK(fb.lower() <= fb.upper());
    CHECK(fb.upper() <= 1.0);
}

TEST_CASE("refinement inequality") {
    GaussCantorSpec t = build_cantor({Word{1, 1}, Word{2, 2}});
    DimensionBounds b = palis_takens(t, DimMethod::sharp);
    const double d1 = b.d1.lo_double();
    CHECK(refinement_inequality_check(t, {}, d1));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        std::vector<std::size_t> p;
        std::size_t n = rng() % 8;
        for (std::size_t k = 0; k < n; ++k) p.push_back(rng() % 2);
        CHECK(refinement_inequality_check(t, p, d1));
    }
    // Well above the upper root the sums shrink.
    CHECK_FALSE(refinement_inequality_check(t, {}, b.d2.hi_double() + 0.05));
}

TEST_CASE("bounded distortion") {
    GaussCantorSpec t = build_cantor({Word{1, 1}, Word{2, 2}});
    CHECK(bounded_distortion_constant(t, 1.0) > 0);
    CHECK(bounded_distortion_constant(t, 0.5) < bounded_distortion_constant(t, 1.0));
    CHECK(bounded_distortion_constant(t, 1e-9) < 1e-8);

    const double C = bounded_distortion_constant(t, 1.0), diam = diameter(t);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 40; ++i) {
        std::vector<std::size_t> gamma;
        for (int k = 0; k < 5; ++k) gamma.push_back(rng() % 2);
        auto point = [&]() {
            Word pre;
            for (int k = 0; k < 6; ++k) pre.append(t.alphabet[rng() % 2]);
            return eval_periodic(pre, t.alphabet[rng() % 2]);
        };
        Interval r = derivative_ratio(t, gamma, point(), point(), 256);
        CHECK(r.lo_double() >= std::exp(-C * diam));
        CHECK(r.hi_double() <= std::exp(C * diam));
    }
}

TEST_CASE("constants and Lambert W") {
    Constants k = constants();
    CHECK(k.c0 == doctest::Approx(0.0383005405180297423).epsilon(1e-14));
    CHECK(k.c1 == doctest::Approx(0.962423650119206895).epsilon(1e-14));
    CHECK(lambert_w(0) == 0);
    CHECK(lambert_w(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lambert_w(1) == doctest::Approx(0.567143290409783873).epsilon(1e-14));
    for (double x : {-0.3, -0.1, 0.5, 3.0, 40.0, 1e5, 1e30}) {
        double w = lambert_w(x);
        CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * std::abs(x));
    }
    CHECK_THROWS_AS(lambert_w(-0.5), std::domain_error);

    CHECK(dim_closed_form(40) == doctest::Approx(0.0700525672433256992).epsilon(1e-12));
    for (long r = 10; r < 200; ++r) CHECK(dim_closed_form(r + 1) < dim_closed_form(r));

    AsymptoticDimension a = d_truncated_asymptotic_log(-100);
    CHECK(a.d_main == doctest::Approx(2 * lambert_w(std::exp(k.c0) * 100) / 100));
    CHECK(a.mldiff_main * 2 == a.d_main);
    CHECK_THROWS(d_truncated_asymptotic(0.5));
}

TEST_CASE("families") {
    GaussCantorSpec s = family(40, FamilyKind::small);
    CHECK(s.size() == static_cast<std::size_t>(std::floor(40 / std::sqrt(std::log(40.0)))) + 1);
    GaussCantorSpec b = family(40, FamilyKind::big);
    CHECK(b.clipped);
    CHECK(b.alphabet[0] == parse_word("221"));
    CHECK(b.hull_min <= s.hull_min);
    CHECK(s.hull_max <= b.hull_max);
    GaussCantorSpec m = family(40, FamilyKind::mod);
    CHECK(m.alphabet[0] == Word{2, 2} + ones(41));
    CHECK(m.prefix == ones(41));
    CHECK_THROWS(family(5, FamilyKind::small));
}

TEST_CASE("continuant products") {
    QProduct p = q_product_estimate({2, 2});
    CHECK(p.exact == continuant(parse_word("112211")));
    for (double e : p.E) CHECK(std::abs(e) <= 1.0 / 3);
    CHECK(p.product_ratio == doctest::Approx(1.0).epsilon(1e-30));

    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        std::vector<int> r(2 + rng() % 7);
        for (int& x : r) x = 2 + static_cast<int>(rng() % 29);
        QProduct q = q_product_estimate(r);
        for (double e : q.E) CHECK(std::abs(e) <= 1.0 / 3);
        for (double e : q.E_second) CHECK(std::abs(e) <= 1.0 / 3);
        CHECK(q.product_ratio == doctest::Approx(1.0).epsilon(1e-30));
    }
    double prev = 1;
    for (int m : {4, 8, 16, 32}) {
        QProduct q = q_product_estimate({m, m, m});
        double err = std::abs(q.estimate / q.exact.get_d() - 1);
        CHECK(err < prev);
        prev = err;
    }
    CHECK_THROWS(q_product_estimate({5}));
    CHECK_THROWS(q_product_estimate({1, 5}));
}

TEST_CASE("base case asymptotic") {
    double C = 0;
    for (int n = 5; n <= 40; ++n) {
        BaseCase b = base_case(n);
        C = std::max(C, b.ratio * std::pow((1 + std::sqrt(5.0)) / 2, 2 * n));
        CHECK(b.scaled_residual < 1e-3);
    }
    CHECK(C == doctest::Approx(0.0973).epsilon(0.01));
}

TEST_CASE("exponential sum root") {
    for (long r : {5L, 10L, 20L}) {
        CHECK(exp_sum_root(r, 8, 6) < exp_sum_root(r, 8, 0));
        CHECK(exp_sum_root(r, 4, 0) < exp_sum_root(r, 8, 0));
        CHECK(exp_sum_root(r, 8, 0) < exp_sum_root(r, -1, 0));
        double d = exp_sum_root(r, 8, 0);
        double lp = std::log((1 + std::sqrt(5.0)) / 2), acc = 0;
        for (long j = 0; j < 8; ++j) acc += std::exp(-2.0 * static_cast<double>(r + j) * d * lp);
        CHECK(acc == doctest::Approx(1.0).epsilon(1e-10));
    }
}
