#include "spectra/oracles.hpp"

#include "spectra/continued_fraction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spectra {

namespace {

double log_abs(const Integer& z) {
    long ex = 0;
    double m = mpz_get_d_2exp(&ex, z.get_mpz_t());
    return std::log(std::abs(m)) + static_cast<double>(ex) * std::numbers::ln2;
}

QuadraticSurd phi_surd() { return QuadraticSurd(Rational(1, 2), Rational(1, 2), 5); }

QuadraticSurd surd_pow(const QuadraticSurd& x, long e) {
    QuadraticSurd base = e < 0 ? QuadraticSurd(1) / x : x;
    QuadraticSurd out(1);
    for (long k = std::abs(e); k > 0; k >>= 1) {
        if (k & 1) out = out * base;
        base = base * base;
    }
    return out;
}

QuadraticSurd abs_surd(const QuadraticSurd& x) { return x.sign() < 0 ? -x : x; }

}  // namespace

HeightedAlgebraic height(const QuadraticSurd& x) {
    if (x.sign() == 0) throw std::domain_error("height of zero");
    HeightedAlgebraic h;
    h.surd = x;
    if (x.is_rational()) {
        const Rational& q = x.rational_part();
        Integer p = q.get_num(), d = q.get_den();
        h.degree = 1;
        h.poly = {d, -p};
        Integer ap = abs(p);
        h.height = log_abs(ap > d ? ap : d);
        return h;
    }
    const Integer a = x.a(), b = x.b(), c = x.c(), D = x.discriminant();
    Integer c2 = c * c, c1 = -2 * a * c, c0 = a * a - b * b * D;
    Integer g;
    mpz_gcd(g.get_mpz_t(), c2.get_mpz_t(), c1.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c0.get_mpz_t());
    c2 /= g;
    c1 /= g;
    c0 /= g;
    h.degree = 2;
    h.poly = {c2, c1, c0};
    double acc = log_abs(c2);
    for (const QuadraticSurd& conj : {x, x.conjugate()}) acc += std::max(0.0, std::log(std::abs(conj.to_double())));
    h.height = acc / 2;
    return h;
}

double baker_constant(int n, int d) {
    double fact = 1;
    for (int i = 2; i <= n + 1; ++i) fact *= i;
    return 18 * fact * std::pow(n, n + 1) * std::pow(32.0 * d, n + 2) * std::log(2.0 * n * d);
}

double baker_log_bound(const std::vector<HeightedAlgebraic>& gammas, double B) {
    if (gammas.empty()) throw std::invalid_argument("no gammas");
    int d = 1;
    for (const auto& g : gammas) {
        if (g.surd == QuadraticSurd(0) || g.surd == QuadraticSurd(1))
            throw std::domain_error("gamma must differ from 0 and 1");
        d = std::max(d, g.degree);
    }
    const int n = static_cast<int>(gammas.size());
    double prodA = 1;
    for (const auto& g : gammas) {
        double v = g.surd.to_double();
        double logabs = std::log(std::abs(v));
        double modlog = v < 0 ? std::hypot(logabs, std::numbers::pi) : std::abs(logabs);
        prodA *= std::max({g.height, modlog / d, 1.0 / d});
    }
    B = std::max(B, std::exp(1.0 / d));
    return -baker_constant(n, d) * prodA * std::log(B);
}

namespace {

// [0; 1^{r_1}, 2, 2, ..., 1^{r_t}, 2, 2, 1-bar] in double.
double block_value(const int* r, int t) {
    const double phi = std::numbers::phi;
    double x = 1 / phi;  // [0; 1-bar]
    for (int j = t - 1; j >= 0; --j) {
        x = 1 / (2 + x);
        x = 1 / (2 + x);
        for (int k = 0; k < r[j]; ++k) x = 1 / (1 + x);
    }
    return x;
}

Word block_word(const int* r, int t) {
    Word w;
    for (int j = 0; j < t; ++j) {
        w.push(1, static_cast<std::size_t>(r[j]));
        w.push(2, 2);
    }
    return w;
}

struct Tuple {
    std::vector<int> right, left;
    double value = 0;
};

std::vector<Tuple> tuples(int lo, int hi, int t) {
    std::vector<Tuple> out;
    const int width = hi - lo + 1;
    long total = 1;
    for (int i = 0; i < 2 * t; ++i) total *= width;
    std::vector<int> digits(static_cast<std::size_t>(2 * t));
    for (long code = 0; code < total; ++code) {
        long c = code;
        for (int i = 0; i < 2 * t; ++i) {
            digits[static_cast<std::size_t>(i)] = lo + static_cast<int>(c % width);
            c /= width;
        }
        Tuple tp;
        tp.right.assign(digits.begin(), digits.begin() + t);
        tp.left.assign(digits.begin() + t, digits.end());
        if (tp.right[0] == tp.left[0]) continue;
        tp.value = block_value(tp.right.data(), t) - block_value(tp.left.data(), t);
        if (tp.value <= 0) continue;
        out.push_back(std::move(tp));
    }
    return out;
}

QuadraticSurd exact_difference(const Tuple& tp, int t) {
    return eval_periodic(block_word(tp.right.data(), t), Word{1}) -
           eval_periodic(block_word(tp.left.data(), t), Word{1});
}

// Enclosure of the difference over every continuation of the blocks by 1 and
// then arbitrary letters in {1, 2}.
IntervalBound enclosure_difference(const Tuple& tp, int t) {
    IntervalBound a = tail_interval(block_word(tp.right.data(), t) + Word{1}, 2);
    IntervalBound b = tail_interval(block_word(tp.left.data(), t) + Word{1}, 2);
    return {a.lo - b.hi, a.hi - b.lo};
}

std::vector<int> joined(const Tuple& tp) {
    std::vector<int> out;
    out.insert(out.end(), tp.right.begin(), tp.right.end());
    out.insert(out.end(), tp.left.begin(), tp.left.end());
    return out;
}

}  // namespace

Prop31Report prop31_oracle(const Prop31Config& cfg) {
    const int n = cfg.n, t = cfg.tailDepth;
    if (n < 3 || t < 1) throw std::invalid_argument("prop31: need n >= 3 and tail depth >= 1");
    const double logn = std::log(static_cast<double>(n));
    const int eMin = cfg.eMin > 0 ? cfg.eMin : n;
    const int eMax = cfg.eMax > 0 ? cfg.eMax : n + static_cast<int>(std::floor(n / std::sqrt(logn)));
    const int fMin = cfg.fMin > 0 ? cfg.fMin : std::max(1, n - static_cast<int>(std::floor(128 * logn * logn)));
    const int fMax = cfg.fMax > 0 ? cfg.fMax : eMax + 4;

    std::vector<Tuple> E = tuples(eMin, eMax, t);
    std::vector<Tuple> F = tuples(fMin, fMax, t);
    std::sort(F.begin(), F.end(), [](const Tuple& a, const Tuple& b) { return a.value < b.value; });

    Prop31Report rep;
    rep.tuplesE = static_cast<long>(E.size());
    rep.tuplesF = static_cast<long>(F.size());
    rep.minRatio = std::numeric_limits<double>::infinity();

    const double phi = std::numbers::phi;
    const double base = 2 * (3 * phi - 4) / (3 * std::pow(phi, 7));
    const QuadraticSurd P = phi_surd();
    const QuadraticSurd base_exact = QuadraticSurd(2) * (QuadraticSurd(3) * P - QuadraticSurd(4)) /
                                     (QuadraticSurd(3) * surd_pow(P, 7));
    const Rational scale = Rational(static_cast<long>(std::llround(cfg.thresholdScale * 1e6)), 1000000);

    for (const Tuple& u : E) {
        const int m = std::max(u.right[0], u.left[0]);
        const double thr = cfg.thresholdScale * base * std::pow(phi, -2.0 * m);
        const double reach = 4 * thr + 1e-14;
        auto lo = std::lower_bound(F.begin(), F.end(), u.value - reach,
                                   [](const Tuple& a, double v) { return a.value < v; });
        for (auto it = lo; it != F.end() && it->value <= u.value + reach; ++it) {
            if (it->right[0] == u.right[0] && it->left[0] == u.left[0]) continue;
            ++rep.comparisons;
            const double ratio = std::abs(u.value - it->value) / thr;
            if (ratio < rep.minRatio) {
                rep.minRatio = ratio;
                rep.closest = Prop31Witness{joined(u), joined(*it), ratio};
            }
            if (ratio > 1 + 1e-6) continue;
            const QuadraticSurd thr_exact = QuadraticSurd(scale) * base_exact * surd_pow(P, -2L * m);
            const QuadraticSurd diff = abs_surd(exact_difference(u, t) - exact_difference(*it, t));
            if (diff < thr_exact) {
                ++rep.violations;
                if (!rep.witness) rep.witness = Prop31Witness{joined(u), joined(*it), ratio};
                IntervalBound a = enclosure_difference(u, t), b = enclosure_difference(*it, t);
                Rational far = std::max(abs(a.hi - b.lo), abs(a.lo - b.hi));
                if (!(QuadraticSurd(far) < thr_exact)) ++rep.undecided;
            }
        }
    }
    if (!std::isfinite(rep.minRatio)) rep.minRatio = 0;
    return rep;
}

ExpDiophReport exp_dioph_oracle(const ExpDiophConfig& cfg) {
    using LD = long double;
    const int n = cfg.n;
    if (n < 3) throw std::invalid_argument("exp_dioph: need n >= 3");
    const double logn = std::log(static_cast<double>(n));
    const int sMax = n + static_cast<int>(std::floor(n / std::sqrt(logn)));
    const int uvMax = sMax + cfg.uvExtra;
    const LD phi = (1 + std::sqrt(5.0L)) / 2;
    const LD logphi = std::log(phi);
    const LD eta = 3 * phi * phi * phi / std::sqrt(5.0L);
    const double distortion = std::pow(std::log(logn), 4) / 2;
    const double muBand = n + 5 * n / std::sqrt(logn);

    // X^-j = (-1)^j phi^-2j, indices up to uvMax + lMax + 2.
    const int top = uvMax + cfg.lMax + 4;
    std::vector<LD> X(static_cast<std::size_t>(top + 1));
    std::vector<QuadraticSurd> Xe(static_cast<std::size_t>(top + 1));
    const QuadraticSurd P = phi_surd();
    const QuadraticSurd negsq = -(P * P);
    for (int j = 0; j <= top; ++j) {
        X[static_cast<std::size_t>(j)] = ((j % 2) ? -1 : 1) * std::pow(phi, -2.0L * j);
        Xe[static_cast<std::size_t>(j)] = surd_pow(negsq, -j);
    }
    // Right-hand scale: below every mu phi^{-2t} allowed by the mu band, as the
    // large-n error term is; n substituted into it directly is vacuous.
    const long tauExp = cfg.tauExponent != 0 ? cfg.tauExponent : -2L * sMax - static_cast<long>(std::ceil(muBand));
    const LD tauBase = std::pow(phi, static_cast<LD>(tauExp));
    const QuadraticSurd tauBaseExact = surd_pow(P, tauExp);

    ExpDiophReport rep;
    auto record = [&](const ExpDiophSolution& sol) {
        ++rep.survivors;
        if (!sol.identity) {
            ++rep.violations;
            if (rep.examples.size() < 8) rep.examples.push_back(sol);
        }
    };

    if (cfg.variant == DiophVariant::special) {
        for (int l = 0; l <= cfg.lMax; ++l)
            for (int s = n; s <= sMax; ++s)
                for (int u = 1; u <= uvMax; ++u)
                    for (int v = 1; v <= uvMax; ++v) {
                        ++rep.checked;
                        const auto S = static_cast<std::size_t>(s), U = static_cast<std::size_t>(u);
                        const auto S2 = static_cast<std::size_t>(s + 2), VL = static_cast<std::size_t>(v + l);
                        LD E = X[S] - X[U] - (X[S2] - X[VL]);
                        if (std::abs(E) >= 2 * tauBase) continue;
                        QuadraticSurd Ee = Xe[S] - Xe[U] - (Xe[S2] - Xe[VL]);
                        if (abs_surd(Ee) < tauBaseExact)
                            record({s, 0, u, v, 0, 0, l, s == u && s + 2 == v + l});
                    }
        return rep;
    }

    std::vector<HeightedAlgebraic> gammas = {height(P), height(QuadraticSurd(3) * surd_pow(P, 3) /
                                                                 QuadraticSurd::sqrt_of(5)),
                                             height(QuadraticSurd(-1))};
    rep.minLogLambda = std::numeric_limits<double>::infinity();
    double maxExp = 1;
    const QuadraticSurd etaExact = QuadraticSurd(3) * surd_pow(P, 3) / QuadraticSurd::sqrt_of(5);

    for (int c = -cfg.cMax; c <= cfg.cMax; ++c)
        for (int d = -cfg.dMax; d <= cfg.dMax; ++d) {
            const LD mu = std::pow(phi, 2.0L * c) * std::pow(eta, static_cast<LD>(d));
            const LD logmuPhi = std::log(mu) / logphi;
            if (cfg.enforceMuBand && !(std::abs(static_cast<double>(logmuPhi)) < muBand)) continue;
            const LD tau = std::max<LD>(1, mu) * tauBase;
            const LD sign = (c % 2) ? -1 : 1;
            QuadraticSurd muExact;
            bool haveExact = false;
            for (int s = n; s <= sMax; ++s)
                for (int t = n; t <= sMax; ++t) {
                    const LD distLog = 2 * (t - s) * logphi - std::log(mu);
                    if (cfg.enforceDistortion && !(std::abs(static_cast<double>(distLog)) > distortion)) continue;
                    // Lambda = (-1)^(s+t+c) mu phi^(2(s-t)) - 1
                    const LD lam = (((s + t + c) % 2) ? -1 : 1) * mu * std::pow(phi, 2.0L * (s - t)) - 1;
                    const bool lamZero = d == 0 && ((s + t + c) % 2 == 0) && c + s - t == 0;
                    if (!lamZero) {
                        rep.minLogLambda = std::min(rep.minLogLambda, static_cast<double>(std::log(std::abs(lam))));
                        maxExp = std::max({maxExp, std::abs(2.0 * (c + s - t)), std::abs(1.0 * d)});
                    }
                    for (int u = 1; u <= uvMax; ++u)
                        for (int v = 1; v <= uvMax; ++v) {
                            ++rep.checked;
                            const auto S = static_cast<std::size_t>(s), U = static_cast<std::size_t>(u);
                            const auto T = static_cast<std::size_t>(t), V = static_cast<std::size_t>(v);
                            const LD E = X[S] - X[U] - sign * mu * (X[T] - X[V]);
                            if (std::abs(E) >= 2 * tau) continue;
                            if (!haveExact) {
                                muExact = surd_pow(P, 2L * c) * surd_pow(etaExact, d);
                                haveExact = true;
                            }
                            const QuadraticSurd signE(c % 2 ? -1 : 1);
                            QuadraticSurd Ee = Xe[S] - Xe[U] - signE * muExact * (Xe[T] - Xe[V]);
                            QuadraticSurd tauE = (muExact > QuadraticSurd(1) ? muExact : QuadraticSurd(1)) * tauBaseExact;
                            if (abs_surd(Ee) < tauE) record({s, t, u, v, c, d, 0, s == u && t == v});
                        }
                }
        }
    if (!std::isfinite(rep.minLogLambda)) rep.minLogLambda = 0;
    rep.bakerLogBound = baker_log_bound(gammas, maxExp);
    rep.bakerConsistent = rep.minLogLambda > rep.bakerLogBound;
    return rep;
}

}  // namespace spectra
