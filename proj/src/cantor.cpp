#include "spectra/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace spectra {

namespace {

// psi_b(z) = (p + p_prev z) / (q + q_prev z)
Interval apply_branch(const ContinuantPair& c, const Interval& z) {
    const mpfr_prec_t prec = z.precision();
    Interval num = Interval::from_integer(c.p, prec) + Interval::from_integer(c.p_prev, prec) * z;
    Interval den = Interval::from_integer(c.q, prec) + Interval::from_integer(c.q_prev, prec) * z;
    return num / den;
}

Interval mid_point(const Interval& x) {
    Rational m = (x.lo_rational() + x.hi_rational()) / 2;
    return Interval::from_rational(m, x.precision());
}

bool is_prefix(const Word& a, const Word& b) { return a.size() <= b.size() && b.starts_with(a); }

// The tail point used for branch b when pushing the extreme `want_max`:
// psi_b is increasing for even |b| and decreasing for odd |b|.
bool needs_max_tail(const Word& b, bool want_max) { return (b.size() % 2 == 0) == want_max; }

std::optional<std::pair<PeriodicPoint, PeriodicPoint>> hull_from_choice(const std::vector<Word>& B,
                                                                       std::size_t imax, std::size_t imin) {
    const Word& bx = B[imax];
    const Word& bn = B[imin];
    const bool max_even = bx.size() % 2 == 0, min_even = bn.size() % 2 == 0;
    PeriodicPoint mx, mn;
    if (max_even && min_even) {
        mx = {Word{}, bx};
        mn = {Word{}, bn};
    } else if (!max_even && !min_even) {
        mx = {Word{}, bx + bn};
        mn = {Word{}, bn + bx};
    } else if (!max_even) {
        mn = {Word{}, bn};
        mx = {bx, bn};
    } else {
        mx = {Word{}, bx};
        mn = {bn, bx};
    }
    const QuadraticSurd vmax = mx.value(), vmin = mn.value();
    for (const Word& b : B) {
        const PeriodicPoint& tmax = needs_max_tail(b, true) ? mx : mn;
        const PeriodicPoint& tmin = needs_max_tail(b, false) ? mx : mn;
        if (surd_compare(eval_periodic(b + tmax.pre, tmax.period), vmax) > 0) return std::nullopt;
        if (surd_compare(eval_periodic(b + tmin.pre, tmin.period), vmin) < 0) return std::nullopt;
    }
    return std::make_pair(mn, mx);
}

std::pair<PeriodicPoint, PeriodicPoint> compute_hull(const std::vector<Word>& B,
                                                     const std::vector<ContinuantPair>& cps) {
    std::size_t maxlen = 0;
    for (const Word& b : B) maxlen = std::max(maxlen, b.size());
    const auto prec = static_cast<mpfr_prec_t>(96 + 4 * maxlen);
    Interval hi = Interval::from_rational(Rational(1), prec), lo = Interval::from_rational(Rational(0), prec);
    std::size_t imax = 0, imin = 0;
    for (int it = 0; it < 200; ++it) {
        Interval best_hi(prec), best_lo(prec);
        std::size_t nmax = 0, nmin = 0;
        for (std::size_t j = 0; j < B.size(); ++j) {
            Interval vmax = mid_point(apply_branch(cps[j], needs_max_tail(B[j], true) ? hi : lo));
            Interval vmin = mid_point(apply_branch(cps[j], needs_max_tail(B[j], false) ? hi : lo));
            if (j == 0 || mpfr_cmp(vmax.lo(), best_hi.lo()) > 0) {
                best_hi = vmax;
                nmax = j;
            }
            if (j == 0 || mpfr_cmp(vmin.lo(), best_lo.lo()) < 0) {
                best_lo = vmin;
                nmin = j;
            }
        }
        const bool stable = it > 0 && nmax == imax && nmin == imin;
        imax = nmax;
        imin = nmin;
        hi = best_hi;
        lo = best_lo;
        if (stable && it > 40) break;
    }
    if (auto h = hull_from_choice(B, imax, imin)) return *h;
    for (std::size_t a = 0; a < B.size(); ++a)
        for (std::size_t b = 0; b < B.size(); ++b)
            if (auto h = hull_from_choice(B, a, b)) return *h;
    throw CantorError("hull-not-found");
}

Interval int_pow(const Interval& x, long e) {
    Interval r = Interval::from_integer(Integer(1), x.precision());
    Interval b = x;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    if (e < 0) r = Interval::from_integer(Integer(1), x.precision()) / r;
    return r;
}

}  // namespace

GaussCantorSpec build_cantor(const std::vector<Word>& alphabet, mpfr_prec_t prec) {
    if (alphabet.size() < 2) throw CantorError("degenerate");
    for (const Word& b : alphabet) {
        if (b.empty()) throw CantorError("degenerate");
        for (Letter a : b.letters)
            if (a < 1) throw CantorError("letters must be positive");
    }
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        for (std::size_t j = 0; j < alphabet.size(); ++j)
            if (i != j && is_prefix(alphabet[i], alphabet[j]))
                throw CantorError("not-primitive: " + format_word(alphabet[i]) + " is a prefix of " +
                                  format_word(alphabet[j]));
    GaussCantorSpec s;
    s.alphabet = alphabet;
    for (const Word& b : alphabet) {
        ContinuantPair c = continuants(b);
        s.continuants.push_back(c);
        s.branch_length.push_back(b.size());
        s.crude_lo.push_back(c.q * c.q);
        s.crude_hi.push_back(4 * c.q * c.q);
    }
    auto [mn, mx] = compute_hull(alphabet, s.continuants);
    s.hull_min_point = mn;
    s.hull_max_point = mx;
    s.hull_min = mn.value();
    s.hull_max = mx.value();
    const Interval kmin = s.hull_min.enclose(prec), kmax = s.hull_max.enclose(prec);
    for (const ContinuantPair& c : s.continuants) {
        Interval q = Interval::from_integer(c.q, prec), qp = Interval::from_integer(c.q_prev, prec);
        s.sharp_lo.push_back(square(q + qp * kmin));
        s.sharp_hi.push_back(square(q + qp * kmax));
    }
    return s;
}

Interval power_sum_root(const std::vector<Interval>& log_rates, double tolerance) {
    const mpfr_prec_t prec = log_rates.front().precision();
    Rational lo(0), hi(1);
    const Rational tol(tolerance);
    auto sum_at = [&](const Rational& d) {
        Interval dd = Interval::from_rational(d, prec);
        Interval s = Interval::from_integer(Integer(0), prec);
        for (const Interval& l : log_rates) s = s + exp(-(dd * l));
        return s;
    };
    Interval one = Interval::from_integer(Integer(1), prec);
    if (mpfr_cmp_ui(sum_at(hi).lo(), 1) > 0) return Interval::hull(hi, hi, prec);
    while (hi - lo > tol) {
        Rational mid = (lo + hi) / 2;
        Interval s = sum_at(mid);
        if (mpfr_cmp_ui(s.lo(), 1) > 0) {
            lo = mid;
        } else if (mpfr_cmp_ui(s.hi(), 1) < 0) {
            hi = mid;
        } else {
            break;
        }
    }
    return Interval::hull(lo, hi, prec);
}

DimensionBounds palis_takens(const GaussCantorSpec& spec, DimMethod method, double tolerance, mpfr_prec_t prec) {
    if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
    DimensionBounds out;
    out.tolerance = tolerance;
    out.method = method;
    if (method == DimMethod::crude) {
        for (const Integer& v : spec.crude_lo)
            if (v <= 1) {
                out.method = DimMethod::sharp;
                out.fell_back = true;
            }
    }
    std::vector<Interval> lo_logs, hi_logs;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        if (out.method == DimMethod::crude) {
            lo_logs.push_back(log(Interval::from_integer(spec.crude_lo[j], prec)));
            hi_logs.push_back(log(Interval::from_integer(spec.crude_hi[j], prec)));
        } else {
            if (mpfr_cmp_ui(spec.sharp_lo[j].lo(), 1) <= 0) throw CantorError("unbounded-branch");
            lo_logs.push_back(log(spec.sharp_lo[j]));
            hi_logs.push_back(log(spec.sharp_hi[j]));
        }
    }
    out.d1 = power_sum_root(hi_logs, tolerance);
    out.d2 = power_sum_root(lo_logs, tolerance);
    return out;
}

Interval construction_interval(const GaussCantorSpec& spec, const std::vector<std::size_t>& prefix,
                               mpfr_prec_t prec) {
    Interval a = spec.hull_min.enclose(prec), b = spec.hull_max.enclose(prec);
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
        a = apply_branch(spec.continuants.at(*it), a);
        b = apply_branch(spec.continuants.at(*it), b);
    }
    Interval d = b - a;
    return mpfr_sgn(d.hi()) < 0 ? -d : d;
}

bool refinement_inequality_check(const GaussCantorSpec& spec, const std::vector<std::size_t>& prefix, double d,
                                 mpfr_prec_t prec) {
    Interval dd = Interval::from_double(d, prec);
    Interval parent = pow(construction_interval(spec, prefix, prec), dd);
    Interval sum = Interval::from_integer(Integer(0), prec);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        std::vector<std::size_t> child = prefix;
        child.push_back(i);
        sum = sum + pow(construction_interval(spec, child, prec), dd);
    }
    return mpfr_cmp(sum.lo(), parent.hi()) >= 0;
}

double diameter(const GaussCantorSpec& spec) { return (SurdSum(spec.hull_max) - SurdSum(spec.hull_min)).to_double(); }

double bounded_distortion_constant(const GaussCantorSpec& spec, double delta) {
    if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
    if (surd_compare(spec.hull_max, QuadraticSurd(1)) >= 0) throw CantorError("invalid-hull");
    const double mn = spec.hull_min.to_double(), mx = spec.hull_max.to_double();
    return delta * 2.0 / mn * mx * mx / (1.0 - mx * mx);
}

Interval derivative_ratio(const GaussCantorSpec& spec, const std::vector<std::size_t>& gamma,
                          const QuadraticSurd& x, const QuadraticSurd& y, mpfr_prec_t prec) {
    Word w;
    for (std::size_t i : gamma) w.append(spec.alphabet.at(i));
    ContinuantPair c = continuants(w);
    Interval q = Interval::from_integer(c.q, prec), qp = Interval::from_integer(c.q_prev, prec);
    // |psi'(z)| = 1/(q + q_prev z)^2
    return square((q + qp * y.enclose(prec)) / (q + qp * x.enclose(prec)));
}

Constants constants(mpfr_prec_t prec) {
    Constants k;
    k.phi = (QuadraticSurd(1) + QuadraticSurd::sqrt_of(5)) / QuadraticSurd(2);
    Interval five = Interval::from_integer(Integer(5), prec);
    Interval three = Interval::from_integer(Integer(3), prec);
    Interval two = Interval::from_integer(Integer(2), prec);
    k.c0_enclosure = -log(log((three + sqrt(five)) / two));
    k.c1_enclosure = log(square(interval_phi(prec)));
    k.c0 = k.c0_enclosure.mid_double();
    k.c1 = k.c1_enclosure.mid_double();
    return k;
}

double lambert_w(double x) {
    const double em1 = -1.0 / std::exp(1.0);
    if (x < em1) throw std::domain_error("lambert_w: x < -1/e");
    if (x == 0) return 0;
    if (x == em1) return -1;
    double w;
    if (x < 1) {
        double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
        w = -1.0 + p - p * p / 3.0;
    } else {
        w = std::log(x);
        if (x > 3) w -= std::log(w);
    }
    for (int i = 0; i < 100; ++i) {
        double ew = std::exp(w);
        double f = w * ew - x;
        double fp = ew * (w + 1);
        if (fp == 0) break;
        double step = f / (fp - (w + 2) * f / (2 * w + 2));
        w -= step;
        if (std::abs(step) <= 1e-16 * (1 + std::abs(w))) break;
    }
    return w;
}

double dim_closed_form(long r, long /*s*/) {
    if (r < 2) throw std::invalid_argument("dim_closed_form needs r >= 2");
    const double c0 = constants(64).c0;
    return lambert_w(static_cast<double>(r)) * std::exp(c0) / static_cast<double>(r);
}

double F1(double x) { return lambert_w(std::exp(constants(64).c0) * x) / x; }

AsymptoticDimension d_truncated_asymptotic_log(double log_epsilon) {
    if (!(log_epsilon < -1)) throw std::domain_error("need 0 < epsilon < 1/e");
    const double L = -log_epsilon;
    const double m = F1(L);
    return {2 * m, m};
}

AsymptoticDimension d_truncated_asymptotic(double epsilon) {
    if (!(epsilon > 0)) throw std::domain_error("need 0 < epsilon < 1/e");
    return d_truncated_asymptotic_log(std::log(epsilon));
}

FamilyKind parse_family_kind(const std::string& s) {
    if (s == "big") return FamilyKind::big;
    if (s == "small") return FamilyKind::small;
    if (s == "mod") return FamilyKind::mod;
    throw std::invalid_argument("unknown family kind: " + s);
}

std::string to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::big: return "big";
        case FamilyKind::small: return "small";
        case FamilyKind::mod: return "mod";
    }
    return "?";
}

GaussCantorSpec family(long n, FamilyKind kind, mpfr_prec_t prec) {
    if (n < 10) throw std::invalid_argument("family needs n >= 10");
    const double ln = std::log(static_cast<double>(n));
    std::vector<Word> B;
    Word prefix;
    bool clipped = false;
    switch (kind) {
        case FamilyKind::big: {
            long m = n - static_cast<long>(std::floor(128 * ln * ln));
            if (m < 1) {
                m = 1;
                clipped = true;
            }
            B = {Word{2, 2} + ones(static_cast<std::size_t>(m)), Word{1}};
            prefix = ones(static_cast<std::size_t>(m));
            break;
        }
        case FamilyKind::mod:
            B = {Word{2, 2} + ones(static_cast<std::size_t>(n + 1)), Word{1}};
            prefix = ones(static_cast<std::size_t>(n + 1));
            break;
        case FamilyKind::small: {
            const long top = n + static_cast<long>(std::floor(static_cast<double>(n) / std::sqrt(ln)));
            for (long j = n; j <= top; ++j) B.push_back(ones(static_cast<std::size_t>(j)) + Word{2, 2});
            break;
        }
    }
    GaussCantorSpec s = build_cantor(B, prec);
    s.kind = to_string(kind);
    s.prefix = prefix;
    s.clipped = clipped;
    return s;
}

QProduct q_product_estimate(const std::vector<int>& r, mpfr_prec_t prec) {
    const std::size_t k = r.size();
    if (k < 2) throw std::invalid_argument("q_product_estimate needs k >= 2");
    for (int x : r)
        if (x < 2) throw std::invalid_argument("q_product_estimate needs r_i >= 2");
    auto word_upto = [&](std::size_t j) {
        Word w;
        for (std::size_t i = 0; i < j; ++i) {
            if (i) w.push(2, 2);
            w.push(1, static_cast<std::size_t>(r[i]));
        }
        return w;
    };
    const Interval phi = interval_phi(prec);
    const Interval one = Interval::from_integer(Integer(1), prec);
    const Interval sqrt5 = sqrt(Interval::from_integer(Integer(5), prec));
    const Interval three = Interval::from_integer(Integer(3), prec);
    auto Z = [&](const Integer& z) { return Interval::from_integer(z, prec); };

    // E'_1..E'_k and E''_2..E''_k, 1-based.
    std::vector<Interval> Ep(k + 1, Interval(prec)), Epp(k + 1, Interval(prec));
    Ep[1] = int_pow(phi, -2);
    if (r[0] % 2) Ep[1] = -Ep[1];
    for (std::size_t j = 1; j < k; ++j) {
        ContinuantPair c = continuants(word_upto(j));
        Interval qk = Z(c.q), qkm = Z(c.q_prev);
        Epp[j + 1] = int_pow(phi, 2 * r[j - 1]) * (qkm - qk / phi) / (three * qk);
        Interval x0 = Z(2 * c.q + c.q_prev), x1 = Z(5 * c.q + 2 * c.q_prev);
        Interval A = (x0 / phi + x1) / sqrt5, Bc = (x0 * phi - x1) / sqrt5;
        Ep[j + 1] = (Bc / A) * int_pow(phi, -2);
        if ((r[j] + 1) % 2) Ep[j + 1] = -Ep[j + 1];
    }
    long sum_r = 0;
    for (int x : r) sum_r += x;
    Interval main = phi / sqrt5 * int_pow(phi, sum_r) *
                    int_pow(three * int_pow(phi, 3) / sqrt5, static_cast<long>(k) - 1);
    QProduct out;
    out.exact = continuant(word_upto(k));
    out.estimate = main.mid_double();
    Interval prod = main;
    for (std::size_t i = 1; i < k; ++i) {
        Interval scale = int_pow(phi, 2 * r[i - 1]);
        Interval f = (one + Ep[i] / scale) * (one + Epp[i + 1] / scale);
        out.E.push_back((scale * (sqrt(f) - one)).mid_double());
        prod = prod * f;
    }
    prod = prod * (one + Ep[k] / int_pow(phi, 2 * r[k - 1]));
    out.E.push_back(Ep[k].mid_double());
    for (std::size_t i = 2; i <= k; ++i) out.E_second.push_back(Epp[i].mid_double());
    out.product_ratio = (prod / Z(out.exact)).mid_double();
    return out;
}

BaseCase base_case(int n) {
    if (n < 1) throw std::invalid_argument("base_case needs n >= 1");
    const mpfr_prec_t prec = 128 + 4 * static_cast<mpfr_prec_t>(n);
    BaseCase b;
    b.exact = eval_periodic(ones(static_cast<std::size_t>(n)) + Word{2, 2}, Word{1});
    const Interval phi = interval_phi(prec);
    const Interval one = Interval::from_integer(Integer(1), prec);
    Interval coef = Interval::from_integer(Integer(2), prec) * (Interval::from_integer(Integer(3), prec) * phi -
                                                                Interval::from_integer(Integer(4), prec)) /
                    (Interval::from_integer(Integer(3), prec) * int_pow(phi, 4));
    Interval corr = coef * int_pow(phi, -(2L * n - 2));
    if (n % 2 == 0) corr = -corr;  // (-1)^{n+1}
    Interval inv_phi = one / phi;
    Interval main = inv_phi + corr;
    Interval diff = b.exact.enclose(prec) - main;
    if (mpfr_sgn(diff.lo()) < 0 && mpfr_sgn(diff.hi()) <= 0) diff = -diff;
    b.main = main.mid_double();
    b.scaled_residual = (diff * int_pow(phi, 2L * n)).mid_double();
    Interval gap = main - inv_phi;
    if (mpfr_sgn(gap.hi()) <= 0) gap = -gap;
    b.ratio = (diff / gap).mid_double();
    return b;
}

double exp_sum_root(long r, long s, long L, double tolerance) {
    const double lp = std::log((1 + std::sqrt(5.0)) / 2);
    auto f = [&](double d) {
        if (s < 0) return std::exp(-2.0 * static_cast<double>(r + L) * d * lp) / (1 - std::exp(-2.0 * d * lp));
        double acc = 0;
        for (long j = 0; j < s; ++j) acc += std::exp(-2.0 * static_cast<double>(r + j + L) * d * lp);
        return acc;
    };
    double lo = 0, hi = 1;
    if (s < 0) lo = 1e-300;
    if (f(hi) > 1) return 1;
    while (hi - lo > tolerance) {
        double mid = 0.5 * (lo + hi);
        (f(mid) > 1 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace spectra
