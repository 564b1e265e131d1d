#pragma once

#include "spectra/continued_fraction.hpp"
#include "spectra/interval.hpp"
#include "spectra/surd.hpp"
#include "spectra/word.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace spectra {

// An eventually periodic point [0; pre, period, period, ...].
struct PeriodicPoint {
    Word pre;
    Word period;
    QuadraticSurd value() const { return eval_periodic(pre, period); }
};

// K(B) = { [0; g_1, g_2, ...] : g_i in B }, with per-branch data for the
// inverse branches psi_b(z) = [0; b, z].
struct GaussCantorSpec {
    std::vector<Word> alphabet;
    std::vector<ContinuantPair> continuants;
    std::vector<std::size_t> branch_length;
    std::vector<Integer> crude_lo;  // q^2
    std::vector<Integer> crude_hi;  // (2q)^2
    std::vector<Interval> sharp_lo;  // (q + q_prev min K)^2
    std::vector<Interval> sharp_hi;  // (q + q_prev max K)^2
    PeriodicPoint hull_min_point, hull_max_point;
    QuadraticSurd hull_min, hull_max;

    // Set by family(): the word the family is read after, and whether the
    // big/mod exponent was clipped at 1.
    std::string kind;
    Word prefix;
    bool clipped = false;

    std::size_t size() const { return alphabet.size(); }
};

class CantorError : public std::invalid_argument {
public:
    explicit CantorError(const std::string& what) : std::invalid_argument(what) {}
};

GaussCantorSpec build_cantor(const std::vector<Word>& alphabet, mpfr_prec_t prec = 128);

enum class DimMethod { crude, sharp };

struct DimensionBounds {
    Interval d1;  // encloses the root of sum Lambda_j^-d = 1
    Interval d2;  // encloses the root of sum lambda_j^-d = 1
    DimMethod method = DimMethod::crude;
    double tolerance = 1e-12;
    bool fell_back = false;  // crude had a branch with q = 1

    double lower() const { return d1.lo_double(); }
    double upper() const { return d2.hi_double(); }
};

DimensionBounds palis_takens(const GaussCantorSpec& spec, DimMethod method, double tolerance = 1e-12,
                             mpfr_prec_t prec = 128);

// Root in [0, 1] of sum_j rates_j^-d = 1 for rates given by their logs.
Interval power_sum_root(const std::vector<Interval>& log_rates, double tolerance);

// Construction interval psi_{b_{i1}} o ... o psi_{b_{ik}}([min K, max K]).
Interval construction_interval(const GaussCantorSpec& spec, const std::vector<std::size_t>& prefix,
                               mpfr_prec_t prec);

// sum_i |J(prefix b_i)|^d >= |J(prefix)|^d, certified in interval arithmetic.
bool refinement_inequality_check(const GaussCantorSpec& spec, const std::vector<std::size_t>& prefix, double d,
                                 mpfr_prec_t prec = 256);

// delta * 2/min K * (max K)^2 / (1 - (max K)^2)
double bounded_distortion_constant(const GaussCantorSpec& spec, double delta);
double diameter(const GaussCantorSpec& spec);

// |psi_gamma'(x) / psi_gamma'(y)| for the concatenated branch gamma.
Interval derivative_ratio(const GaussCantorSpec& spec, const std::vector<std::size_t>& gamma,
                          const QuadraticSurd& x, const QuadraticSurd& y, mpfr_prec_t prec);

struct Constants {
    double c0;  // -log log((3+sqrt 5)/2)
    double c1;  // log(phi^2)
    QuadraticSurd phi;
    Interval c0_enclosure;
    Interval c1_enclosure;
};

Constants constants(mpfr_prec_t prec = 128);

// Principal branch on [-1/e, inf).
double lambert_w(double x);

// W(r) e^{c0} / r. s (negative for infinity) only affects the error term.
double dim_closed_form(long r, long s = -1);

struct AsymptoticDimension {
    double d_main;       // 2 W(e^{c0} L) / L
    double mldiff_main;  // W(e^{c0} L) / L
};

// L = |log epsilon|; takes log epsilon directly so tiny epsilons are fine.
AsymptoticDimension d_truncated_asymptotic_log(double log_epsilon);
AsymptoticDimension d_truncated_asymptotic(double epsilon);

// W(e^{c0} x) / x
double F1(double x);

enum class FamilyKind { big, small, mod };
FamilyKind parse_family_kind(const std::string& s);
std::string to_string(FamilyKind k);

GaussCantorSpec family(long n, FamilyKind kind, mpfr_prec_t prec = 128);

struct QProduct {
    Integer exact;                // q(1^{r_1} 22 ... 22 1^{r_k})
    double estimate = 0;          // (phi/sqrt5) phi^{sum r} (3 phi^3/sqrt5)^{k-1}
    std::vector<double> E;        // E_1..E_{k-1}, then E'_k
    std::vector<double> E_second; // E''_2..E''_k
    double product_ratio = 0;     // (estimate with all factors) / exact
};

QProduct q_product_estimate(const std::vector<int>& exponents, mpfr_prec_t prec = 512);

struct BaseCase {
    QuadraticSurd exact;  // [0; 1^n, 2, 2, 1-bar]
    double main = 0;
    double scaled_residual = 0;  // |exact - main| phi^{2n}
    double ratio = 0;            // |exact - main| / |main - 1/phi|
};

BaseCase base_case(int n);

// Root d of sum_{j=0}^{s-1} phi^{-2(r+j+L) d} = 1; s < 0 means infinite.
double exp_sum_root(long r, long s, long L, double tolerance = 1e-13);

}  // namespace spectra
