#pragma once

#include "spectra/surd.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spectra {

struct HeightedAlgebraic {
    QuadraticSurd surd;
    double height = 0;
    int degree = 1;
    std::vector<Integer> poly;  // primitive minimal polynomial, leading coefficient first
};

// Absolute logarithmic height (1/d)(log a_0 + sum log max(|conjugate|, 1)).
HeightedAlgebraic height(const QuadraticSurd& x);

// C(n, d) = 18 (n+1)! n^(n+1) (32 d)^(n+2) log(2 n d)
double baker_constant(int n, int d);

// Log of the lower bound exp(-C(n,d) A_1 ... A_n log B) for
// |gamma_1^b_1 ... gamma_n^b_n - 1|, with d the degree of the common field
// (the largest degree among the gammas). Throws std::domain_error for a
// gamma equal to 0 or 1.
double baker_log_bound(const std::vector<HeightedAlgebraic>& gammas, double B);

// Separation of differences of cylinder points with block exponents.
struct Prop31Config {
    int n = 14;
    int tailDepth = 2;
    int eMin = -1, eMax = -1;  // defaults: [n, n + floor(n / sqrt(log n))]
    int fMin = -1, fMax = -1;  // defaults: [max(1, n - floor(128 (log n)^2)), eMax + 4]
    double thresholdScale = 1;
};

struct Prop31Witness {
    std::vector<int> e;  // e_1..e_t, e_-1..e_-t
    std::vector<int> f;
    double ratio = 0;  // |U - V| / threshold
};

struct Prop31Report {
    long tuplesE = 0, tuplesF = 0;
    long comparisons = 0;  // pairs inside the double-precision screening window
    long violations = 0;
    long undecided = 0;  // the 1-bar representative violates but some tail might not
    double minRatio = 0;
    std::optional<Prop31Witness> closest;
    std::optional<Prop31Witness> witness;
};

Prop31Report prop31_oracle(const Prop31Config& cfg);

enum class DiophVariant { general, special };

struct ExpDiophConfig {
    int n = 20;
    DiophVariant variant = DiophVariant::general;
    int cMax = 12, dMax = 3, lMax = 10;
    int uvExtra = 8;
    bool enforceDistortion = true;
    bool enforceMuBand = true;
    long tauExponent = 0;  // 0: -2 sMax - ceil(n + 5n/sqrt(log n))
};

struct ExpDiophSolution {
    int s = 0, t = 0, u = 0, v = 0, c = 0, d = 0, l = 0;
    bool identity = false;
};

struct ExpDiophReport {
    long checked = 0;
    long survivors = 0;
    long violations = 0;  // survivors that are not identity solutions
    std::vector<ExpDiophSolution> examples;  // first few violations
    // Nonzero Lambda = +-mu phi^{2(s-t)} - 1 over the grid, for the Baker check.
    double minLogLambda = 0;
    double bakerLogBound = 0;
    bool bakerConsistent = true;
    std::string label = "desk-scale sanity";
};

ExpDiophReport exp_dioph_oracle(const ExpDiophConfig& cfg);

}  // namespace spectra
