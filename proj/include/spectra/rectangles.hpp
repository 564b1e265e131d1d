#pragma once

#include "spectra/words.hpp"

#include <string>
#include <vector>

namespace spectra {

enum class RectClass { typical, exceptional, outside };
enum class RectSide { both, left_only, right_only };

std::string to_string(RectClass c);
std::string to_string(RectSide s);

// One rectangle I(leftWord) x I(rightWord). The left side is read outward
// from the cut in "11 coordinates": 2 1^a 2 2 ... is traded for 1^{a+2} 2 2 ...
// through [2; 2, x] + [0; 1, 1, x] = 3.
struct RectangleStep {
    Word leftWord, rightWord;
    double muLog = 0;  // log(s(left)/s(right)) / log phi
    RectClass classification = RectClass::typical;
    bool distorted = false;
    RectSide side = RectSide::both;  // how the next step refines
};

struct RectangleSchedule {
    std::vector<RectangleStep> steps;
    int n = 0;                  // 2k - 1
    double typicalBand = 0;     // n + 2n/sqrt(log n)
    double exceptionalBand = 0; // n + 5n/sqrt(log n)
    double distortionBound = 0; // (log log n)^4
    bool alternationOk = true;
    bool bandOk = true;
    // Telescoping: log of (product of block size ratios) / mu_final, and the
    // allowed slack #blocks * log 2 from the concatenation bounds.
    double telescopeError = 0;
    double telescopeSlack = 0;
    double distortionFactor = 0;  // e^{8 diam K_big(n)}
    std::string diagnostic;
};

RectangleSchedule rectangle_schedule(const CandidateWord& cand);

}  // namespace spectra
