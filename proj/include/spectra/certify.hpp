#pragma once

#include "spectra/spectra.hpp"
#include "spectra/words.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spectra {

enum class CertKind { LocalUniqueness, SelfReplication, Isolated, DifferenceCantor };
enum class Verdict { certified, counterexample, inconclusive };
enum class Direction { left, right };

std::string to_string(CertKind k);
std::string to_string(Verdict v);
std::string to_string(Direction d);

struct Epsilons {
    Rational e1, e2, e3;
    Rational eps() const { return e1 < e2 ? e1 : e2; }
};

Epsilons epsilon_estimates(const CandidateWord& cand);

// ε₂ for the longer candidate whose sizer lies in the window
// (2r floor((log r)^2) - 1.1r - 1.1r/sqrt(log r), 2r floor((log r)^2)] with
// r = sizer(1^{2k-1}); M = N blocks are added until the window is reached.
struct ScheduledCandidate {
    CandidateWord cand;
    long r = 0;
    long sizer_w = 0;
    double windowLo = 0, windowHi = 0;
    bool inWindow = false;
};

ScheduledCandidate scheduled_candidate(int k);

// log ε₂ computed without forming the rational (safe for long words).
double log_epsilon2(const CandidateWord& cand);

// Letters of a window indexed relative to the mark (offset 0).
WindowConstraint place(const Word& marked);

WindowConstraint local_forced_window(const CandidateWord& cand);
WindowConstraint replication_seed(const CandidateWord& cand);
WindowConstraint replication_forced_window(const CandidateWord& cand, Direction dir);
WindowConstraint isolation_forced_window(const CandidateWord& cand);

struct Budget {
    long maxNodes = 20'000'000;
    double maxSeconds = 600;
};

struct BranchStats {
    long explored = 0;
    long prunedBand = 0;
    long prunedDominance = 0;
    long accepted = 0;   // all forced positions fixed and agreeing
    long leaves = 0;     // surviving windows at the radius
    long unverified = 0; // leaves no tested completion turned into a witness
};

struct SearchOptions {
    long radius = 0;  // 0: 3|w|
    Budget budget;
    bool replay = false;  // letters tried 2 before 1, ties go left, finer refinement
    std::string resume;   // frontier JSON from an inconclusive run
};

struct Witness {
    WindowConstraint window;
    BiInfiniteSpec completion;
    SurdSum lambda0;
    long mismatch = 0;  // first offset disagreeing with the forced window
};

struct Certificate {
    CertKind kind = CertKind::LocalUniqueness;
    CandidateWord word;
    std::string direction;  // self-replication only
    Rational epsilon;
    long radius = 0;
    WindowConstraint forcedWindow;
    BranchStats branchStats;
    Verdict verdict = Verdict::inconclusive;
    std::optional<Witness> witness;
    std::string frontier;  // resumable DFS state when inconclusive
    double seconds = 0;
};

Certificate check_local_uniqueness(const CandidateWord& cand, const Rational& epsilon, const SearchOptions& opt);
Certificate check_self_replication(const CandidateWord& cand, const Rational& epsilon, Direction dir,
                                   const SearchOptions& opt);
Certificate check_isolated(const CandidateWord& cand, const SearchOptions& opt);

struct AttachResult {
    Certificate cert;
    std::vector<SurdSum> values;  // lambda_0 of each sample
    std::vector<std::string> samples;
    bool supBoundOk = true;       // every value < m + s(w_R w 22 ... 1^{s_-1 - 2})
};

AttachResult attach_cantor(const CandidateWord& cand, int samples, long radius, std::uint64_t seed = 1);

// Generic search problem: windows over {1..maxLetter} grown outward from a
// seed containing offset 0, with lambda_0 restricted to an open band.
struct SearchProblem {
    WindowConstraint seed;
    WindowConstraint forced;          // empty: enumerate every surviving leaf
    std::optional<SurdSum> lower;     // band is (lower, upper)
    std::optional<SurdSum> upper;
    long radiusLeft = 0, radiusRight = 0;
    Letter maxLetter = 2;
    std::size_t periodHint = 0;       // tried as a periodic completion of leaves
    bool prune = true;                // false: only leaves are tested
    bool collectLeaves = false;
};

struct SearchOutcome {
    Verdict verdict = Verdict::certified;
    BranchStats stats;
    std::optional<Witness> witness;
    std::vector<std::string> leaves;  // letters from -radiusLeft to radiusRight
    std::string frontier;
};

SearchOutcome run_search(const SearchProblem& problem, const SearchOptions& opt);

// Every full window at the radii, tested with the leaf predicate alone.
std::vector<std::string> brute_force_leaves(const SearchProblem& problem);

// Exact re-check of a counterexample: lambda_0 in the band, lambda_i <=
// lambda_0 for |i| <= radius, and a mismatch with the forced window.
bool reverify_witness(const Witness& w, const SearchProblem& problem, long radius);

SearchProblem problem_for(const Certificate& c);

// Parity mechanism at the right dangerous cut: over sampled continuations
// tau of ... w_L 2 2* w_R w_L 2 2 tau, lambda at the later 22 and lambda_0
// move in opposite directions. Returns the number of ordered pairs checked;
// throws on a violation.
long parity_anti_monotonicity(const CandidateWord& cand, int samples, std::uint64_t seed);

// FNV-1a over kind, word, epsilon, radius, verdict and forced window.
std::string replay_hash(const Certificate& c);

}  // namespace spectra
