#pragma once

#include "spectra/word.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <algorithm>
#include <string>
#include <vector>

namespace spectra {

Word transpose(const Word& w);
bool is_palindrome(const Word& w);
bool is_semisymmetric(const Word& w);

// Vertex of the tree generated from (22, 11) by U(u,v) = (uv, v) and
// V(u,v) = (u, uv). path is a string over {'U','V'}.
struct AlphabetPair {
    Word alpha;
    Word beta;
    std::string path;

    Word ab() const { return alpha + beta; }
    std::size_t max_len() const { return std::max(alpha.size(), beta.size()); }
    AlphabetPair child_u() const { return {alpha + beta, beta, path + "U"}; }
    AlphabetPair child_v() const { return {alpha, alpha + beta, path + "V"}; }
    friend bool operator==(const AlphabetPair& a, const AlphabetPair& b) {
        return a.alpha == b.alpha && a.beta == b.beta;
    }
};

AlphabetPair root_alphabet();
AlphabetPair alphabet_at(const std::string& path);
std::vector<AlphabetPair> alphabet_tree(int depth);

// Symbols 'A' (alpha) and 'B' (beta).
Word substitute(const std::string& symbols, const AlphabetPair& alphabet);

struct Renormalization {
    AlphabetPair alphabet;
    std::string kernel;
    Word prefix;  // w1
    Word suffix;  // w2
};

struct RenormResult {
    std::optional<Renormalization> value;
    std::string error;             // "no-parse" on failure
    std::size_t mismatch_pos = 0;  // furthest position a tokenization reached
};

// Decomposes w = w1 gamma w2 with gamma over {alpha, beta}. Among valid
// splits the shortest w1 wins, then the shortest w2.
RenormResult weakly_renormalize(const Word& w, const AlphabetPair& alphabet);

struct RenormChain {
    std::vector<Renormalization> steps;
    std::string diagnostic;
};

// Longest chain of successive children from the root along which w stays
// weakly renormalizable. Descent stops once the kernel has fewer than two
// symbols; the root is always included when it parses.
RenormChain renormalization_chain(const Word& w);

// Smallest word u with period = u^k.
Word primitive_root(const Word& w);
bool cyclically_equal(const Word& a, const Word& b);

// True iff the period is, up to rotation and repetition, 1, 2 or alpha*beta
// for an alphabet of the tree.
bool below3_period_check(const Word& period);

struct CandidateWord {
    int k = 0;
    std::map<int, int> exponents;  // i in {-M..-1, 1..N} -> s_i
    Word word;                     // marked at the central 22

    int M() const { return -exponents.begin()->first; }
    int N() const { return exponents.rbegin()->first; }
    Word left() const;   // w_L = 22 1^{s_-M} ... 22 1^{s_-1}
    Word right() const;  // w_R = 1^{s_1} 22 ... 22 1^{s_N}
};

class CandidateError : public std::runtime_error {
public:
    explicit CandidateError(const std::string& what) : std::runtime_error(what) {}
};

// Smallest odd integer >= max(2k + (log log 2k)^4, 2k + 3).
int s_minus_one_rule(int k);

// tails holds s_2..s_N and s_-2..s_-M; missing entries default to 2k+1
// (right) and 2k+2 (left).
CandidateWord construct_candidate(int k, int M, int N, const std::map<int, int>& tails);

}  // namespace spectra
