#include "spectra/words.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace spectra {

Word transpose(const Word& w) {
    Word t(std::vector<Letter>(w.letters.rbegin(), w.letters.rend()));
    if (w.mark) t.mark = w.size() - 1 - *w.mark;
    return t;
}

bool is_palindrome(const Word& w) {
    for (std::size_t i = 0, j = w.size(); i + 1 < j; ++i, --j)
        if (w[i] != w[j - 1]) return false;
    return true;
}

bool is_semisymmetric(const Word& w) {
    for (std::size_t k = 0; k <= w.size(); ++k) {
        if (is_palindrome(w.slice(0, k)) && is_palindrome(w.slice(k, w.size() - k))) return true;
    }
    return false;
}

AlphabetPair root_alphabet() { return {Word{2, 2}, Word{1, 1}, ""}; }

AlphabetPair alphabet_at(const std::string& path) {
    AlphabetPair a = root_alphabet();
    for (char c : path) {
        if (c == 'U') {
            a = a.child_u();
        } else if (c == 'V') {
            a = a.child_v();
        } else {
            throw std::invalid_argument("alphabet path must use U and V");
        }
    }
    return a;
}

std::vector<AlphabetPair> alphabet_tree(int depth) {
    std::vector<AlphabetPair> level{root_alphabet()};
    for (int d = 0; d < depth; ++d) {
        std::vector<AlphabetPair> next;
        next.reserve(level.size() * 2);
        for (const auto& a : level) {
            next.push_back(a.child_u());
            next.push_back(a.child_v());
        }
        level = std::move(next);
    }
    return level;
}

Word substitute(const std::string& symbols, const AlphabetPair& alphabet) {
    Word out;
    for (char c : symbols) out.append(c == 'A' ? alphabet.alpha : alphabet.beta);
    return out;
}

namespace {

bool match_at(const Word& w, std::size_t pos, std::size_t end, const Word& token) {
    if (pos + token.size() > end) return false;
    for (std::size_t i = 0; i < token.size(); ++i)
        if (w[pos + i] != token[i]) return false;
    return true;
}

// Tokenizes w[from, to) over {alpha, beta}. {alpha, beta} is a code, so a
// parse, when it exists, is unique; suffix reachability resolves the case
// where one token is a prefix of the other.
std::optional<std::string> tokenize(const Word& w, std::size_t from, std::size_t to, const AlphabetPair& ab,
                                    std::size_t& reach) {
    std::size_t n = to - from;
    std::vector<char> ok(n + 1, 0);
    ok[n] = 1;
    for (std::size_t i = n; i-- > 0;) {
        if (match_at(w, from + i, to, ab.alpha) && ok[i + ab.alpha.size()]) ok[i] = 1;
        if (match_at(w, from + i, to, ab.beta) && ok[i + ab.beta.size()]) ok[i] = 1;
    }
    // Furthest prefix that tokenizes, for diagnostics.
    std::vector<char> fwd(n + 1, 0);
    fwd[0] = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (!fwd[i]) continue;
        reach = std::max(reach, from + i);
        if (match_at(w, from + i, to, ab.alpha)) fwd[i + ab.alpha.size()] = 1;
        if (match_at(w, from + i, to, ab.beta)) fwd[i + ab.beta.size()] = 1;
    }
    if (fwd[n]) reach = std::max(reach, to);
    if (!ok[0]) return std::nullopt;
    std::string out;
    std::size_t i = 0;
    while (i < n) {
        if (match_at(w, from + i, to, ab.alpha) && ok[i + ab.alpha.size()]) {
            out += 'A';
            i += ab.alpha.size();
        } else {
            out += 'B';
            i += ab.beta.size();
        }
    }
    return out;
}

}  // namespace

RenormResult weakly_renormalize(const Word& w, const AlphabetPair& alphabet) {
    RenormResult res;
    if (w.empty()) throw std::invalid_argument("empty-word");
    const Word ab = alphabet.ab();
    const std::size_t L = alphabet.max_len();
    const std::size_t n = w.size();
    // Parent data for the boundary restrictions.
    const bool is_v = !alphabet.path.empty() && alphabet.path.back() == 'V';
    const bool is_u = !alphabet.path.empty() && alphabet.path.back() == 'U';
    const std::size_t len_v = is_v ? alphabet.beta.size() - alphabet.alpha.size() : 0;  // (u, uv)
    const std::size_t len_u = is_u ? alphabet.alpha.size() - alphabet.beta.size() : 0;  // (uv, v)

    std::size_t reach = 0;
    for (std::size_t l1 = 0; l1 < L && l1 < n; ++l1) {
        Word w1 = w.slice(0, l1);
        if (!ab.ends_with(w1)) continue;
        for (std::size_t l2 = 0; l2 < L && l1 + l2 < n; ++l2) {
            Word w2 = w.slice(n - l2, l2);
            if (!ab.starts_with(w2)) continue;
            auto kernel = tokenize(w, l1, n - l2, alphabet, reach);
            if (!kernel) continue;
            if (is_v && kernel->back() == 'A' && len_v > l2) continue;
            if (is_u && kernel->front() == 'B' && len_u > l1) continue;
            res.value = Renormalization{alphabet, *kernel, w1, w2};
            return res;
        }
    }
    res.error = "no-parse";
    res.mismatch_pos = reach;
    return res;
}

RenormChain renormalization_chain(const Word& w) {
    RenormChain out;
    RenormResult root = weakly_renormalize(w, root_alphabet());
    if (!root.value) {
        out.diagnostic = "not renormalizable at the root: no-parse at position " + std::to_string(root.mismatch_pos);
        return out;
    }
    std::vector<Renormalization> best, cur;
    std::function<void(const Renormalization&)> dfs = [&](const Renormalization& node) {
        cur.push_back(node);
        if (cur.size() > best.size()) best = cur;
        if (node.kernel.size() >= 2) {
            for (const AlphabetPair& child : {node.alphabet.child_u(), node.alphabet.child_v()}) {
                RenormResult r = weakly_renormalize(w, child);
                if (r.value && r.value->kernel.size() >= 2) dfs(*r.value);
            }
        }
        cur.pop_back();
    };
    dfs(*root.value);
    out.steps = std::move(best);
    return out;
}

Word primitive_root(const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
        if (ok) return w.slice(0, d);
    }
    return w;
}

bool cyclically_equal(const Word& a, const Word& b) {
    if (a.size() != b.size()) return false;
    const std::size_t n = a.size();
    for (std::size_t r = 0; r < n; ++r) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = a[(i + r) % n] == b[i];
        if (ok) return true;
    }
    return n == 0;
}

bool below3_period_check(const Word& period) {
    if (period.empty()) throw std::invalid_argument("empty period");
    Word p = primitive_root(period);
    if (p == Word{1} || p == Word{2}) return true;
    const std::size_t n = p.size();
    bool found = false;
    std::function<void(const AlphabetPair&)> walk = [&](const AlphabetPair& a) {
        if (found) return;
        std::size_t len = a.alpha.size() + a.beta.size();
        if (len > n) return;
        if (len == n && cyclically_equal(a.ab(), p)) {
            found = true;
            return;
        }
        walk(a.child_u());
        walk(a.child_v());
    };
    walk(root_alphabet());
    return found;
}

Word CandidateWord::left() const {
    Word out;
    for (int i = -M(); i <= -1; ++i) {
        out.push(2, 2);
        out.push(1, static_cast<std::size_t>(exponents.at(i)));
    }
    return out;
}

Word CandidateWord::right() const {
    Word out;
    for (int i = 1; i <= N(); ++i) {
        if (i > 1) out.push(2, 2);
        out.push(1, static_cast<std::size_t>(exponents.at(i)));
    }
    return out;
}

int s_minus_one_rule(int k) {
    double t = std::log(std::log(2.0 * k));
    double bound = 2.0 * k + t * t * t * t;
    int s = static_cast<int>(std::ceil(bound - 1e-12));
    s = std::max(s, 2 * k + 3);
    if (s % 2 == 0) ++s;
    return s;
}

CandidateWord construct_candidate(int k, int M, int N, const std::map<int, int>& tails) {
    if (k < 2) throw CandidateError("inconsistent-parameters: k must be at least 2 so that 2k-1 >= 3");
    if (M < 1 || N < 1) throw CandidateError("inconsistent-parameters: M and N must be positive");
    CandidateWord c;
    c.k = k;
    c.exponents[1] = 2 * k - 1;
    c.exponents[-1] = s_minus_one_rule(k);
    for (int i = 2; i <= N; ++i) c.exponents[i] = 2 * k + 1;
    for (int i = 2; i <= M; ++i) c.exponents[-i] = 2 * k + 2;
    for (auto [i, s] : tails) {
        if (i == 1 || i == -1) throw CandidateError("inconsistent-parameters: s_1 and s_-1 are fixed by k");
        if (i > N || i < -M || i == 0) throw CandidateError("inconsistent-parameters: index " + std::to_string(i) + " out of range");
        c.exponents[i] = s;
    }
    for (auto [i, s] : c.exponents) {
        if (i == 1 || i == -1) continue;
        if (s < 2 * k) throw CandidateError("inconsistent-parameters: s_" + std::to_string(i) + " < 2k");
    }
    if (N >= 2) {
        int s2 = c.exponents[2];
        if (s2 % 2 == 0 || s2 < 2 * k + 1 || s2 >= c.exponents[-1])
            throw CandidateError("inconsistent-parameters: s_2 must be odd with 2k+1 <= s_2 < s_-1 = " +
                                 std::to_string(c.exponents[-1]));
    }
    Word wl = c.left();
    c.word = wl;
    c.word.push(2, 2);
    c.word.mark = wl.size() + 1;
    c.word.append(c.right());
    if (is_semisymmetric(c.word)) throw CandidateError("inconsistent-parameters: word is semisymmetric");
    return c;
}

}  // namespace spectra
