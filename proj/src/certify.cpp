#include "spectra/certify.hpp"

#include "spectra/continued_fraction.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace spectra {

std::string to_string(CertKind k) {
    switch (k) {
        case CertKind::LocalUniqueness: return "LocalUniqueness";
        case CertKind::SelfReplication: return "SelfReplication";
        case CertKind::Isolated: return "Isolated";
        default: return "DifferenceCantor";
    }
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::certified: return "certified";
        case Verdict::counterexample: return "counterexample";
        default: return "inconclusive";
    }
}

std::string to_string(Direction d) { return d == Direction::left ? "left" : "right"; }

// ---------------------------------------------------------------------------
// Epsilon estimates and forced windows

namespace {

const Word kTwoTwo{2, 2};

// 1^{s_2 + 1} 22 1^{s_3} ... 22 1^{s_N}
Word right_after_first(const CandidateWord& c) {
    Word out;
    for (int i = 2; i <= c.N(); ++i) {
        if (i > 2) out.append(kTwoTwo);
        out.push(1, static_cast<std::size_t>(c.exponents.at(i) + (i == 2 ? 1 : 0)));
    }
    return out;
}

// 22 1^{s_-M} ... 22 1^{s_-2 + bump}
Word left_without_last(const CandidateWord& c, int bump) {
    Word out;
    for (int i = -c.M(); i <= -2; ++i) {
        out.append(kTwoTwo);
        out.push(1, static_cast<std::size_t>(c.exponents.at(i) + (i == -2 ? bump : 0)));
    }
    return out;
}

struct EpsWords {
    Word e1a, e1b, e2a, e2b, e3a, e3b;
};

EpsWords epsilon_words(const CandidateWord& c) {
    const Word wL = c.left(), wR = c.right(), w = c.word.unmarked();
    EpsWords e;
    e.e1a = Word{2} + transpose(wL) + transpose(wR) + kTwoTwo;
    e.e1b = wR + wL + kTwoTwo;
    e.e2a = right_after_first(c) + w + wL + Word{2};
    e.e2b = wR + w + left_without_last(c, 1);
    e.e3a = wR + w + wL + Word{1};
    e.e3b = Word{1} + wR + w + wL + Word{2};
    return e;
}

Word marked_concat(const Word& before, const Word& from_mark) {
    Word out = before + from_mark;
    out.mark = before.size();
    return out;
}

}  // namespace

Epsilons epsilon_estimates(const CandidateWord& c) {
    EpsWords w = epsilon_words(c);
    Epsilons e;
    e.e1 = sizes(w.e1a) + sizes(w.e1b);
    e.e2 = std::min(sizes(w.e2a), sizes(w.e2b)) / 12;
    e.e3 = std::min(sizes(w.e3a), sizes(w.e3b)) / 12;
    return e;
}

double log_epsilon2(const CandidateWord& c) {
    EpsWords w = epsilon_words(c);
    double a = -log_inverse_size(w.e2a, 128).mid_double();
    double b = -log_inverse_size(w.e2b, 128).mid_double();
    return std::min(a, b) - std::log(12.0);
}

ScheduledCandidate scheduled_candidate(int k) {
    ScheduledCandidate sc;
    sc.r = sizer(ones(static_cast<std::size_t>(2 * k - 1)));
    const double r = static_cast<double>(sc.r), lr = std::log(r);
    sc.windowHi = 2 * r * std::floor(lr * lr);
    sc.windowLo = sc.windowHi - 1.1 * r - 1.1 * r / std::sqrt(lr);
    int M = 2, N = 2;
    for (int step = 0; step < 400; ++step) {
        sc.cand = construct_candidate(k, M, N, {});
        sc.sizer_w = sizer(sc.cand.word.unmarked());
        if (static_cast<double>(sc.sizer_w) > sc.windowLo) break;
        if (step % 2 == 0)
            ++N;
        else
            ++M;
    }
    sc.inWindow = static_cast<double>(sc.sizer_w) > sc.windowLo && static_cast<double>(sc.sizer_w) <= sc.windowHi;
    return sc;
}

WindowConstraint place(const Word& marked) {
    if (!marked.mark) throw std::invalid_argument("place: word has no mark");
    WindowConstraint wc;
    const long m = static_cast<long>(*marked.mark);
    for (std::size_t i = 0; i < marked.size(); ++i) wc.offsets[static_cast<long>(i) - m] = marked[i];
    return wc;
}

WindowConstraint local_forced_window(const CandidateWord& c) {
    const Word wL = c.left(), wR = c.right();
    return place(marked_concat(kTwoTwo + wR + wL + Word{2}, Word{2} + wR + wL + kTwoTwo));
}

WindowConstraint replication_seed(const CandidateWord& c) { return local_forced_window(c); }

WindowConstraint replication_forced_window(const CandidateWord& c, Direction dir) {
    const Word wL = c.left(), wR = c.right(), w = c.word.unmarked();
    Word after = Word{2} + wR + w + left_without_last(c, 0) + kTwoTwo + ones(static_cast<std::size_t>(2 * c.k));
    WindowConstraint full = place(marked_concat(kTwoTwo + wR + w + wL + Word{2}, after));
    WindowConstraint out = replication_seed(c);
    for (auto [i, a] : full.offsets)
        if ((dir == Direction::left && i <= 0) || (dir == Direction::right && i >= 0)) out.offsets[i] = a;
    return out;
}

WindowConstraint isolation_forced_window(const CandidateWord& c) {
    const Word wL = c.left(), wR = c.right(), w = c.word.unmarked();
    return place(marked_concat(kTwoTwo + wR + w + wL + Word{2}, Word{2} + wR + w + wL + kTwoTwo));
}

// ---------------------------------------------------------------------------
// Search engine

namespace {

using Clock = std::chrono::steady_clock;

// Dyadic outer bounds of the extreme tails over {1..T}.
IntervalBound tail_bounds(Letter T, mpfr_prec_t prec) {
    Interval lo = eval_periodic(Word{}, Word({T, 1})).enclose(prec);
    Interval hi = eval_periodic(Word{}, Word({1, T})).enclose(prec);
    return {lo.lo_rational(), hi.hi_rational()};
}

struct Mp {
    mpfr_t v;
    explicit Mp(mpfr_prec_t p) { mpfr_init2(v, p); }
    Mp(const Mp&) = delete;
    Mp& operator=(const Mp&) = delete;
    ~Mp() { mpfr_clear(v); }
};

// [0; a_1, ..., a_n, t] for t in [tlo, thi] where a_j = seq[j * stride].
void cf_enclose_mp(const Letter* seq, long n, long stride, const mpfr_t tlo, const mpfr_t thi, mpfr_t lo,
                   mpfr_t hi, mpfr_t tmp) {
    mpfr_set(lo, tlo, MPFR_RNDD);
    mpfr_set(hi, thi, MPFR_RNDU);
    for (long j = n; j >= 1; --j) {
        const unsigned long a = static_cast<unsigned long>(seq[(j - 1) * stride]);
        // new lo = 1/(a + hi), new hi = 1/(a + lo)
        mpfr_add_ui(tmp, hi, a, MPFR_RNDU);
        mpfr_add_ui(hi, lo, a, MPFR_RNDD);
        mpfr_ui_div(hi, 1, hi, MPFR_RNDU);
        mpfr_ui_div(lo, 1, tmp, MPFR_RNDD);
    }
}

void cf_enclose_d(const Letter* seq, long n, long stride, double tlo, double thi, double& lo, double& hi) {
    lo = tlo;
    hi = thi;
    for (long j = n; j >= 1; --j) {
        const double a = seq[(j - 1) * stride];
        const double nlo = 1 / (a + hi), nhi = 1 / (a + lo);
        lo = nlo;
        hi = nhi;
    }
}

struct Entry {
    bool valid = false;
    long K = 0;
    long loEnd = 0, hiEnd = 0;
    std::uint64_t vLo = 0, vHi = 0;
    bool truncLo = false, truncHi = false;
    double dlo = 0, dhi = 0;
    bool haveMp = false;
    mpfr_t mlo, mhi;
};

enum class Status { open, pruned_band, pruned_dominance, accepted, leaf };

struct Frame {
    int side = 0;  // 0 left, 1 right, 2 center
    int next = 0;
    bool placed = false;
};

std::string window_string(const std::vector<Letter>& buf) {
    std::string s;
    for (Letter a : buf) s += a == 0 ? '.' : static_cast<char>('0' + a);
    return s;
}

class Engine {
public:
    Engine(const SearchProblem& p, const SearchOptions& o)
        : prob_(p), opt_(o), rl_(p.radiusLeft), rr_(p.radiusRight) {
        if (!p.seed.offsets.empty() && !p.seed.has(0)) throw std::invalid_argument("seed must contain offset 0");
        for (auto [i, a] : p.seed.offsets)
            if (i < -rl_ || i > rr_) throw std::invalid_argument("seed exceeds the radius");
        prec_ = 128 + 3 * std::max(rl_, rr_) + 64;
        const std::size_t n = static_cast<std::size_t>(rl_ + rr_ + 1);
        buf_.assign(n, 0);
        ver_.assign(n, 0);
        entries_.resize(n);
        for (Entry& e : entries_) {
            mpfr_init2(e.mlo, prec_);
            mpfr_init2(e.mhi, prec_);
        }
        IntervalBound tr = tail_bounds(p.maxLetter, prec_);
        tlo_q_ = tr.lo;
        thi_q_ = tr.hi;
        tlo_d_ = tr.lo.get_d() - 1e-15;
        thi_d_ = tr.hi.get_d() + 1e-15;
        mpfr_init2(tlo_, prec_);
        mpfr_init2(thi_, prec_);
        mpfr_set_q(tlo_, tr.lo.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(thi_, tr.hi.get_mpq_t(), MPFR_RNDU);
        // x(t) = (p + p' t) / (q + q' t) with t = T / 2^bits exactly.
        shift_ = static_cast<unsigned>(prec_);
        Integer scale = Integer(1) << shift_;
        Rational lo_s = tr.lo * Rational(scale), hi_s = tr.hi * Rational(scale);
        Tlo_ = lo_s.get_num() / lo_s.get_den();
        Thi_ = (hi_s.get_num() + hi_s.get_den() - 1) / hi_s.get_den();
        Rational check_lo(Tlo_, scale), check_hi(Thi_, scale);
        if (check_lo > tr.lo || check_hi < tr.hi) throw std::logic_error("tail rounding");
        if (p.lower) lower_ = p.lower->enclose(prec_);
        if (p.upper) upper_ = p.upper->enclose(prec_);
        for (Interval* x : {&lam0_, &xr_, &xl_}) *x = Interval(prec_);
        baseK_ = o.replay ? 32 : 48;
        for (Letter a = 1; a <= p.maxLetter; ++a) order_.push_back(a);
        if (o.replay) std::reverse(order_.begin(), order_.end());
        pR_ = {1, 0};
        qR_ = {0, 1};
        pL_ = pR_;
        qL_ = qR_;
        mpfr_init2(tmp1_, prec_);
        mpfr_init2(tmp2_, prec_);
        mpfr_init2(tmp3_, prec_);
        forcedTotal_ = static_cast<long>(p.forced.offsets.size());
    }

    ~Engine() {
        for (Entry& e : entries_) {
            mpfr_clear(e.mlo);
            mpfr_clear(e.mhi);
        }
        mpfr_clear(tlo_);
        mpfr_clear(thi_);
        mpfr_clear(tmp1_);
        mpfr_clear(tmp2_);
        mpfr_clear(tmp3_);
    }

    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    SearchOutcome run();
    bool leaf_survives();  // evaluate a fully placed window
    void place_outward(long i, Letter a);
    const std::vector<Letter>& buffer() const { return buf_; }

private:
    Letter at(long i) const { return buf_[static_cast<std::size_t>(i + rl_)]; }
    std::size_t idx(long i) const { return static_cast<std::size_t>(i + rl_); }

    void place(int side, Letter a);
    void remove(int side);
    Status evaluate();
    void compute_lambda0();
    int dominance();  // 1 prune, 0 no prune
    void recompute_double(Entry& e, long i);
    void recompute_mp(Entry& e, long i);
    long grow(long K) const { return opt_.replay ? K + K / 2 : 2 * K; }
    bool try_witness();
    std::string snapshot(const std::vector<Frame>& frames) const;
    void restore(const std::string& js, std::vector<Frame>& frames);

    const SearchProblem& prob_;
    const SearchOptions& opt_;
    long rl_, rr_;
    mpfr_prec_t prec_;
    std::vector<Letter> buf_;
    std::vector<std::uint64_t> ver_;
    std::uint64_t counter_ = 0;
    std::vector<Entry> entries_;
    bool haveCenter_ = false;
    long L_ = 0, R_ = 0;  // window is [-L_, R_] once the center is placed
    std::vector<Integer> pR_, qR_, pL_, qL_;
    Rational tlo_q_, thi_q_;
    Integer Tlo_, Thi_;
    unsigned shift_ = 0;
    double tlo_d_ = 0, thi_d_ = 0;
    mpfr_t tlo_, thi_, tmp1_, tmp2_, tmp3_;
    std::optional<Interval> lower_, upper_;
    Interval lam0_, xr_, xl_;
    long baseK_ = 48;
    std::vector<Letter> order_;
    long forcedTotal_ = 0, forcedOk_ = 0, forcedBad_ = 0;
    SearchOutcome out_;
};

void Engine::place_outward(long i, Letter a) {
    if (i == 0) {
        place(2, a);
    } else if (i < 0) {
        if (i != -L_ - 1) throw std::logic_error("place_outward: not contiguous");
        place(0, a);
    } else {
        if (i != R_ + 1) throw std::logic_error("place_outward: not contiguous");
        place(1, a);
    }
}

void Engine::place(int side, Letter a) {
    long i = 0;
    if (side == 2) {
        haveCenter_ = true;
        L_ = R_ = 0;
    } else if (side == 0) {
        i = -(++L_);
        const std::size_t n = pL_.size();
        pL_.push_back(a * pL_[n - 1] + pL_[n - 2]);
        qL_.push_back(a * qL_[n - 1] + qL_[n - 2]);
    } else {
        i = ++R_;
        const std::size_t n = pR_.size();
        pR_.push_back(a * pR_[n - 1] + pR_[n - 2]);
        qR_.push_back(a * qR_[n - 1] + qR_[n - 2]);
    }
    buf_[idx(i)] = a;
    ver_[idx(i)] = ++counter_;
    auto f = prob_.forced.offsets.find(i);
    if (f != prob_.forced.offsets.end()) (f->second == a ? forcedOk_ : forcedBad_)++;
}

void Engine::remove(int side) {
    long i = 0;
    if (side == 2) {
        haveCenter_ = false;
    } else if (side == 0) {
        i = -(L_--);
        pL_.pop_back();
        qL_.pop_back();
    } else {
        i = R_--;
        pR_.pop_back();
        qR_.pop_back();
    }
    const Letter a = buf_[idx(i)];
    auto f = prob_.forced.offsets.find(i);
    if (f != prob_.forced.offsets.end()) (f->second == a ? forcedOk_ : forcedBad_)--;
    buf_[idx(i)] = 0;
    ver_[idx(i)] = 0;
    entries_[idx(i)].valid = false;
}

void Engine::compute_lambda0() {
    auto side = [&](const std::vector<Integer>& P, const std::vector<Integer>& Q, Interval& x) {
        const std::size_t n = P.size();
        const Integer& p = P[n - 1];
        const Integer& pp = P[n - 2];
        const Integer& q = Q[n - 1];
        const Integer& qp = Q[n - 2];
        Integer num1 = (p << shift_) + pp * Tlo_, den1 = (q << shift_) + qp * Tlo_;
        Integer num2 = (p << shift_) + pp * Thi_, den2 = (q << shift_) + qp * Thi_;
        // Both endpoints of a monotone map: lo = min, hi = max.
        mpfr_set_z(tmp1_, num1.get_mpz_t(), MPFR_RNDD);
        mpfr_div_z(tmp1_, tmp1_, den1.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(tmp2_, num2.get_mpz_t(), MPFR_RNDD);
        mpfr_div_z(tmp2_, tmp2_, den2.get_mpz_t(), MPFR_RNDD);
        const bool firstSmaller = num1 * den2 <= num2 * den1;
        mpfr_t& lo = const_cast<mpfr_t&>(x.lo());
        mpfr_t& hi = const_cast<mpfr_t&>(x.hi());
        mpfr_set(lo, firstSmaller ? tmp1_ : tmp2_, MPFR_RNDD);
        const Integer& nh = firstSmaller ? num2 : num1;
        const Integer& dh = firstSmaller ? den2 : den1;
        mpfr_set_z(hi, nh.get_mpz_t(), MPFR_RNDU);
        mpfr_div_z(hi, hi, dh.get_mpz_t(), MPFR_RNDU);
    };
    side(pR_, qR_, xr_);
    side(pL_, qL_, xl_);
    Interval a0 = Interval::from_integer(at(0), prec_);
    lam0_ = a0 + xr_ + xl_;
}

void Engine::recompute_double(Entry& e, long i) {
    e.loEnd = std::max(i - e.K, -L_);
    e.hiEnd = std::min(i + e.K, R_);
    e.truncLo = i - e.K < -L_;
    e.truncHi = i + e.K > R_;
    e.vLo = ver_[idx(e.loEnd)];
    e.vHi = ver_[idx(e.hiEnd)];
    double rlo, rhi, llo, lhi;
    const Letter* base = &buf_[idx(i)];
    cf_enclose_d(base + 1, e.hiEnd - i, 1, tlo_d_, thi_d_, rlo, rhi);
    cf_enclose_d(base - 1, i - e.loEnd, -1, tlo_d_, thi_d_, llo, lhi);
    e.dlo = at(i) + rlo + llo - 1e-11;
    e.dhi = at(i) + rhi + lhi + 1e-11;
    e.haveMp = false;
    e.valid = true;
}

void Engine::recompute_mp(Entry& e, long i) {
    const mpfr_prec_t p = std::min<mpfr_prec_t>(prec_, 96 + 3 * e.K);
    Mp rlo(p), rhi(p), llo(p), lhi(p), t(p);
    const Letter* base = &buf_[idx(i)];
    cf_enclose_mp(base + 1, e.hiEnd - i, 1, tlo_, thi_, rlo.v, rhi.v, t.v);
    cf_enclose_mp(base - 1, i - e.loEnd, -1, tlo_, thi_, llo.v, lhi.v, t.v);
    mpfr_add(e.mlo, rlo.v, llo.v, MPFR_RNDD);
    mpfr_add_ui(e.mlo, e.mlo, static_cast<unsigned long>(at(i)), MPFR_RNDD);
    mpfr_add(e.mhi, rhi.v, lhi.v, MPFR_RNDU);
    mpfr_add_ui(e.mhi, e.mhi, static_cast<unsigned long>(at(i)), MPFR_RNDU);
    e.haveMp = true;
}

int Engine::dominance() {
    const double lam_hi_d = mpfr_get_d(lam0_.hi(), MPFR_RNDU);
    for (long i = -L_; i <= R_; ++i) {
        if (i == 0) continue;
        Entry& e = entries_[idx(i)];
        bool fresh = e.valid;
        if (fresh) {
            if (e.loEnd < -L_ || e.hiEnd > R_ || ver_[idx(e.loEnd)] != e.vLo || ver_[idx(e.hiEnd)] != e.vHi)
                fresh = false;
            else if ((e.truncLo && e.loEnd != -L_) || (e.truncHi && e.hiEnd != R_))
                fresh = false;
        }
        if (!fresh) {
            e.K = std::max(e.valid ? e.K : 0L, baseK_);
            recompute_double(e, i);
        }
        while (true) {
            if (e.dhi < lam_hi_d - 1e-9) break;
            if (!e.haveMp) recompute_mp(e, i);
            if (mpfr_cmp(e.mlo, lam0_.hi()) > 0) return 1;
            if (mpfr_cmp(e.mhi, lam0_.hi()) <= 0) break;
            const long full = std::max(i + L_, R_ - i);
            if (e.K >= full) break;
            e.K = std::min(grow(e.K), full);
            recompute_double(e, i);
        }
    }
    return 0;
}

Status Engine::evaluate() {
    compute_lambda0();
    if (prob_.prune || (L_ == rl_ && R_ == rr_)) {
        if (lower_ && mpfr_cmp(lam0_.hi(), lower_->lo()) <= 0) return Status::pruned_band;
        if (upper_ && mpfr_cmp(lam0_.lo(), upper_->hi()) >= 0) return Status::pruned_band;
        if (dominance()) return Status::pruned_dominance;
    }
    if (forcedTotal_ > 0 && forcedBad_ == 0 && forcedOk_ == forcedTotal_) return Status::accepted;
    if (L_ == rl_ && R_ == rr_) return Status::leaf;
    return Status::open;
}

bool Engine::leaf_survives() {
    Status s = evaluate();
    return s != Status::pruned_band && s != Status::pruned_dominance;
}

// ----- witnesses -----

struct Completion {
    Word pre, period;
};

}  // namespace

namespace detail {

// Encloses lambda_i for i in [from, to] of the spec using the letters in
// [from - pad, to + pad] and arbitrary tails outside; returns the first
// offset with lambda_i > lambda0 exactly, or nullopt.
std::optional<long> dominance_violation(const BiInfiniteSpec& spec, const SurdSum& lambda0, long from, long to,
                                        long pad, mpfr_prec_t prec, Letter maxLetter) {
    const long lo = from - pad, hi = to + pad;
    std::vector<Letter> seq(static_cast<std::size_t>(hi - lo + 1));
    for (long i = lo; i <= hi; ++i) seq[static_cast<std::size_t>(i - lo)] = spec.at(i);
    IntervalBound tr = tail_bounds(maxLetter, prec);
    Mp tlo(prec), thi(prec), t(prec);
    mpfr_set_q(tlo.v, tr.lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(thi.v, tr.hi.get_mpq_t(), MPFR_RNDU);
    const std::size_t n = seq.size();
    // right[j]: enclosure of [0; seq[j+1], ...]; left[j]: [0; seq[j-1], ...]
    std::vector<Interval> right(n, Interval(prec)), left(n, Interval(prec));
    {
        Mp a(prec), b(prec);
        mpfr_set(a.v, tlo.v, MPFR_RNDD);
        mpfr_set(b.v, thi.v, MPFR_RNDU);
        for (std::size_t j = n; j-- > 0;) {
            mpfr_set(const_cast<mpfr_t&>(right[j].lo()), a.v, MPFR_RNDD);
            mpfr_set(const_cast<mpfr_t&>(right[j].hi()), b.v, MPFR_RNDU);
            const unsigned long x = static_cast<unsigned long>(seq[j]);
            mpfr_add_ui(t.v, b.v, x, MPFR_RNDU);
            mpfr_add_ui(b.v, a.v, x, MPFR_RNDD);
            mpfr_ui_div(b.v, 1, b.v, MPFR_RNDU);
            mpfr_ui_div(a.v, 1, t.v, MPFR_RNDD);
        }
        mpfr_set(a.v, tlo.v, MPFR_RNDD);
        mpfr_set(b.v, thi.v, MPFR_RNDU);
        for (std::size_t j = 0; j < n; ++j) {
            mpfr_set(const_cast<mpfr_t&>(left[j].lo()), a.v, MPFR_RNDD);
            mpfr_set(const_cast<mpfr_t&>(left[j].hi()), b.v, MPFR_RNDU);
            const unsigned long x = static_cast<unsigned long>(seq[j]);
            mpfr_add_ui(t.v, b.v, x, MPFR_RNDU);
            mpfr_add_ui(b.v, a.v, x, MPFR_RNDD);
            mpfr_ui_div(b.v, 1, b.v, MPFR_RNDU);
            mpfr_ui_div(a.v, 1, t.v, MPFR_RNDD);
        }
    }
    Interval l0 = lambda0.enclose(prec);
    for (long i = from; i <= to; ++i) {
        const std::size_t j = static_cast<std::size_t>(i - lo);
        Interval v = Interval::from_integer(seq[j], prec) + right[j] + left[j];
        if (mpfr_cmp(v.hi(), l0.lo()) <= 0) continue;
        if (mpfr_cmp(v.lo(), l0.hi()) > 0) return i;
        if (lambda_at(spec, i) > lambda0) return i;
    }
    return std::nullopt;
}

// lambda_i <= lambda0 at every index. Both periods must have Markov value
// below lambda0; positions d letters deep into a periodic part lie within
// phi^{-2(d-1)} of a purely periodic lambda, so only a finite stretch needs
// an explicit sweep.
bool globally_dominated(const BiInfiniteSpec& spec, const SurdSum& lambda0, mpfr_prec_t prec, Letter maxLetter) {
    long depth = 0;
    for (const Word* per : {&spec.leftPeriod, &spec.rightPeriod}) {
        const SurdSum gap = lambda0 - SurdSum(markov_value_periodic(*per).value);
        if (gap.sign() <= 0) return false;
        mpfr_prec_t p = 256;
        Interval g = gap.enclose(p);
        while (mpfr_sgn(g.lo()) <= 0 && p < (1 << 16)) g = gap.enclose(p *= 2);
        if (mpfr_sgn(g.lo()) <= 0) return false;
        long e = 0;
        const double m = mpfr_get_d_2exp(&e, g.lo(), MPFR_RNDD);
        const double log2gap = std::log2(m) + static_cast<double>(e);
        const long d = 2 + static_cast<long>(std::ceil(-log2gap / (2 * std::log2(std::numbers::phi))));
        if (d > 50000) return false;
        depth = std::max(depth, d);
    }
    const long from = -static_cast<long>(spec.leftTransient.size() + spec.leftPeriod.size()) - depth;
    const long to = static_cast<long>(spec.rightTransient.size() + spec.rightPeriod.size()) + depth;
    return !dominance_violation(spec, lambda0, from, to, 200, prec, maxLetter);
}

}  // namespace detail

namespace {

bool in_band(const SurdSum& v, const SearchProblem& p) {
    if (p.lower && !(v > *p.lower)) return false;
    if (p.upper && !(v < *p.upper)) return false;
    return true;
}

std::optional<long> first_mismatch(const WindowConstraint& window, const WindowConstraint& forced) {
    for (auto [i, a] : forced.offsets) {
        auto it = window.offsets.find(i);
        if (it != window.offsets.end() && it->second != a) return i;
    }
    return std::nullopt;
}

bool Engine::try_witness() {
    Word rightW, leftW;
    for (long i = 1; i <= R_; ++i) rightW.push(at(i));
    for (long i = -1; i >= -L_; --i) leftW.push(at(i));
    auto options = [&](const Word& outward) {
        std::vector<Completion> o = {{{}, {1}}, {{2}, {1}}, {{2, 2}, {1}}, {{1, 1, 2, 2}, {1}}};
        // Periods spanning the last one or two 22-blocks continue the edge as it looks.
        std::vector<std::size_t> starts;
        for (std::size_t j = 0; j + 1 < outward.size(); ++j)
            if (outward[j] == 2 && outward[j + 1] == 2 && (j == 0 || outward[j - 1] != 2)) starts.push_back(j);
        std::vector<std::size_t> periods{prob_.periodHint, outward.size() / 2};
        for (std::size_t back : {1, 2})
            if (starts.size() > back) periods.push_back(starts.back() - starts[starts.size() - 1 - back]);
        for (std::size_t p : periods) {
            if (p == 0 || p > outward.size()) continue;
            Word per;
            for (std::size_t j = 0; j < p; ++j) per.push(outward[outward.size() - p + j]);
            o.push_back({{}, per});
        }
        return o;
    };
    WindowConstraint window;
    for (long i = -L_; i <= R_; ++i) window.offsets[i] = at(i);
    std::optional<long> mismatch = first_mismatch(window, prob_.forced);
    for (const Completion& cr : options(rightW))
        for (const Completion& cl : options(leftW)) {
            BiInfiniteSpec s;
            s.center = at(0);
            s.rightTransient = rightW + cr.pre;
            s.rightPeriod = cr.period;
            s.leftTransient = leftW + cl.pre;
            s.leftPeriod = cl.period;
            SurdSum l0 = lambda_at(s, 0);
            if (!in_band(l0, prob_)) continue;
            if (!detail::globally_dominated(s, l0, prec_, prob_.maxLetter)) continue;
            out_.witness = Witness{window, s, l0, mismatch.value_or(0)};
            return true;
        }
    return false;
}

std::string Engine::snapshot(const std::vector<Frame>& frames) const {
    nlohmann::json j;
    j["frames"] = nlohmann::json::array();
    for (const Frame& f : frames) j["frames"].push_back({f.side, f.next, f.placed});
    const BranchStats& s = out_.stats;
    j["stats"] = {s.explored, s.prunedBand, s.prunedDominance, s.accepted, s.leaves, s.unverified};
    j["radius"] = {rl_, rr_};
    return j.dump();
}

void Engine::restore(const std::string& js, std::vector<Frame>& frames) {
    nlohmann::json j = nlohmann::json::parse(js);
    if (j.at("radius").at(0).get<long>() != rl_ || j.at("radius").at(1).get<long>() != rr_)
        throw std::invalid_argument("resume: frontier was taken at a different radius");
    auto st = j.at("stats");
    BranchStats& s = out_.stats;
    s.explored = st.at(0);
    s.prunedBand = st.at(1);
    s.prunedDominance = st.at(2);
    s.accepted = st.at(3);
    s.leaves = st.at(4);
    s.unverified = st.at(5);
    for (const auto& f : j.at("frames")) {
        Frame fr{f.at(0).get<int>(), f.at(1).get<int>(), f.at(2).get<bool>()};
        if (fr.placed) place(fr.side, order_.at(static_cast<std::size_t>(fr.next - 1)));
        frames.push_back(fr);
    }
}

SearchOutcome Engine::run() {
    const auto start = Clock::now();
    std::vector<Frame> frames;

    auto choose_side = [&]() -> int {
        if (!haveCenter_) return 2;
        const bool canL = L_ < rl_, canR = R_ < rr_;
        if (!canL) return 1;
        if (!canR) return 0;
        mpfr_sub(tmp1_, xr_.hi(), xr_.lo(), MPFR_RNDN);
        mpfr_sub(tmp2_, xl_.hi(), xl_.lo(), MPFR_RNDN);
        const int c = mpfr_cmp(tmp1_, tmp2_);
        if (c == 0) return opt_.replay ? 0 : 1;
        return c > 0 ? 1 : 0;
    };

    // Returns true when the search has to stop (witness found).
    auto handle = [&](Status s) -> bool {
        switch (s) {
            case Status::pruned_band: ++out_.stats.prunedBand; return false;
            case Status::pruned_dominance: ++out_.stats.prunedDominance; return false;
            case Status::accepted: ++out_.stats.accepted; return false;
            case Status::leaf:
                ++out_.stats.leaves;
                if (prob_.collectLeaves) {
                    out_.leaves.push_back(window_string(buf_));
                    return false;
                }
                if (forcedBad_ == 0) {
                    ++out_.stats.accepted;
                    return false;
                }
                if (try_witness()) return true;
                ++out_.stats.unverified;
                return false;
            default: frames.push_back(Frame{choose_side(), 0, false}); return false;
        }
    };

    bool stop = false;
    if (!opt_.resume.empty()) {
        restore(opt_.resume, frames);
    } else {
        long lo = 0, hi = 0;
        if (!prob_.seed.offsets.empty()) {
            place(2, prob_.seed.offsets.at(0));
            while (prob_.seed.has(hi + 1)) place(1, prob_.seed.offsets.at(++hi));
            while (prob_.seed.has(lo - 1)) place(0, prob_.seed.offsets.at(--lo));
            ++out_.stats.explored;
            stop = handle(evaluate());
        } else {
            frames.push_back(Frame{2, 0, false});
        }
    }

    while (!stop && !frames.empty()) {
        if ((out_.stats.explored & 63) == 0) {
            const double secs = std::chrono::duration<double>(Clock::now() - start).count();
            if (out_.stats.explored >= opt_.budget.maxNodes || secs > opt_.budget.maxSeconds) {
                out_.verdict = Verdict::inconclusive;
                out_.frontier = snapshot(frames);
                return std::move(out_);
            }
        }
        Frame& top = frames.back();
        if (top.placed) {
            remove(top.side);
            top.placed = false;
        }
        if (top.next >= static_cast<int>(order_.size())) {
            frames.pop_back();
            continue;
        }
        const Letter a = order_[static_cast<std::size_t>(top.next++)];
        const int side = top.side;
        place(side, a);
        top.placed = true;
        ++out_.stats.explored;
        stop = handle(evaluate());
    }

    if (out_.witness)
        out_.verdict = Verdict::counterexample;
    else if (out_.stats.unverified > 0)
        out_.verdict = Verdict::inconclusive;
    else
        out_.verdict = Verdict::certified;
    return std::move(out_);
}

}  // namespace

SearchOutcome run_search(const SearchProblem& problem, const SearchOptions& opt) {
    Engine e(problem, opt);
    return e.run();
}

std::vector<std::string> brute_force_leaves(const SearchProblem& problem) {
    const long rl = problem.radiusLeft, rr = problem.radiusRight;
    std::vector<long> freePos;
    for (long i = -rl; i <= rr; ++i)
        if (!problem.seed.has(i)) freePos.push_back(i);
    if (freePos.size() > 26) throw std::invalid_argument("brute force window too large");
    const Letter T = problem.maxLetter;
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < freePos.size(); ++k) total *= static_cast<std::uint64_t>(T);
    std::vector<std::string> out;
    SearchOptions opt;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::map<long, Letter> letters = problem.seed.offsets;
        std::uint64_t c = code;
        for (long i : freePos) {
            letters[i] = 1 + static_cast<Letter>(c % static_cast<std::uint64_t>(T));
            c /= static_cast<std::uint64_t>(T);
        }
        Engine e(problem, opt);
        e.place_outward(0, letters.at(0));
        for (long i = 1; i <= rr; ++i) e.place_outward(i, letters.at(i));
        for (long i = -1; i >= -rl; --i) e.place_outward(i, letters.at(i));
        if (e.leaf_survives()) out.push_back(window_string(e.buffer()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool reverify_witness(const Witness& w, const SearchProblem& problem, long radius) {
    const SurdSum l0 = lambda_at(w.completion, 0);
    if (!(l0 == w.lambda0) || !in_band(l0, problem)) return false;
    for (long i = -radius; i <= radius; ++i)
        if (i != 0 && lambda_at(w.completion, i) > l0) return false;
    if (!detail::globally_dominated(w.completion, l0, 256, problem.maxLetter)) return false;
    for (auto [i, a] : w.window.offsets)
        if (w.completion.at(i) != a) return false;
    return first_mismatch(w.window, problem.forced).has_value();
}

// ---------------------------------------------------------------------------
// Checkers

namespace {

QuadraticSurd markov_of(const CandidateWord& c) { return markov_value_periodic(c.word.unmarked()).value; }

long default_radius(const CandidateWord& c, long r) {
    return r > 0 ? r : 3 * static_cast<long>(c.word.size());
}

Certificate finish(Certificate cert, const SearchProblem& prob, const SearchOptions& opt) {
    const auto t0 = Clock::now();
    SearchOutcome o = run_search(prob, opt);
    cert.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    cert.verdict = o.verdict;
    cert.branchStats = o.stats;
    cert.witness = o.witness;
    cert.frontier = o.frontier;
    return cert;
}

}  // namespace

SearchProblem problem_for(const Certificate& c) {
    SearchProblem p;
    const QuadraticSurd m = markov_of(c.word);
    p.radiusLeft = p.radiusRight = c.radius;
    p.periodHint = c.word.word.size();
    p.forced = c.forcedWindow;
    switch (c.kind) {
        case CertKind::LocalUniqueness:
            p.lower = SurdSum(m) - SurdSum(c.epsilon);
            p.upper = SurdSum(m) + SurdSum(c.epsilon);
            break;
        case CertKind::SelfReplication:
        case CertKind::Isolated:
            p.seed = replication_seed(c.word);
            p.upper = SurdSum(m) + SurdSum(c.epsilon);
            break;
        case CertKind::DifferenceCantor:
            p.lower = SurdSum(m);
            p.upper = SurdSum(m) + SurdSum(c.epsilon);
            break;
    }
    return p;
}

Certificate check_local_uniqueness(const CandidateWord& cand, const Rational& epsilon, const SearchOptions& opt) {
    Certificate c;
    c.kind = CertKind::LocalUniqueness;
    c.word = cand;
    c.epsilon = epsilon;
    c.radius = default_radius(cand, opt.radius);
    c.forcedWindow = local_forced_window(cand);
    return finish(c, problem_for(c), opt);
}

Certificate check_self_replication(const CandidateWord& cand, const Rational& epsilon, Direction dir,
                                   const SearchOptions& opt) {
    Certificate c;
    c.kind = CertKind::SelfReplication;
    c.word = cand;
    c.direction = to_string(dir);
    c.epsilon = epsilon;
    c.radius = default_radius(cand, opt.radius);
    c.forcedWindow = replication_forced_window(cand, dir);
    return finish(c, problem_for(c), opt);
}

Certificate check_isolated(const CandidateWord& cand, const SearchOptions& opt) {
    Certificate c;
    c.kind = CertKind::Isolated;
    c.word = cand;
    c.epsilon = epsilon_estimates(cand).e3;
    c.radius = default_radius(cand, opt.radius);
    c.forcedWindow = isolation_forced_window(cand);
    return finish(c, problem_for(c), opt);
}

AttachResult attach_cantor(const CandidateWord& cand, int samples, long radius, std::uint64_t seed) {
    const auto t0 = Clock::now();
    AttachResult res;
    Certificate& c = res.cert;
    c.kind = CertKind::DifferenceCantor;
    c.word = cand;
    c.epsilon = epsilon_estimates(cand).eps();
    c.radius = default_radius(cand, radius);
    const Word wL = cand.left(), wR = cand.right(), w = cand.word.unmarked();
    const int k = cand.k;
    const std::size_t sm1 = static_cast<std::size_t>(cand.exponents.at(-1));
    const Word connector = wR + w + left_without_last(cand, 0) + kTwoTwo + ones(sm1 - 1) + kTwoTwo;
    c.forcedWindow = place(marked_concat(Word{2}, Word{2} + connector));
    const SearchProblem prob = problem_for(c);
    const QuadraticSurd m = markov_of(cand);
    const SurdSum supBound =
        SurdSum(m) + SurdSum(sizes(wR + w + left_without_last(cand, 0) + kTwoTwo + ones(sm1 - 2)));
    const mpfr_prec_t prec = 128 + 3 * (c.radius + 200);

    std::mt19937_64 rng(seed);
    for (int t = 0; t < samples; ++t) {
        Word gamma;
        std::string label;
        const int runs = 1 + static_cast<int>(rng() % 4);
        for (int j = 0; j < runs; ++j) {
            const int e = 2 * k + static_cast<int>(rng() % 10);
            gamma.push(1, static_cast<std::size_t>(e));
            gamma.append(kTwoTwo);
            label += "1^" + std::to_string(e) + " 22 ";
        }
        const int tail = 2 * k + static_cast<int>(rng() % 6);
        label += "(1^" + std::to_string(tail) + " 22)-bar";
        BiInfiniteSpec s;
        s.center = 2;
        s.rightTransient = connector + gamma;
        s.rightPeriod = ones(static_cast<std::size_t>(tail)) + kTwoTwo;
        s.leftTransient = Word{2} + transpose(wL);
        s.leftPeriod = transpose(w);
        const SurdSum l0 = lambda_at(s, 0);
        res.values.push_back(l0);
        res.samples.push_back(label);
        ++c.branchStats.explored;
        bool ok = in_band(l0, prob);
        if (!(l0 < supBound)) res.supBoundOk = false;
        std::optional<long> bad;
        if (ok) bad = detail::dominance_violation(s, l0, -c.radius, c.radius, 200, prec, 2);
        if (ok && !bad) {
            // Far to the right only the periodic tail remains.
            if (markov_value_periodic(s.rightPeriod).value >= m) ok = false;
            else if (!detail::globally_dominated(s, l0, prec, 2)) ok = false;
        }
        if (!ok || bad) {
            ++c.branchStats.prunedDominance;
            if (!c.witness) {
                WindowConstraint win;
                for (long i = -c.radius; i <= c.radius; ++i) win.offsets[i] = s.at(i);
                c.witness = Witness{win, s, l0, bad.value_or(0)};
            }
        } else {
            ++c.branchStats.accepted;
        }
    }
    c.verdict = c.witness ? Verdict::counterexample : Verdict::certified;
    c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return res;
}

long parity_anti_monotonicity(const CandidateWord& cand, int samples, std::uint64_t seed) {
    const Word wL = cand.left(), wR = cand.right(), w = cand.word.unmarked();
    const long p = static_cast<long>(wR.size() + wL.size() + 2);
    std::mt19937_64 rng(seed);
    std::vector<std::pair<SurdSum, SurdSum>> vals;
    for (int t = 0; t < samples; ++t) {
        Word tau;
        const int blocks = 1 + static_cast<int>(rng() % 3);
        for (int j = 0; j < blocks; ++j) {
            tau.push(1, static_cast<std::size_t>(2 * cand.k + static_cast<int>(rng() % 12)));
            tau.append(kTwoTwo);
        }
        BiInfiniteSpec s;
        s.center = 2;
        s.rightTransient = wR + wL + kTwoTwo + tau;
        s.rightPeriod = Word{1};
        s.leftTransient = Word{2} + transpose(wL);
        s.leftPeriod = transpose(w);
        vals.emplace_back(lambda_at(s, p), lambda_at(s, 0));
    }
    long pairs = 0;
    for (std::size_t a = 0; a < vals.size(); ++a)
        for (std::size_t b = a + 1; b < vals.size(); ++b) {
            const SurdSum dp = vals[a].first - vals[b].first, d0 = vals[a].second - vals[b].second;
            if (dp.sign() * d0.sign() > 0) throw std::runtime_error("parity mechanism violated");
            ++pairs;
        }
    return pairs;
}

std::string replay_hash(const Certificate& c) {
    std::string s = to_string(c.kind) + "|" + letters_string(c.word.word) + "|" + c.epsilon.get_num().get_str() +
                    "/" + c.epsilon.get_den().get_str() + "|" + std::to_string(c.radius) + "|" +
                    to_string(c.verdict) + "|";
    for (auto [i, a] : c.forcedWindow.offsets) s += std::to_string(i) + ":" + std::to_string(a) + ";";
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

}  // namespace spectra
