#include "spectra/rectangles.hpp"

#include "spectra/cantor.hpp"
#include "spectra/continued_fraction.hpp"

#include <cmath>
#include <numbers>

namespace spectra {

std::string to_string(RectClass c) {
    switch (c) {
        case RectClass::typical: return "typical";
        case RectClass::exceptional: return "exceptional";
        default: return "outside";
    }
}

std::string to_string(RectSide s) {
    switch (s) {
        case RectSide::both: return "both";
        case RectSide::left_only: return "left-only";
        default: return "right-only";
    }
}

namespace {

Word block(int s) { return ones(static_cast<std::size_t>(s)) + Word{2, 2}; }

double log_inv_size(const Word& w) { return log_inverse_size(w, 192).mid_double(); }

}  // namespace

RectangleSchedule rectangle_schedule(const CandidateWord& cand) {
    const int M = cand.M(), N = cand.N();
    std::vector<Word> R, L;
    for (int i = 1; i <= N; ++i) R.push_back(block(cand.exponents.at(i)));
    for (int i = -M; i <= -1; ++i) R.push_back(block(cand.exponents.at(i)));
    L.push_back(block(cand.exponents.at(-1) + 2));
    for (int i = -2; i >= -M; --i) L.push_back(block(cand.exponents.at(i)));
    for (int i = N; i >= 1; --i) L.push_back(block(cand.exponents.at(i)));

    RectangleSchedule out;
    out.n = 2 * cand.k - 1;
    const double n = out.n, logn = std::log(n);
    out.typicalBand = n + 2 * n / std::sqrt(logn);
    out.exceptionalBand = n + 5 * n / std::sqrt(logn);
    out.distortionBound = std::pow(std::log(logn), 4);
    const double logphi = std::log(std::numbers::phi);

    std::size_t iL = 1, iR = 1;
    while (true) {
        RectangleStep st;
        for (std::size_t j = 0; j < iL; ++j) st.leftWord.append(L[j]);
        for (std::size_t j = 0; j < iR; ++j) st.rightWord.append(R[j]);
        st.muLog = (log_inv_size(st.rightWord) - log_inv_size(st.leftWord)) / logphi;
        const double a = std::abs(st.muLog);
        st.classification = a < out.typicalBand       ? RectClass::typical
                            : a < out.exceptionalBand ? RectClass::exceptional
                                                      : RectClass::outside;
        st.distorted = a > out.distortionBound;
        if (st.classification == RectClass::typical)
            st.side = RectSide::both;
        else
            st.side = st.muLog > 0 ? RectSide::left_only : RectSide::right_only;
        out.steps.push_back(st);

        const bool wantL = st.side != RectSide::right_only, wantR = st.side != RectSide::left_only;
        if ((wantL && iL == L.size()) || (wantR && iR == R.size())) break;
        if (wantL) ++iL;
        if (wantR) ++iR;
    }

    for (std::size_t i = 0; i < out.steps.size(); ++i) {
        const RectangleStep& st = out.steps[i];
        if (st.classification == RectClass::outside) {
            out.bandOk = false;
            if (out.diagnostic.empty()) out.diagnostic = "step " + std::to_string(i) + " leaves the mu band";
        }
        if (i > 0 && out.steps[i - 1].classification == RectClass::typical &&
            st.classification == RectClass::outside) {
            out.alternationOk = false;
            out.diagnostic = "typical step " + std::to_string(i - 1) + " refined into a non-exceptional rectangle";
        }
    }

    const RectangleStep& last = out.steps.back();
    double sumL = 0, sumR = 0;
    for (std::size_t j = 0; j < iL; ++j) sumL += log_inv_size(L[j]);
    for (std::size_t j = 0; j < iR; ++j) sumR += log_inv_size(R[j]);
    const double productLog = sumR - sumL;  // log of prod s(L_j) / prod s(R_j)
    out.telescopeError = std::abs(productLog - last.muLog * logphi);
    out.telescopeSlack = static_cast<double>(iL + iR - 2) * std::numbers::ln2;
    if (out.n >= 10) out.distortionFactor = std::exp(8 * diameter(family(out.n, FamilyKind::big)));
    return out;
}

}  // namespace spectra
