#pragma once

#include "spectra/certify.hpp"
#include "spectra/spectra.hpp"
#include "spectra/suites.hpp"
#include "spectra/words.hpp"

#include <json.hpp>

namespace spectra {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "spectra 1.0.0";

Json to_json(const Rational& q);  // {"num": "...", "den": "..."}
Rational rational_from_json(const Json& j);

// {"a", "b", "c", "D", "decimal", "text"}; decimals are for display only.
Json to_json(const QuadraticSurd& s);
Json to_json(const SurdSum& s);

// {"from": lo, "letters": "..."} segments of consecutive offsets.
Json to_json(const WindowConstraint& w);

// Words are written in the text grammar.
Json to_json(const BiInfiniteSpec& s);
BiInfiniteSpec spec_from_json(const Json& j);

Json to_json(const CandidateWord& c);
// {"k", "M", "N", "tails": {"2": s_2, "-2": s_-2, ...}}; M, N default to 2.
CandidateWord candidate_from_json(const Json& j);

Json to_json(const BranchStats& b);
Json to_json(const Certificate& c);
Json to_json(const SuiteReport& r);

}  // namespace spectra
