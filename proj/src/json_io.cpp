#include "spectra/json_io.hpp"

#include <stdexcept>

namespace spectra {

Json to_json(const Rational& q) { return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

Rational rational_from_json(const Json& j) {
    auto part = [](const Json& v) { return v.is_string() ? Integer(v.get<std::string>()) : Integer(v.get<long>()); };
    Rational q(part(j.at("num")), part(j.at("den")));
    q.canonicalize();
    return q;
}

Json to_json(const QuadraticSurd& s) {
    return Json{{"a", s.a().get_str()},
                {"b", s.b().get_str()},
                {"c", s.c().get_str()},
                {"D", s.discriminant().get_str()},
                {"decimal", s.decimal(40)},
                {"text", s.to_string()}};
}

Json to_json(const SurdSum& s) {
    if (s.single_field()) return to_json(s.as_surd());
    Json terms = Json::array();
    for (const SurdSum::Term& t : s.terms()) terms.push_back(Json{{"coeff", to_json(t.coeff)}, {"D", t.D.get_str()}});
    return Json{{"rational", to_json(s.rational_part())},
                {"terms", terms},
                {"decimal", s.decimal(40)},
                {"text", s.to_string()}};
}

Json to_json(const WindowConstraint& w) {
    Json segs = Json::array();
    long from = 0, prev = 0;
    std::string letters;
    for (auto [i, a] : w.offsets) {
        if (!letters.empty() && i != prev + 1) {
            segs.push_back(Json{{"from", from}, {"letters", letters}});
            letters.clear();
        }
        if (letters.empty()) from = i;
        letters += std::to_string(a);
        if (a > 9) letters += ",";
        prev = i;
    }
    if (!letters.empty()) segs.push_back(Json{{"from", from}, {"letters", letters}});
    return segs;
}

Json to_json(const BiInfiniteSpec& s) {
    return Json{{"leftPeriod", format_word(s.leftPeriod)},
                {"leftTransient", format_word(s.leftTransient)},
                {"center", s.center},
                {"rightTransient", format_word(s.rightTransient)},
                {"rightPeriod", format_word(s.rightPeriod)}};
}

BiInfiniteSpec spec_from_json(const Json& j) {
    auto word = [&](const char* key) {
        return j.contains(key) ? parse_word(j.at(key).get<std::string>()) : Word{};
    };
    BiInfiniteSpec s;
    s.leftPeriod = word("leftPeriod");
    s.leftTransient = word("leftTransient");
    s.center = j.at("center").get<Letter>();
    s.rightTransient = word("rightTransient");
    s.rightPeriod = word("rightPeriod");
    s.validate();
    return s;
}

Json to_json(const CandidateWord& c) {
    Json ex = Json::object();
    for (auto [i, s] : c.exponents) ex[std::to_string(i)] = s;
    return Json{{"k", c.k}, {"M", c.M()}, {"N", c.N()}, {"exponents", ex}, {"word", format_word(c.word)}};
}

CandidateWord candidate_from_json(const Json& j) {
    const int k = j.at("k").get<int>();
    const int M = j.value("M", 2), N = j.value("N", 2);
    std::map<int, int> tails;
    if (j.contains("tails"))
        for (auto& [key, v] : j.at("tails").items()) tails[std::stoi(key)] = v.get<int>();
    return construct_candidate(k, M, N, tails);
}

Json to_json(const BranchStats& b) {
    return Json{{"explored", b.explored},   {"prunedBand", b.prunedBand}, {"prunedDominance", b.prunedDominance},
                {"accepted", b.accepted},   {"leaves", b.leaves},         {"unverified", b.unverified}};
}

Json to_json(const Certificate& c) {
    Json j{{"kind", to_string(c.kind)},
           {"word", to_json(c.word)},
           {"epsilon", to_json(c.epsilon)},
           {"radius", c.radius},
           {"verdict", to_string(c.verdict)},
           {"forcedWindow", to_json(c.forcedWindow)}};
    if (!c.direction.empty()) j["direction"] = c.direction;
    if (c.witness) {
        j["witness"] = Json{{"window", to_json(c.witness->window)},
                            {"completion", to_json(c.witness->completion)},
                            {"lambda0", to_json(c.witness->lambda0)},
                            {"mismatch", c.witness->mismatch}};
    }
    j["branchStats"] = to_json(c.branchStats);
    j["toolVersion"] = kToolVersion;
    j["replayHash"] = replay_hash(c);
    if (!c.frontier.empty()) j["frontier"] = Json::parse(c.frontier);
    j["seconds"] = c.seconds;
    return j;
}

Json to_json(const SuiteReport& r) {
    Json j{{"name", r.name}, {"passed", r.passed}, {"checked", r.checked}};
    if (!r.witness.empty()) j["witness"] = r.witness;
    if (!r.metrics.empty()) j["metrics"] = r.metrics;
    return j;
}

}  // namespace spectra
