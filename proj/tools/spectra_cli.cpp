#include "cli_support.hpp"

#include "spectra/cantor.hpp"
#include "spectra/certify.hpp"
#include "spectra/json_io.hpp"
#include "spectra/oracles.hpp"
#include "spectra/rectangles.hpp"
#include "spectra/suites.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace spectra;
using namespace spectra::cli;

namespace {

Json interval_json(const Interval& i) { return Json::array({i.lo_double(), i.hi_double()}); }

std::string fmt(double x, const char* spec = "%.12g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

Json renorm_json(const Renormalization& r) {
    return Json{{"alpha", format_word(r.alphabet.alpha)},
                {"beta", format_word(r.alphabet.beta)},
                {"path", r.alphabet.path},
                {"kernel", r.kernel},
                {"w1", format_word(r.prefix)},
                {"w2", format_word(r.suffix)}};
}

std::vector<Word> parse_alphabet(const std::string& text) {
    std::vector<Word> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_word(item));
    if (out.empty()) throw UsageError("empty alphabet");
    return out;
}

Json dims_json(const GaussCantorSpec& spec, const std::string& method, const Config& cfg) {
    const DimMethod m = method == "crude" ? DimMethod::crude : DimMethod::sharp;
    const DimensionBounds b = palis_takens(spec, m, cfg.bisectionTol, cfg.precisionBits);
    return Json{{"method", m == DimMethod::crude ? "crude" : "sharp"},
                {"d1", interval_json(b.d1)},
                {"d2", interval_json(b.d2)},
                {"fellBack", b.fell_back},
                {"hullMin", to_json(spec.hull_min)},
                {"hullMax", to_json(spec.hull_max)}};
}

Json family_json(const GaussCantorSpec& spec) {
    Json words = Json::array();
    for (const Word& w : spec.alphabet) words.push_back(format_word(w));
    return Json{{"kind", spec.kind},
                {"prefix", format_word(spec.prefix)},
                {"clipped", spec.clipped},
                {"size", spec.size()},
                {"alphabet", words}};
}

GaussCantorSpec block_family(long r, const Config& cfg) {
    std::vector<Word> alphabet;
    for (long j = r; j <= 2 * r; ++j) alphabet.push_back(ones(j) + Word{2, 2});
    return build_cantor(alphabet, cfg.precisionBits);
}

// Rows eps_log, d_main, mldiff_main, d1, d2 where d1 <= d2 bracket
// dim K(B_r) for B_r = {1^j 22 : r <= j <= 2r}, r = ceil(e^{c0} |log eps|).
int run_sweep(const std::string& range, const std::string& file, const Config& cfg) {
    AppendCsv csv(file, {"eps_log", "d_main", "mldiff_main", "d1", "d2"});
    std::set<std::string> done(csv.existing_keys().begin(), csv.existing_keys().end());
    const double c0 = constants().c0;
    for (double e : parse_range(range)) {
        if (e >= 0) throw UsageError("eps_log values must be negative");
        const std::string key = fmt(e, "%.6g");
        if (done.count(key)) continue;
        const AsymptoticDimension a = d_truncated_asymptotic_log(e);
        const long r = static_cast<long>(std::ceil(std::exp(c0) * -e));
        const DimensionBounds b = palis_takens(block_family(r, cfg), DimMethod::sharp, cfg.bisectionTol,
                                               cfg.precisionBits);
        log(cfg, "sweep: eps_log " + key + " r " + std::to_string(r));
        csv.row({key, fmt(a.d_main), fmt(a.mldiff_main), fmt(b.lower()), fmt(b.upper())});
    }
    return ok;
}

CandidateWord candidate_arg(const std::string& arg) {
    try {
        return candidate_from_json(read_json_arg(arg));
    } catch (const Json::exception& e) {
        throw UsageError(std::string("bad candidate JSON: ") + e.what());
    }
}

std::map<int, int> parse_tails(const std::string& text, int M, int N) {
    std::map<int, int> tails;
    if (text.empty()) return tails;
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) items.push_back(item);
    // i=s pairs, or s_2..s_N followed by s_-2..s_-M.
    std::vector<int> order;
    for (int i = 2; i <= N; ++i) order.push_back(i);
    for (int i = 2; i <= M; ++i) order.push_back(-i);
    for (std::size_t n = 0; n < items.size(); ++n) {
        const auto eq = items[n].find('=');
        if (eq != std::string::npos) {
            tails[std::stoi(items[n].substr(0, eq))] = std::stoi(items[n].substr(eq + 1));
        } else {
            if (n >= order.size()) throw UsageError("too many tail exponents");
            tails[order[n]] = std::stoi(items[n]);
        }
    }
    return tails;
}

int verdict_exit(Verdict v) {
    switch (v) {
    case Verdict::certified: return ok;
    case Verdict::counterexample: return violation;
    case Verdict::inconclusive: return budget;
    }
    return ok;
}

std::string read_resume(const std::string& path) {
    if (path.empty()) return "";
    Json j = read_json_arg(path);
    if (j.contains("frontier")) return j.at("frontier").dump();
    return j.dump();
}

struct CertifyArgs {
    std::string candidate, epsilon, direction = "both", resume;
    long radius = 0, budgetNodes = 0;
    double seconds = 0;
    bool replay = false;
    int samples = 50;
};

Rational epsilon_arg(const std::string& text, const Epsilons& e, const Rational& fallback) {
    if (text.empty()) return fallback;
    if (text == "e1") return e.e1;
    if (text == "e2") return e.e2;
    if (text == "eps") return e.eps();
    SurdSum v = parse_value(text);
    if (!v.terms().empty() || v.rational_part() <= 0) throw UsageError("epsilon must be a positive rational");
    return v.rational_part();
}

int run_certify(const std::string& kind, const CertifyArgs& a, const Config& cfg) {
    const CandidateWord cand = candidate_arg(a.candidate);
    SearchOptions opt;
    opt.radius = a.radius;
    opt.replay = a.replay;
    opt.budget.maxNodes = a.budgetNodes > 0 ? a.budgetNodes : cfg.searchBudgetNodes;
    opt.budget.maxSeconds = a.seconds > 0 ? a.seconds : cfg.searchBudgetSeconds;
    opt.resume = read_resume(a.resume);
    log(cfg, "certify " + kind + ": k=" + std::to_string(cand.k) + " |w|=" + std::to_string(cand.word.size()));

    if (kind == "attach") {
        AttachResult r = attach_cantor(cand, a.samples, a.radius, cfg.seed);
        Json values = Json::array();
        for (std::size_t i = 0; i < r.values.size(); ++i)
            values.push_back(Json{{"sample", r.samples[i]}, {"lambda0", to_json(r.values[i])}});
        Json j = to_json(r.cert);
        j["supBoundOk"] = r.supBoundOk;
        j["samples"] = values;
        emit(j, cfg.outputFormat);
        return r.supBoundOk ? verdict_exit(r.cert.verdict) : violation;
    }
    if (kind == "isolate") {
        Certificate c = check_isolated(cand, opt);
        emit(to_json(c), cfg.outputFormat);
        return verdict_exit(c.verdict);
    }
    const Epsilons e = epsilon_estimates(cand);
    if (kind == "local") {
        Certificate c = check_local_uniqueness(cand, epsilon_arg(a.epsilon, e, e.e1), opt);
        emit(to_json(c), cfg.outputFormat);
        return verdict_exit(c.verdict);
    }
    std::vector<Direction> dirs;
    if (a.direction == "left" || a.direction == "both") dirs.push_back(Direction::left);
    if (a.direction == "right" || a.direction == "both") dirs.push_back(Direction::right);
    if (dirs.empty()) throw UsageError("direction must be left, right or both");
    if (dirs.size() > 1 && !opt.resume.empty()) throw UsageError("--resume needs a single --direction");
    Json out = Json::array();
    int worst = ok;
    for (Direction d : dirs) {
        Certificate c = check_self_replication(cand, epsilon_arg(a.epsilon, e, e.e2), d, opt);
        out.push_back(to_json(c));
        const int code = verdict_exit(c.verdict);
        if (code == violation || (code == budget && worst == ok)) worst = code;
    }
    emit(out.size() == 1 ? out[0] : out, cfg.outputFormat);
    return worst;
}

Json prop31_json(const Prop31Report& r) {
    auto wit = [](const Prop31Witness& w) { return Json{{"e", w.e}, {"f", w.f}, {"ratio", w.ratio}}; };
    Json j{{"tuplesE", r.tuplesE},   {"tuplesF", r.tuplesF},       {"comparisons", r.comparisons},
           {"violations", r.violations}, {"undecided", r.undecided}, {"minRatio", r.minRatio}};
    if (r.closest) j["closest"] = wit(*r.closest);
    if (r.witness) j["witness"] = wit(*r.witness);
    return j;
}

Json expdioph_json(const ExpDiophReport& r) {
    Json ex = Json::array();
    for (const ExpDiophSolution& s : r.examples)
        ex.push_back(Json{{"s", s.s}, {"t", s.t}, {"u", s.u}, {"v", s.v}, {"c", s.c}, {"d", s.d}, {"l", s.l}});
    return Json{{"label", r.label},
                {"checked", r.checked},
                {"survivors", r.survivors},
                {"violations", r.violations},
                {"examples", ex},
                {"minLogLambda", r.minLogLambda},
                {"bakerLogBound", r.bakerLogBound},
                {"bakerConsistent", r.bakerConsistent}};
}

// Enumerates candidates with every free tail exponent in [default, default + spread]
// and counts those with a distorted rectangle after the first.
Json scan_candidates(int k, int M, int N, int spread) {
    std::vector<int> idx;
    for (int i = 2; i <= N; ++i) idx.push_back(i);
    for (int i = 2; i <= M; ++i) idx.push_back(-i);
    std::vector<int> offset(idx.size(), 0);
    long candidates = 0, distorted = 0, steps = 0, distortedSteps = 0, rejected = 0;
    while (true) {
        std::map<int, int> tails;
        for (std::size_t n = 0; n < idx.size(); ++n) tails[idx[n]] = 2 * k + (idx[n] > 0 ? 1 : 2) + offset[n];
        try {
            RectangleSchedule s = rectangle_schedule(construct_candidate(k, M, N, tails));
            ++candidates;
            // The first rectangle is distorted by the choice of s_-1.
            bool any = false;
            for (std::size_t i = 1; i < s.steps.size(); ++i) {
                ++steps;
                distortedSteps += s.steps[i].distorted;
                any = any || s.steps[i].distorted;
            }
            distorted += any;
        } catch (const CandidateError&) {
            ++rejected;
        }
        std::size_t n = 0;
        while (n < idx.size() && ++offset[n] > spread) offset[n++] = 0;
        if (n == idx.size()) break;
    }
    return Json{{"k", k},
                {"M", M},
                {"N", N},
                {"spread", spread},
                {"candidates", candidates},
                {"rejected", rejected},
                {"distortedCandidates", distorted},
                {"distortedFraction", candidates ? double(distorted) / candidates : 0.0},
                {"rectangleSteps", steps},
                {"distortedSteps", distortedSteps},
                {"note", "small-scale enumeration, no statistical claim"}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markov and Lagrange spectra toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    std::string configPath, format;
    long precision = 0;
    long seed = -1;
    app.add_option("--config", configPath, "key=value config file");
    app.add_option("--format", format, "json, csv or text");
    app.add_option("--precision", precision, "working precision in bits");
    app.add_option("--seed", seed, "seed for randomized steps");
    app.add_flag("--quiet,-q", cfg.quiet, "suppress progress messages");

    std::function<int()> action;

    // cf
    auto* cf = app.add_subcommand("cf", "continued fraction data of a finite or periodic word");
    std::string cfWord, cfPre, cfPeriod;
    cf->add_option("word", cfWord, "finite word");
    cf->add_option("--pre", cfPre, "preperiod");
    cf->add_option("--period", cfPeriod, "period");
    cf->callback([&] {
        action = [&] {
            if (!cfPeriod.empty()) {
                emit(Json{{"value", to_json(eval_periodic(parse_word(cfPre), parse_word(cfPeriod)))}}, cfg.outputFormat);
                return int(ok);
            }
            if (cfWord.empty()) throw UsageError("cf needs a word or --period");
            const Word w = parse_word(cfWord);
            const ContinuantPair c = continuants(w);
            const auto [lo, hi] = cylinder_interval(w);
            emit(Json{{"word", format_word(w)},
                      {"p", c.p.get_str()},
                      {"q", c.q.get_str()},
                      {"pPrev", c.p_prev.get_str()},
                      {"qPrev", c.q_prev.get_str()},
                      {"value", to_json(eval_finite(w))},
                      {"cylinder", Json{{"lo", to_json(lo)}, {"hi", to_json(hi)}}},
                      {"size", to_json(sizes(w))},
                      {"sizer", sizer(w)}},
                 cfg.outputFormat);
            return int(ok);
        };
    });

    // markov
    auto* markov = app.add_subcommand("markov", "Markov value of a periodic sequence");
    std::string period;
    markov->add_option("--period", period, "period word")->required();
    markov->callback([&] {
        action = [&] {
            const MarkovValue m = markov_value_periodic(parse_word(period));
            emit(Json{{"period", format_word(parse_word(period))},
                      {"value", m.value.to_string()},
                      {"decimal", m.value.decimal(40)},
                      {"position", m.position},
                      {"surd", to_json(m.value)}},
                 cfg.outputFormat);
            return int(ok);
        };
    });

    // lagrange
    auto* lagrange = app.add_subcommand("lagrange", "limsup of lambda_n for an eventually periodic sequence");
    std::string specArg;
    lagrange->add_option("--spec", specArg, "BiInfiniteSpec JSON, inline or a file")->required();
    lagrange->callback([&] {
        action = [&] {
            BiInfiniteSpec s;
            try {
                s = spec_from_json(read_json_arg(specArg));
            } catch (const Json::exception& e) {
                throw UsageError(std::string("bad spec JSON: ") + e.what());
            }
            const QuadraticSurd v = lagrange_value(s);
            emit(Json{{"spec", to_json(s)}, {"value", v.to_string()}, {"decimal", v.decimal(40)}, {"surd", to_json(v)}},
                 cfg.outputFormat);
            return int(ok);
        };
    });

    // sigma
    auto* sigma = app.add_subcommand("sigma", "length-n factors of sequences with Markov value <= t");
    std::string tText, sigmaOut;
    int sigmaN = 4, deepen = 8;
    sigma->add_option("--t", tText, "threshold, e.g. 2.99 or sqrt(12)")->required();
    sigma->add_option("--n", sigmaN, "word length")->check(CLI::PositiveNumber);
    sigma->add_option("--deepen", deepen, "window radius")->check(CLI::NonNegativeNumber);
    sigma->add_option("--out", sigmaOut, "csv or json");
    sigma->callback([&] {
        action = [&] {
            const SigmaResult r = enumerate_sigma(parse_value(tText), sigmaN, deepen);
            if (sigmaOut == "csv" || (sigmaOut.empty() && cfg.outputFormat == "csv")) {
                std::cout << "word\n";
                for (const Word& w : r.words) std::cout << letters_string(w) << '\n';
                return int(ok);
            }
            Json words = Json::array();
            for (const Word& w : r.words) words.push_back(letters_string(w));
            emit(Json{{"n", sigmaN}, {"deepen", deepen}, {"stabilized", r.stabilized}, {"caveat", r.caveat},
                      {"words", words}},
                 "json");
            return int(ok);
        };
    });

    // word
    auto* word = app.add_subcommand("word", "word combinatorics");
    word->require_subcommand(1);
    std::string wordArg;
    int renormDepth = -1;
    auto* semisym = word->add_subcommand("semisym", "semisymmetry test");
    semisym->add_option("word", wordArg)->required();
    semisym->callback([&] {
        action = [&] {
            const Word w = parse_word(wordArg);
            emit(Json{{"word", format_word(w)}, {"semisymmetric", is_semisymmetric(w)}, {"palindrome", is_palindrome(w)}},
                 cfg.outputFormat);
            return int(ok);
        };
    });
    auto* transp = word->add_subcommand("transpose", "reversed word");
    transp->add_option("word", wordArg)->required();
    transp->callback([&] {
        action = [&] {
            const Word w = parse_word(wordArg);
            emit(Json{{"word", format_word(w)}, {"transpose", format_word(transpose(w))}}, cfg.outputFormat);
            return int(ok);
        };
    });
    auto* renorm = word->add_subcommand("renorm", "weak renormalization chain");
    renorm->add_option("word", wordArg)->required();
    renorm->add_option("--depth", renormDepth, "keep at most this many steps");
    renorm->callback([&] {
        action = [&] {
            const RenormChain c = renormalization_chain(parse_word(wordArg));
            Json steps = Json::array();
            for (const Renormalization& r : c.steps) {
                if (renormDepth >= 0 && static_cast<int>(steps.size()) >= renormDepth) break;
                steps.push_back(renorm_json(r));
            }
            emit(Json{{"steps", steps}, {"diagnostic", c.diagnostic}}, "json");
            return int(ok);
        };
    });
    auto* cand = word->add_subcommand("candidate", "build a candidate word");
    int candK = 3, candM = 2, candN = 2;
    std::string tailsText;
    cand->add_option("--k", candK)->required()->check(CLI::PositiveNumber);
    cand->add_option("--M", candM)->check(CLI::Range(1, 1000));
    cand->add_option("--N", candN)->check(CLI::Range(1, 1000));
    cand->add_option("--tails", tailsText, "s2,s3,...,s-2,s-3,... or i=s pairs");
    cand->callback([&] {
        action = [&] {
            const std::map<int, int> tails = parse_tails(tailsText, candM, candN);
            Json j = to_json(construct_candidate(candK, candM, candN, tails));
            Json t = Json::object();
            for (auto [i, s] : tails) t[std::to_string(i)] = s;
            j["tails"] = t;
            emit(j, "json");
            return int(ok);
        };
    });

    // dim
    auto* dim = app.add_subcommand("dim", "dimension bounds of Gauss-Cantor sets");
    dim->require_subcommand(0, 1);
    std::string alphabetText, method = "sharp", kind = "big", range, outFile;
    long famN = 40;
    double tol = 0;
    dim->add_option("--alphabet", alphabetText, "words separated by ';'");
    dim->add_option("--method", method)->check(CLI::IsMember({"crude", "sharp"}));
    dim->add_option("--tol", tol, "bisection tolerance");
    auto* dimFamily = dim->add_subcommand("family", "bounds for K_big, K_small or K_mod");
    dimFamily->add_option("--n", famN)->required()->check(CLI::PositiveNumber);
    dimFamily->add_option("--kind", kind)->check(CLI::IsMember({"big", "small", "mod"}));
    dimFamily->add_option("--method", method)->check(CLI::IsMember({"crude", "sharp"}));
    auto* dimSweep = dim->add_subcommand("sweep", "CSV sweep over log epsilon");
    dimSweep->add_option("--eps-log-range", range, "a:b:step")->required();
    dimSweep->add_option("--out", outFile, "CSV file to append to (stdout when omitted or 'csv')");
    dim->callback([&] {
        if (tol > 0) cfg.bisectionTol = tol;
        if (dimFamily->parsed()) {
            action = [&] {
                const GaussCantorSpec s = family(famN, parse_family_kind(kind), cfg.precisionBits);
                Json j = family_json(s);
                j["dimension"] = dims_json(s, method, cfg);
                emit(j, "json");
                return int(ok);
            };
        } else if (dimSweep->parsed()) {
            action = [&] { return run_sweep(range, outFile == "csv" ? "" : outFile, cfg); };
        } else {
            action = [&] {
                if (alphabetText.empty()) throw UsageError("dim needs --alphabet or a subcommand");
                const std::vector<Word> alphabet = parse_alphabet(alphabetText);
                Json words = Json::array();
                for (const Word& w : alphabet) words.push_back(format_word(w));
                Json j{{"alphabet", words}};
                j.update(dims_json(build_cantor(alphabet, cfg.precisionBits), method, cfg));
                emit(j, cfg.outputFormat);
                return int(ok);
            };
        }
    });

    // family
    auto* fam = app.add_subcommand("family", "alphabet of K_big, K_small or K_mod");
    fam->add_option("--n", famN)->required()->check(CLI::PositiveNumber);
    fam->add_option("--kind", kind)->check(CLI::IsMember({"big", "small", "mod"}));
    fam->callback([&] {
        action = [&] {
            const GaussCantorSpec s = family(famN, parse_family_kind(kind), cfg.precisionBits);
            Json j = family_json(s);
            j["hullMin"] = to_json(s.hull_min);
            j["hullMax"] = to_json(s.hull_max);
            emit(j, "json");
            return int(ok);
        };
    });

    // oracle
    auto* oracle = app.add_subcommand("oracle", "desk-scale oracles");
    oracle->require_subcommand(1);
    Prop31Config p31;
    ExpDiophConfig ed;
    std::string variant = "general";
    bool noDistortion = false, noMuBand = false;
    auto* prop31 = oracle->add_subcommand("prop31", "separation of block-exponent differences");
    prop31->add_option("--n", p31.n)->check(CLI::Range(4, 200));
    prop31->add_option("--tail-depth", p31.tailDepth)->check(CLI::Range(1, 8));
    prop31->add_option("--threshold-scale", p31.thresholdScale);
    prop31->add_option("--e-min", p31.eMin);
    prop31->add_option("--e-max", p31.eMax);
    prop31->add_option("--f-min", p31.fMin);
    prop31->add_option("--f-max", p31.fMax);
    prop31->callback([&] {
        action = [&] {
            const Prop31Report r = prop31_oracle(p31);
            emit(prop31_json(r), "json");
            return r.violations ? int(violation) : int(ok);
        };
    });
    auto* expd = oracle->add_subcommand("expdioph", "exponential Diophantine grid");
    expd->add_option("--n", ed.n)->check(CLI::Range(4, 200));
    expd->add_option("--variant", variant)->check(CLI::IsMember({"general", "special"}));
    expd->add_option("--cmax", ed.cMax);
    expd->add_option("--dmax", ed.dMax);
    expd->add_option("--lmax", ed.lMax);
    expd->add_option("--tau-exponent", ed.tauExponent);
    expd->add_flag("--no-distortion", noDistortion, "drop the distortion hypothesis");
    expd->add_flag("--no-mu-band", noMuBand, "drop the mu band hypothesis");
    expd->callback([&] {
        action = [&] {
            ed.variant = variant == "special" ? DiophVariant::special : DiophVariant::general;
            ed.enforceDistortion = !noDistortion;
            ed.enforceMuBand = !noMuBand;
            const ExpDiophReport r = exp_dioph_oracle(ed);
            emit(expdioph_json(r), "json");
            return r.violations ? int(violation) : int(ok);
        };
    });

    // certify
    auto* certify = app.add_subcommand("certify", "certify a candidate word");
    certify->require_subcommand(1);
    CertifyArgs ca;
    for (const char* kindName : {"local", "replicate", "isolate", "attach"}) {
        auto* sub = certify->add_subcommand(kindName);
        sub->add_option("--candidate", ca.candidate, "candidate JSON {k, M, N, tails}, inline or a file")->required();
        sub->add_option("--radius", ca.radius, "search radius (default 3|w|)")->check(CLI::NonNegativeNumber);
        sub->add_option("--budget", ca.budgetNodes, "node budget")->check(CLI::PositiveNumber);
        sub->add_option("--seconds", ca.seconds, "time budget")->check(CLI::PositiveNumber);
        sub->add_option("--resume", ca.resume, "certificate or frontier JSON of an inconclusive run");
        sub->add_flag("--replay", ca.replay, "permuted branch order");
        const std::string k = kindName;
        if (k == "local" || k == "replicate")
            sub->add_option("--epsilon", ca.epsilon, "e1, e2, eps or a positive rational");
        if (k == "replicate")
            sub->add_option("--direction", ca.direction)->check(CLI::IsMember({"left", "right", "both"}));
        if (k == "attach") sub->add_option("--samples", ca.samples)->check(CLI::PositiveNumber);
        sub->callback([&, k] { action = [&, k] { return run_certify(k, ca, cfg); }; });
    }

    // scan
    auto* scan = app.add_subcommand("scan", "distorted fraction among enumerated candidates");
    int scanK = 5, scanM = 2, scanN = 3, spread = 2;
    scan->add_option("--k", scanK)->check(CLI::Range(2, 200));
    scan->add_option("--M", scanM)->check(CLI::Range(1, 8));
    scan->add_option("--N", scanN)->check(CLI::Range(1, 8));
    scan->add_option("--spread", spread, "tail exponents range over default..default+spread")->check(CLI::Range(0, 12));
    scan->callback([&] {
        action = [&] {
            emit(scan_candidates(scanK, scanM, scanN, spread), cfg.outputFormat);
            return int(ok);
        };
    });

    // verify-lemma
    auto* verify = app.add_subcommand("verify-lemma", "run a named property suite");
    std::string suiteName;
    SuiteOptions so;
    verify->add_option("name", suiteName, "suite name or 'all'")->required();
    verify->add_option("--count,--periods", so.count, "samples")->check(CLI::PositiveNumber);
    verify->add_option("--depth", so.depth)->check(CLI::PositiveNumber);
    verify->add_option("--maxlen", so.maxLen)->check(CLI::PositiveNumber);
    verify->callback([&] {
        action = [&] {
            so.seed = cfg.seed;
            std::vector<std::string> names = suiteName == "all" ? suite_names() : std::vector<std::string>{suiteName};
            Json reports = Json::array();
            bool passed = true;
            for (const std::string& n : names) {
                SuiteReport r;
                try {
                    r = run_suite(n, so);
                } catch (const UnknownSuite& e) {
                    throw UsageError(e.what());
                }
                log(cfg, "verify-lemma " + n + ": " + (r.passed ? "pass" : "FAIL"));
                passed = passed && r.passed;
                reports.push_back(to_json(r));
            }
            emit(reports.size() == 1 ? reports[0] : reports, cfg.outputFormat);
            return passed ? int(ok) : int(violation);
        };
    });

    // sweep
    auto* sweep = app.add_subcommand("sweep", "append-safe CSV sweep over log epsilon");
    std::string sweepRange, sweepFile;
    sweep->add_option("--eps-log-range", sweepRange, "a:b:step")->required();
    sweep->add_option("--out", sweepFile, "CSV file to append to (stdout when omitted)");
    sweep->callback([&] { action = [&] { return run_sweep(sweepRange, sweepFile == "csv" ? "" : sweepFile, cfg); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? int(ok) : int(usage);
    }

    try {
        if (!configPath.empty()) cfg.load_file(configPath);
        cfg.load_env();
        if (precision > 0) cfg.precisionBits = precision;
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        if (!format.empty()) cfg.outputFormat = format;
        cfg.validate();
        return action ? action() : int(usage);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const WordParseError& e) {
        std::cerr << "word parse error: " << e.what() << '\n';
        return usage;
    } catch (const CandidateError& e) {
        std::cerr << "candidate error: " << e.what() << '\n';
        return usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
}
