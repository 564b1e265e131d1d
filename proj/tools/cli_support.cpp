#include "cli_support.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace spectra::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

Rational parse_number(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty()) throw UsageError("empty number");
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational q = parse_number(s.substr(0, slash)) / parse_number(s.substr(slash + 1));
        q.canonicalize();
        return q;
    }
    const auto dot = s.find('.');
    std::string digits = s;
    Integer den = 1;
    if (dot != std::string::npos) {
        digits = s.substr(0, dot) + s.substr(dot + 1);
        for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    }
    Integer num;
    if (digits.empty() || num.set_str(digits, 10) != 0) throw UsageError("not a number: " + s);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

SurdSum parse_term(const std::string& text) {
    const std::string s = trim(text);
    const auto at = s.find("sqrt(");
    if (at == std::string::npos) return SurdSum(parse_number(s));
    const auto close = s.find(')', at);
    if (close == std::string::npos) throw UsageError("unclosed sqrt in " + s);
    std::string coeff = trim(s.substr(0, at));
    if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
    Rational c = coeff.empty() ? Rational(1) : parse_number(coeff);
    const std::string rest = trim(s.substr(close + 1));
    if (!rest.empty()) {
        if (rest[0] != '/') throw UsageError("unexpected text after sqrt: " + rest);
        c /= parse_number(rest.substr(1));
    }
    Integer n;
    if (n.set_str(trim(s.substr(at + 5, close - at - 5)), 10) != 0 || n < 0)
        throw UsageError("bad radicand in " + s);
    return SurdSum(QuadraticSurd(Rational(0), c, n));
}

std::string cell(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

void Config::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineNo) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        try {
            if (key == "precisionBits") precisionBits = std::stol(value);
            else if (key == "bisectionTol") bisectionTol = std::stod(value);
            else if (key == "searchBudgetNodes") searchBudgetNodes = std::stol(value);
            else if (key == "searchBudgetSeconds") searchBudgetSeconds = std::stod(value);
            else if (key == "outputFormat") outputFormat = value;
            else if (key == "seed") seed = std::stoull(value);
            else throw UsageError(path + ":" + std::to_string(lineNo) + ": unknown key " + key);
        } catch (const std::logic_error&) {
            throw UsageError(path + ":" + std::to_string(lineNo) + ": bad value for " + key);
        }
    }
}

void Config::load_env() {
    if (const char* v = std::getenv("SPECTRA_PRECISION_BITS")) {
        try {
            precisionBits = std::stol(v);
        } catch (const std::logic_error&) {
            throw UsageError("SPECTRA_PRECISION_BITS is not an integer");
        }
    }
}

void Config::validate() const {
    if (precisionBits < 64) throw UsageError("precisionBits must be at least 64");
    if (searchBudgetNodes <= 0 || searchBudgetSeconds <= 0) throw UsageError("budgets must be positive");
    if (!(bisectionTol > 0)) throw UsageError("bisectionTol must be positive");
    if (outputFormat != "json" && outputFormat != "csv" && outputFormat != "text")
        throw UsageError("outputFormat must be json, csv or text");
}

SurdSum parse_value(const std::string& text) {
    SurdSum total;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        const char ch = i < text.size() ? text[i] : '\0';
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        const bool split = ch == '\0' || (depth == 0 && i > start && (ch == '+' || ch == '-') &&
                                          trim(text.substr(start, i - start)).size() > 0);
        if (!split) continue;
        std::string term = trim(text.substr(start, i - start));
        bool negative = false;
        while (!term.empty() && (term[0] == '+' || term[0] == '-')) {
            negative ^= term[0] == '-';
            term = trim(term.substr(1));
        }
        SurdSum t = parse_term(term);
        total = negative ? total - t : total + t;
        start = i;
    }
    return total;
}

std::vector<double> parse_range(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(std::stod(item));
    if (parts.size() != 3 || parts[2] == 0 || (parts[1] - parts[0]) / parts[2] < 0)
        throw UsageError("range must be a:b:step with step pointing from a to b");
    std::vector<double> out;
    const long n = static_cast<long>((parts[1] - parts[0]) / parts[2] + 1e-9);
    for (long i = 0; i <= n; ++i) out.push_back(parts[0] + i * parts[2]);
    return out;
}

Json read_json_arg(const std::string& arg) {
    const std::string s = trim(arg);
    try {
        if (!s.empty() && s[0] == '{') return Json::parse(s);
        std::ifstream in(s);
        if (!in) throw UsageError("cannot read " + s);
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError(std::string("invalid JSON: ") + e.what());
    }
}

void emit(const Json& j, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump(2) << '\n';
    } else if (format == "text") {
        for (const auto& [key, v] : j.items()) std::cout << key << ": " << cell(v) << '\n';
    } else {
        std::string head, row;
        for (const auto& [key, v] : j.items()) {
            head += (head.empty() ? "" : ",") + key;
            std::string c = cell(v);
            if (c.find_first_of(",\"\n") != std::string::npos) {
                std::string quoted = "\"";
                for (char ch : c) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                c = quoted + "\"";
            }
            row += (row.empty() ? "" : ",") + c;
        }
        std::cout << head << '\n' << row << '\n';
    }
}

void log(const Config& cfg, const std::string& msg) {
    if (!cfg.quiet) std::cerr << msg << '\n';
}

std::string header_hash(const std::string& header) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : header) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

AppendCsv::AppendCsv(std::string path, std::vector<std::string> columns) : path_(std::move(path)) {
    for (const std::string& c : columns) header_ += (header_.empty() ? "" : ",") + c;
    hash_ = header_hash(header_);
    const std::string fullHeader = header_ + ",header_hash";
    if (path_.empty()) {
        std::cout << fullHeader << '\n';
        return;
    }
    std::ifstream in(path_);
    std::string line;
    if (in && std::getline(in, line)) {
        if (line != fullHeader) throw UsageError("schema drift in " + path_ + ": header differs from " + fullHeader);
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (line.substr(line.rfind(',') + 1) != hash_) throw UsageError("schema drift in " + path_ + ": bad row hash");
            keys_.push_back(line.substr(0, line.find(',')));
        }
        return;
    }
    std::ofstream out(path_);
    if (!out) throw UsageError("cannot write " + path_);
    out << fullHeader << '\n';
}

void AppendCsv::row(const std::vector<std::string>& cells) {
    std::string line;
    for (const std::string& c : cells) line += c + ",";
    line += hash_;
    if (path_.empty()) {
        std::cout << line << '\n';
        return;
    }
    std::ofstream out(path_, std::ios::app);
    out << line << '\n';
}

}  // namespace spectra::cli
