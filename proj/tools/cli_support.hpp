#pragma once

#include "spectra/json_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace spectra::cli {

enum Exit { ok = 0, violation = 1, usage = 2, budget = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Config {
    long precisionBits = 128;
    double bisectionTol = 1e-12;
    long searchBudgetNodes = 20'000'000;
    double searchBudgetSeconds = 600;
    std::string outputFormat = "json";  // json | csv | text
    std::uint64_t seed = 1;
    bool quiet = false;

    // key=value lines, '#' starts a comment.
    void load_file(const std::string& path);
    // SPECTRA_PRECISION_BITS
    void load_env();
    void validate() const;
};

// "7/3", "2.99", "sqrt(12)", "3*sqrt(5)/2", "1+sqrt(2)", "-1/2+sqrt(5)/2"
SurdSum parse_value(const std::string& text);

// "a:b:step" -> a, a+step, ..., up to b inclusive.
std::vector<double> parse_range(const std::string& text);

// Text starting with '{' is parsed inline, anything else is read as a file.
Json read_json_arg(const std::string& arg);

void emit(const Json& j, const std::string& format);
void log(const Config& cfg, const std::string& msg);

// CSV that can be appended to across runs. The last column holds a hash of
// the header, so a file written with other columns is refused.
class AppendCsv {
public:
    AppendCsv(std::string path, std::vector<std::string> columns);
    // First column values already present in the file.
    const std::vector<std::string>& existing_keys() const { return keys_; }
    void row(const std::vector<std::string>& cells);

private:
    std::string path_;
    std::string header_;
    std::string hash_;
    std::vector<std::string> keys_;
};

std::string header_hash(const std::string& header);

}  // namespace spectra::cli
