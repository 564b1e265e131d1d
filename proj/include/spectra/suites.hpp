#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace spectra {

// Parameters shared by the property suites; zero means the suite default.
struct SuiteOptions {
    std::uint64_t seed = 1;
    long count = 0;   // samples
    int depth = 0;    // alphabet tree depth (below3, combinatorial)
    int maxLen = 0;   // longest random period (perron)
};

struct SuiteReport {
    std::string name;
    bool passed = true;
    long checked = 0;
    std::string witness;  // first failure, human readable
    std::map<std::string, double> metrics;
};

class UnknownSuite : public std::invalid_argument {
public:
    explicit UnknownSuite(const std::string& name) : std::invalid_argument("unknown suite: " + name) {}
};

std::vector<std::string> suite_names();

SuiteReport run_suite(const std::string& name, const SuiteOptions& opt = {});

}  // namespace spectra
