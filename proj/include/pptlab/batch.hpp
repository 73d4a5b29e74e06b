#ifndef PPTLAB_BATCH_HPP
#define PPTLAB_BATCH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pptlab {

struct CheckRecord {
    std::string name;
    std::string status; // pass | fail | inconclusive
    std::vector<std::pair<std::string, double>> metrics;
};

struct SuiteResult {
    std::string name;
    std::uint64_t seed = 0;
    bool experimental = false;
    std::vector<CheckRecord> checks;
    std::size_t pass = 0, fail = 0, inconclusive = 0;
};

struct RunReport {
    std::uint64_t seed = 0;
    std::vector<SuiteResult> suites;
    std::size_t pass = 0, fail = 0, inconclusive = 0;

    // True when no non-experimental check failed.
    bool ok() const;
};

struct SuiteSpec {
    std::string name;
    std::size_t count = 0;   // 0 = suite default
    std::uint64_t seed = 0;  // 0 = derived from the master seed and the name
};

struct BatchConfig {
    std::uint64_t seed = 1;
    std::vector<SuiteSpec> suites; // empty = every suite with defaults
};

// Known suites: theorem2_2, prop2_5, prop4_2, prop4_3, theorem5_1,
// section6_compare (experimental), stormer, ckl_grid, measures.
std::vector<std::string> known_suites();

BatchConfig default_batch_config();
BatchConfig parse_batch_config(const std::string& json_text);

RunReport batch_verify(const BatchConfig& config);

std::string report_to_json(const RunReport& report);
std::string report_to_csv(const RunReport& report);

} // namespace pptlab

#endif
