#pragma once
#include <string>
#include <vector>

namespace currents {

inline constexpr const char* kToolVersion = "currents 1.0.0";

// Echo of everything that determines a run; flags override config-file
// values, which override these defaults.
struct RunConfig {
    std::string command;
    std::string algebra = "sl2";
    int n = 2;           // truncation order
    int m = 1;           // germ degree (spectral command)
    int max_d = -1;      // -1 = command-specific default
    int max_p = -1;
    int max_w = -1;
    int max_k = 8;       // last polynomial column (spectral command)
    double tol = 1e-8;
    std::string backend = "exact"; // exact | numeric
    std::string format = "json";   // json | csv | text
    std::string out;               // empty = stdout
    int threads = 0;               // 0 = hardware concurrency
    bool corrupt = false;          // negative-control self-test
    bool germ_only = false;        // hodge: coefficient table only
};

// One verification record: dimension comparisons carry the two dims,
// numeric checks carry a deviation against tol, coefficient rows carry the
// computed/expected values as well.
struct ResultRow {
    std::string label;
    int d = 0, p = 0, w = 0;
    long long dim_computed = 0;
    long long dim_predicted = 0;
    bool has_deviation = false;
    double deviation = 0.0;
    bool has_values = false;
    double value_computed = 0.0;
    double value_expected = 0.0;
};

struct Report {
    RunConfig config;
    std::vector<ResultRow> results;
    std::string verdict; // pass | fail
    double seconds = 0.0;
    std::string tool_version = kToolVersion;
};

// Verdict recomputed from the rows alone: every dimension pair equal and
// every deviation at most tol.
std::string verdict_of(const Report& r);

std::string to_json(const Report& r);
Report report_from_json(const std::string& text);

// RFC-4180: header row, one line per result, CRLF line endings.
std::string to_csv(const Report& r);
std::string to_text(const Report& r);

// Renders in the configured format to stdout or config.out.
void write_report(const Report& r);

} // namespace currents
