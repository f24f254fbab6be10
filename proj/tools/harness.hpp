#pragma once

// Run configuration, check records and report serialization for the CLI.
// Reports are deterministic for a fixed configuration: runtimes live in a
// sidecar file, never in the report itself.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "symdom/parallel.hpp"

namespace symdom::harness {

using json = nlohmann::json;

inline constexpr int kSchema = 1;
const char* library_version();

// Bad flags, unknown suites, unreadable or mismatched inputs: exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Status { Pass, Fail, Inconclusive };
const char* status_name(Status s);

struct RunConfig {
    std::string family;  // empty: each suite uses its own families
    int size = 0;        // rank, or dimension for ball / spin
    int cols = 0;
    std::vector<double> lambdas;
    bool lambdas_set = false;
    int trials = 500;
    int trunc = 0;  // 0: suite default
    long samples = 200000;
    int pairs = 20;
    double tol = 0.0;  // 0: per-check default
    std::uint64_t seed = 1;
    std::string output;
    std::string format = "json";
    bool serial = false;

    Exec exec() const { return serial ? Exec::Serial : Exec::Parallel; }
    // Throws UsageError on non-positive counts, tolerances outside (0,1) or a bad format.
    void validate() const;
    json to_json() const;
};

struct Record {
    std::string suite;
    std::string name;
    json inputs = json::object();
    double value = 0.0;
    double tolerance = 0.0;
    std::string comparison;  // "<=", ">=" or "info"
    Status status = Status::Pass;
    std::string convention;
    double runtime = 0.0;
};

// value <= tol passes; non-finite values fail.
Record check_le(std::string suite, std::string name, json inputs, double value, double tol, std::string convention);
Record check_ge(std::string suite, std::string name, json inputs, double value, double tol, std::string convention);
// Reported number without a pass criterion beyond finiteness.
Record info(std::string suite, std::string name, json inputs, double value, std::string convention);

class Report {
public:
    Report(std::string command, RunConfig config);

    // Stamps the record with the time elapsed since the previous add.
    void add(Record r);
    const std::vector<Record>& records() const { return records_; }
    int count(Status s) const;
    json& extra() { return extra_; }

    json to_json() const;
    json timings() const;
    std::string to_csv() const;

private:
    std::string command_;
    RunConfig config_;
    std::vector<Record> records_;
    json extra_ = json::object();
    double mark_;
};

// SYMDOM_OUTPUT_DIR prefixes relative output paths.
std::string resolve_output(const std::string& path);
// Writes the report to cfg.output (or stdout) and the runtimes to <output>.timings.json.
void write_report(const Report& r, const RunConfig& cfg);
// 0 when no record failed, 1 otherwise.
int exit_code(const Report& r);

Report merge_reports(const std::vector<std::string>& paths, const RunConfig& cfg);

}  // namespace symdom::harness
