#include "harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace symdom::harness {

namespace {

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

// JSON cannot carry inf or nan; store them as strings.
json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

const char* library_version() { return SYMDOM_VERSION; }

const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

void RunConfig::validate() const {
    if (trials < 1) throw UsageError("--trials must be positive");
    if (samples < 1) throw UsageError("--samples must be positive");
    if (pairs < 1) throw UsageError("--pairs must be positive");
    if (trunc < 0) throw UsageError("--trunc must be non-negative");
    if (tol != 0.0 && !(tol > 0.0 && tol < 1.0)) throw UsageError("--tol must lie in (0, 1)");
    if (format != "json" && format != "csv") throw UsageError("--format must be json or csv");
}

json RunConfig::to_json() const {
    json j;
    j["family"] = family;
    j["size"] = size;
    j["cols"] = cols;
    j["lambda"] = lambdas;
    j["lambda_set"] = lambdas_set;
    j["trials"] = trials;
    j["trunc"] = trunc;
    j["samples"] = samples;
    j["pairs"] = pairs;
    j["tol"] = tol;
    j["seed"] = seed;
    j["format"] = format;
    j["serial"] = serial;
    return j;
}

namespace {

Record make(std::string suite, std::string name, json inputs, double value, double tol, std::string cmp,
            std::string convention) {
    Record r;
    r.suite = std::move(suite);
    r.name = std::move(name);
    r.inputs = std::move(inputs);
    r.value = value;
    r.tolerance = tol;
    r.comparison = std::move(cmp);
    r.convention = std::move(convention);
    return r;
}

}  // namespace

Record check_le(std::string suite, std::string name, json inputs, double value, double tol, std::string convention) {
    Record r = make(std::move(suite), std::move(name), std::move(inputs), value, tol, "<=", std::move(convention));
    r.status = std::isfinite(value) && value <= tol ? Status::Pass : Status::Fail;
    return r;
}

Record check_ge(std::string suite, std::string name, json inputs, double value, double tol, std::string convention) {
    Record r = make(std::move(suite), std::move(name), std::move(inputs), value, tol, ">=", std::move(convention));
    r.status = std::isfinite(value) && value >= tol ? Status::Pass : Status::Fail;
    return r;
}

Record info(std::string suite, std::string name, json inputs, double value, std::string convention) {
    Record r = make(std::move(suite), std::move(name), std::move(inputs), value, 0.0, "info", std::move(convention));
    r.status = std::isfinite(value) ? Status::Pass : Status::Fail;
    return r;
}

Report::Report(std::string command, RunConfig config)
    : command_(std::move(command)), config_(std::move(config)), mark_(now_seconds()) {}

void Report::add(Record r) {
    const double t = now_seconds();
    r.runtime = t - mark_;
    mark_ = t;
    records_.push_back(std::move(r));
}

int Report::count(Status s) const {
    int n = 0;
    for (const auto& r : records_) n += r.status == s;
    return n;
}

json Report::to_json() const {
    json j;
    j["schema"] = kSchema;
    j["library_version"] = library_version();
    j["command"] = command_;
    j["config"] = config_.to_json();
    j["conventions"] = {
        {"lebesgue", "integrals over real coordinates with Lebesgue measure, no 1/pi factors"},
        {"fischer", "<p,q> = sum alpha! p_alpha conj(q_alpha) in trace-form orthonormal coordinates"},
        {"gram_ratio", "min eigenvalue / spectral norm of the hermitized Gram matrix"},
        {"relative", "|a - b| / max(1, |b|)"},
    };
    json recs = json::array();
    for (const auto& r : records_) {
        json x;
        x["suite"] = r.suite;
        x["name"] = r.name;
        x["inputs"] = r.inputs;
        x["value"] = number(r.value);
        x["tolerance"] = number(r.tolerance);
        x["comparison"] = r.comparison;
        x["status"] = status_name(r.status);
        x["convention"] = r.convention;
        recs.push_back(x);
    }
    j["records"] = recs;
    j["summary"] = {{"pass", count(Status::Pass)},
                    {"fail", count(Status::Fail)},
                    {"inconclusive", count(Status::Inconclusive)}};
    for (const auto& [k, v] : extra_.items()) j[k] = v;
    return j;
}

json Report::timings() const {
    json j;
    j["schema"] = kSchema;
    json recs = json::array();
    double total = 0.0;
    for (const auto& r : records_) {
        recs.push_back({{"suite", r.suite}, {"name", r.name}, {"runtime_s", r.runtime}});
        total += r.runtime;
    }
    j["records"] = recs;
    j["total_s"] = total;
    j["threads"] = max_threads();
    return j;
}

std::string Report::to_csv() const {
    std::ostringstream os;
    os << "suite,name,status,value,tolerance,comparison,convention,inputs\n";
    for (const auto& r : records_) {
        os << csv_field(r.suite) << ',' << csv_field(r.name) << ',' << status_name(r.status) << ','
           << format_double(r.value) << ',' << format_double(r.tolerance) << ',' << r.comparison << ','
           << csv_field(r.convention) << ',' << csv_field(r.inputs.dump()) << '\n';
    }
    return os.str();
}

std::string resolve_output(const std::string& path) {
    if (path.empty()) return path;
    const char* dir = std::getenv("SYMDOM_OUTPUT_DIR");
    const std::filesystem::path p(path);
    if (dir == nullptr || *dir == '\0' || p.is_absolute()) return path;
    return (std::filesystem::path(dir) / p).string();
}

void write_report(const Report& r, const RunConfig& cfg) {
    const std::string body = cfg.format == "csv" ? r.to_csv() : r.to_json().dump(2) + "\n";
    const std::string path = resolve_output(cfg.output);
    if (path.empty()) {
        std::cout << body;
        return;
    }
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << body;
    std::ofstream side(path + ".timings.json", std::ios::binary);
    side << r.timings().dump(2) << "\n";
}

int exit_code(const Report& r) { return r.count(Status::Fail) > 0 ? 1 : 0; }

Report merge_reports(const std::vector<std::string>& paths, const RunConfig& cfg) {
    if (paths.empty()) throw UsageError("report-merge needs at least one input");
    Report out("report-merge", cfg);
    json sources = json::array();
    std::string version;
    bool mixed = false;
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot read " + path);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw UsageError(path + ": " + e.what());
        }
        if (!j.contains("schema") || j["schema"] != kSchema) throw UsageError(path + ": unsupported report schema");
        const std::string v = j.value("library_version", "");
        if (version.empty()) version = v;
        mixed = mixed || v != version;
        sources.push_back({{"path", path}, {"library_version", v}, {"records", j["records"].size()}});
        for (const auto& x : j["records"]) {
            Record r;
            r.suite = x.value("suite", "");
            r.name = x.value("name", "");
            r.inputs = x.value("inputs", json::object());
            r.inputs["source"] = path;
            r.value = x["value"].is_number() ? x["value"].get<double>() : NAN;
            r.tolerance = x["tolerance"].is_number() ? x["tolerance"].get<double>() : NAN;
            r.comparison = x.value("comparison", "");
            r.convention = x.value("convention", "");
            const std::string st = x.value("status", "fail");
            r.status = st == "pass" ? Status::Pass : st == "inconclusive" ? Status::Inconclusive : Status::Fail;
            out.add(r);
        }
    }
    out.extra()["sources"] = sources;
    if (mixed) {
        Record w = info("merge", "mixed_library_versions", {{"first", version}}, 0.0, "warning");
        w.status = Status::Inconclusive;
        out.add(w);
    }
    return out;
}

}  // namespace symdom::harness
