#pragma once

// Batch jobs: configuration parsing, parallel execution and serialization.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hypbessel/identities.hpp"
#include "hypbessel/sharpness_hpw.hpp"

namespace hypbessel {

inline constexpr int kSchemaVersion = 1;
std::string tool_version();

/// Either an explicit list (entries may be the string "lambda1") or
/// endpoints 0 and lambda_1 plus k uniformly spaced interior points.
struct LambdaGrid {
    std::vector<std::string> explicit_values;  // numbers or "lambda1", kept verbatim
    std::optional<int> uniform_interior;

    std::vector<double> expand(const Dimension& dim) const;
    static LambdaGrid parse(const std::string& text);
    static LambdaGrid single(double value);
};

struct ProfileSpec {
    std::string family = "bump";
    std::map<std::string, double> params;

    RadialProfile build(int N) const;
    std::string label() const;
    /// "family" or "family:key=value,key=value".
    static ProfileSpec parse(const std::string& text);
};

struct ModeSpec {
    int n = 0;
    ProfileSpec profile;
    /// "n:family[:key=value,...]"
    static ModeSpec parse(const std::string& text);
};

enum class JobKind { Verify, ScanLambda, OdeCheck, Modes, Hpw, Sharpness, CrossCheck };
std::string to_string(JobKind k);
JobKind job_kind_from_string(const std::string& name);

struct JobSpec {
    JobKind kind = JobKind::Verify;
    std::vector<std::string> identities;  // verify / scan-lambda; "all" expands
    std::vector<int> dims{5};
    LambdaGrid lambda = LambdaGrid::single(0.0);
    std::optional<std::string> flavor;
    std::vector<ModeSpec> modes;  // empty: profile at n = 0 (and n = 1 for full flavor)
    ProfileSpec profile;
    std::optional<std::string> pair;
    // hpw
    std::string variant = "plain";
    // sharpness
    std::string constant = "hardy-rellich";
    std::vector<double> epsilons{0.4, 0.2, 0.1, 0.05};
    double exponent_shift = 0.0;
    // ode-check
    int r_points = 200;
    double r_min = 1e-3;
    double r_max = 20.0;
    int random_points = 0;
    double ode_tolerance = 1e-8;
    // modes
    int n_max = 5;
};

struct JobConfig {
    int schema_version = kSchemaVersion;
    double tolerance = 1e-10;  // quadrature absolute tolerance
    double equality_threshold = 1e-6;
    double inequality_threshold = 1e-8;
    int threads = 1;
    std::uint64_t seed = 0;
    std::vector<JobSpec> jobs;
};

/// Strict parse: unknown keys, wrong types and a missing or unsupported
/// schema_version raise ConfigError.
JobConfig parse_config(const nlohmann::json& j);
JobConfig load_config(const std::string& path);
nlohmann::json to_json(const JobConfig& config);

/// Throws ConfigError when a job violates a dimension gate or names an
/// unknown identity, profile, pair, variant or constant.
void validate(const JobConfig& config);

struct CsvRow {
    std::string identity;
    int N = 0;
    double lambda = 0.0;
    std::string term_label;
    double value = 0.0;
    double residual = 0.0;
};

/// One executed check.
struct Record {
    std::string kind;
    std::string name;  // identity / variant / constant
    int N = 0;
    double lambda = 0.0;
    std::string input;
    double residual = 0.0;  // signed headline number for the text table
    bool passed = false;
    nlohmann::json payload;
    std::vector<CsvRow> rows;
};

struct RunReport {
    std::string tool_version;
    nlohmann::json config;
    std::vector<Record> records;
    int passed = 0;
    int failed = 0;
    double wall_time = 0.0;

    bool all_passed() const { return failed == 0; }
};

RunReport run(const JobConfig& config);

nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const HpwReport& r);
nlohmann::json to_json(const SharpnessScan& s);

nlohmann::json to_json(const RunReport& r, bool include_wall_time = true);
RunReport run_report_from_json(const nlohmann::json& j);

enum class EmitFormat { Json, Csv, Text };
EmitFormat emit_format_from_string(const std::string& name);

/// JSON output omits wall time so that it is canonical.
std::string emit(const RunReport& report, EmitFormat format);

}  // namespace hypbessel
