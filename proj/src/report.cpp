#include "hypbessel/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "hypbessel/errors.hpp"
#include "hypbessel/spherical_modes.hpp"

#ifndef HYPBESSEL_VERSION
#define HYPBESSEL_VERSION "0.0.0"
#endif

namespace hypbessel {

using nlohmann::json;

std::string tool_version() { return HYPBESSEL_VERSION; }

namespace {

// JSON has no NaN / Inf; they travel as null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double num_of(const json& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

double parse_number(const std::string& text) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + text + "'");
    }
    if (pos != text.size()) throw ConfigError("not a number: '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

// ---------------------------------------------------------------- grids / specs

std::vector<double> LambdaGrid::expand(const Dimension& dim) const {
    const double l1 = lambda_one(dim);
    std::vector<double> out;
    if (uniform_interior) {
        const int k = *uniform_interior;
        for (int i = 0; i <= k + 1; ++i) out.push_back(i == k + 1 ? l1 : l1 * i / (k + 1));
        return out;
    }
    for (const auto& v : explicit_values) out.push_back(v == "lambda1" ? l1 : parse_number(v));
    return out;
}

LambdaGrid LambdaGrid::parse(const std::string& text) {
    LambdaGrid g;
    if (text.rfind("uniform:", 0) == 0) {
        const double k = parse_number(text.substr(8));
        if (k < 0 || k != std::floor(k)) throw ConfigError("uniform lambda grid needs a non-negative integer");
        g.uniform_interior = static_cast<int>(k);
        return g;
    }
    for (const auto& part : split(text, ',')) {
        if (part != "lambda1") parse_number(part);
        g.explicit_values.push_back(part);
    }
    if (g.explicit_values.empty()) throw ConfigError("empty lambda list");
    return g;
}

LambdaGrid LambdaGrid::single(double value) {
    LambdaGrid g;
    std::ostringstream os;
    os.precision(17);
    os << value;
    g.explicit_values = {os.str()};
    return g;
}

RadialProfile ProfileSpec::build(int N) const { return make_profile(family, params, N); }

std::string ProfileSpec::label() const {
    std::ostringstream os;
    os << family;
    bool first = true;
    for (const auto& [k, v] : params) {
        os << (first ? ":" : ",") << k << "=" << v;
        first = false;
    }
    return os.str();
}

ProfileSpec ProfileSpec::parse(const std::string& text) {
    ProfileSpec p;
    const auto colon = text.find(':');
    p.family = text.substr(0, colon);
    if (colon != std::string::npos) {
        for (const auto& kv : split(text.substr(colon + 1), ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw ConfigError("profile parameter '" + kv + "' is not key=value");
            p.params[kv.substr(0, eq)] = parse_number(kv.substr(eq + 1));
        }
    }
    return p;
}

ModeSpec ModeSpec::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("mode '" + text + "' must look like n:family[:params]");
    ModeSpec m;
    const double n = parse_number(text.substr(0, colon));
    if (n < 0 || n != std::floor(n)) throw ConfigError("mode index must be a non-negative integer");
    m.n = static_cast<int>(n);
    m.profile = ProfileSpec::parse(text.substr(colon + 1));
    return m;
}

std::string to_string(JobKind k) {
    switch (k) {
        case JobKind::Verify: return "verify";
        case JobKind::ScanLambda: return "scan-lambda";
        case JobKind::OdeCheck: return "ode-check";
        case JobKind::Modes: return "modes";
        case JobKind::Hpw: return "hpw";
        case JobKind::Sharpness: return "sharpness";
        case JobKind::CrossCheck: return "cross-check";
    }
    return "?";
}

JobKind job_kind_from_string(const std::string& name) {
    for (auto k : {JobKind::Verify, JobKind::ScanLambda, JobKind::OdeCheck, JobKind::Modes, JobKind::Hpw,
                   JobKind::Sharpness, JobKind::CrossCheck})
        if (to_string(k) == name) return k;
    throw ConfigError("unknown job kind '" + name + "'");
}

// ---------------------------------------------------------------- config parsing

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

template <typename T>
T get_as(const json& j, const std::string& key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("bad value for '" + key + "' in " + where + ": " + e.what());
    }
}

LambdaGrid lambda_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return LambdaGrid::single(j.get<double>());
    if (j.is_string()) return LambdaGrid::parse(j.get<std::string>());
    if (j.is_array()) {
        LambdaGrid g;
        for (const auto& v : j) {
            if (v.is_number()) {
                g.explicit_values.push_back(LambdaGrid::single(v.get<double>()).explicit_values[0]);
            } else if (v.is_string() && v.get<std::string>() == "lambda1") {
                g.explicit_values.push_back("lambda1");
            } else {
                throw ConfigError("lambda list entries must be numbers or \"lambda1\" in " + where);
            }
        }
        if (g.explicit_values.empty()) throw ConfigError("empty lambda list in " + where);
        return g;
    }
    if (j.is_object()) {
        check_keys(j, {"uniform"}, where + ".lambda");
        const int k = get_as<int>(j, "uniform", where + ".lambda");
        if (k < 0) throw ConfigError("uniform lambda grid needs k >= 0 in " + where);
        LambdaGrid g;
        g.uniform_interior = k;
        return g;
    }
    throw ConfigError("lambda must be a number, list, string or {\"uniform\": k} in " + where);
}

json lambda_to_json(const LambdaGrid& g) {
    if (g.uniform_interior) return json{{"uniform", *g.uniform_interior}};
    json arr = json::array();
    for (const auto& v : g.explicit_values) {
        if (v == "lambda1")
            arr.push_back(v);
        else
            arr.push_back(parse_number(v));
    }
    return arr;
}

ProfileSpec profile_from_json(const json& j, const std::string& where) {
    if (j.is_string()) return ProfileSpec::parse(j.get<std::string>());
    check_keys(j, {"family", "params"}, where);
    ProfileSpec p;
    p.family = get_as<std::string>(j, "family", where);
    if (j.contains("params")) {
        if (!j["params"].is_object()) throw ConfigError("params must be an object in " + where);
        for (const auto& [k, v] : j["params"].items()) {
            if (!v.is_number()) throw ConfigError("profile parameter '" + k + "' must be a number in " + where);
            p.params[k] = v.get<double>();
        }
    }
    return p;
}

json profile_to_json(const ProfileSpec& p) {
    json params = json::object();
    for (const auto& [k, v] : p.params) params[k] = v;
    return json{{"family", p.family}, {"params", params}};
}

const std::set<std::string>& keys_for(JobKind k) {
    static const std::set<std::string> verify{"kind", "identities", "dims", "lambda", "flavor", "profile", "modes", "pair"};
    static const std::set<std::string> ode{"kind", "dims", "lambda", "pair", "r_points", "r_min", "r_max", "random_points",
                                           "ode_tolerance"};
    static const std::set<std::string> modes{"kind", "dims", "lambda", "pair", "profile", "n_max"};
    static const std::set<std::string> hpw{"kind", "variant", "dims", "lambda", "flavor", "profile", "modes", "pair"};
    static const std::set<std::string> sharp{"kind", "constant", "dims", "lambda", "epsilons", "exponent_shift"};
    static const std::set<std::string> cross{"kind", "dims", "lambda", "profile", "modes"};
    switch (k) {
        case JobKind::Verify:
        case JobKind::ScanLambda: return verify;
        case JobKind::OdeCheck: return ode;
        case JobKind::Modes: return modes;
        case JobKind::Hpw: return hpw;
        case JobKind::Sharpness: return sharp;
        case JobKind::CrossCheck: return cross;
    }
    return verify;
}

JobSpec job_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    JobSpec job;
    job.kind = job_kind_from_string(get_as<std::string>(j, "kind", where));
    check_keys(j, keys_for(job.kind), where);
    if (job.kind == JobKind::ScanLambda) {
        job.identities = {"RADIAL_HR"};
        job.lambda = LambdaGrid::parse("uniform:9");
    }
    if (j.contains("identities")) {
        const json& ids = j["identities"];
        if (ids.is_string())
            job.identities = {ids.get<std::string>()};
        else
            job.identities = get_as<std::vector<std::string>>(j, "identities", where);
    }
    if (j.contains("dims")) {
        if (j["dims"].is_number_integer())
            job.dims = {j["dims"].get<int>()};
        else
            job.dims = get_as<std::vector<int>>(j, "dims", where);
    }
    if (j.contains("lambda")) job.lambda = lambda_from_json(j["lambda"], where);
    if (j.contains("flavor")) job.flavor = get_as<std::string>(j, "flavor", where);
    if (j.contains("profile")) job.profile = profile_from_json(j["profile"], where + ".profile");
    if (j.contains("modes")) {
        if (!j["modes"].is_array()) throw ConfigError("modes must be a list in " + where);
        for (const auto& m : j["modes"]) {
            if (m.is_string()) {
                job.modes.push_back(ModeSpec::parse(m.get<std::string>()));
                continue;
            }
            check_keys(m, {"n", "profile"}, where + ".modes");
            ModeSpec ms;
            ms.n = get_as<int>(m, "n", where + ".modes");
            if (m.contains("profile")) ms.profile = profile_from_json(m["profile"], where + ".modes.profile");
            job.modes.push_back(ms);
        }
    }
    if (j.contains("pair")) job.pair = get_as<std::string>(j, "pair", where);
    if (j.contains("variant")) job.variant = get_as<std::string>(j, "variant", where);
    if (j.contains("constant")) job.constant = get_as<std::string>(j, "constant", where);
    if (j.contains("epsilons")) job.epsilons = get_as<std::vector<double>>(j, "epsilons", where);
    if (j.contains("exponent_shift")) job.exponent_shift = get_as<double>(j, "exponent_shift", where);
    if (j.contains("r_points")) job.r_points = get_as<int>(j, "r_points", where);
    if (j.contains("r_min")) job.r_min = get_as<double>(j, "r_min", where);
    if (j.contains("r_max")) job.r_max = get_as<double>(j, "r_max", where);
    if (j.contains("random_points")) job.random_points = get_as<int>(j, "random_points", where);
    if (j.contains("ode_tolerance")) job.ode_tolerance = get_as<double>(j, "ode_tolerance", where);
    if (j.contains("n_max")) job.n_max = get_as<int>(j, "n_max", where);
    return job;
}

json job_to_json(const JobSpec& job) {
    json j;
    j["kind"] = to_string(job.kind);
    j["dims"] = job.dims;
    j["lambda"] = lambda_to_json(job.lambda);
    const auto& keys = keys_for(job.kind);
    if (keys.count("identities")) j["identities"] = job.identities;
    if (keys.count("flavor") && job.flavor) j["flavor"] = *job.flavor;
    if (keys.count("profile")) j["profile"] = profile_to_json(job.profile);
    if (keys.count("modes")) {
        json modes = json::array();
        for (const auto& m : job.modes) modes.push_back({{"n", m.n}, {"profile", profile_to_json(m.profile)}});
        j["modes"] = modes;
    }
    if (keys.count("pair") && job.pair) j["pair"] = *job.pair;
    if (keys.count("variant")) j["variant"] = job.variant;
    if (keys.count("constant")) {
        j["constant"] = job.constant;
        j["epsilons"] = job.epsilons;
        j["exponent_shift"] = job.exponent_shift;
    }
    if (keys.count("r_points")) {
        j["r_points"] = job.r_points;
        j["r_min"] = job.r_min;
        j["r_max"] = job.r_max;
        j["random_points"] = job.random_points;
        j["ode_tolerance"] = job.ode_tolerance;
    }
    if (keys.count("n_max")) j["n_max"] = job.n_max;
    return j;
}

std::vector<std::string> expand_identities(const std::vector<std::string>& names) {
    std::vector<std::string> out;
    for (const auto& n : names) {
        if (n == "all" || n == "ALL") {
            for (auto id : all_identities()) out.push_back(to_string(id));
        } else {
            out.push_back(to_string(identity_from_string(n)));
        }
    }
    return out;
}

}  // namespace

JobConfig parse_config(const json& j) {
    check_keys(j, {"schema_version", "tolerance", "equality_threshold", "inequality_threshold", "threads", "seed", "jobs"},
               "config");
    if (!j.contains("schema_version")) throw ConfigError("config is missing schema_version");
    JobConfig c;
    c.schema_version = get_as<int>(j, "schema_version", "config");
    if (c.schema_version != kSchemaVersion)
        throw ConfigError("unsupported schema_version " + std::to_string(c.schema_version) + " (expected " +
                          std::to_string(kSchemaVersion) + ")");
    if (j.contains("tolerance")) c.tolerance = get_as<double>(j, "tolerance", "config");
    if (j.contains("equality_threshold")) c.equality_threshold = get_as<double>(j, "equality_threshold", "config");
    if (j.contains("inequality_threshold")) c.inequality_threshold = get_as<double>(j, "inequality_threshold", "config");
    if (j.contains("threads")) c.threads = get_as<int>(j, "threads", "config");
    if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j, "seed", "config");
    if (j.contains("jobs")) {
        if (!j["jobs"].is_array()) throw ConfigError("jobs must be a list");
        for (size_t i = 0; i < j["jobs"].size(); ++i)
            c.jobs.push_back(job_from_json(j["jobs"][i], "jobs[" + std::to_string(i) + "]"));
    }
    return c;
}

JobConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

json to_json(const JobConfig& c) {
    json jobs = json::array();
    for (const auto& job : c.jobs) jobs.push_back(job_to_json(job));
    return json{{"schema_version", c.schema_version},
                {"tolerance", c.tolerance},
                {"equality_threshold", c.equality_threshold},
                {"inequality_threshold", c.inequality_threshold},
                {"threads", c.threads},
                {"seed", c.seed},
                {"jobs", jobs}};
}

// ---------------------------------------------------------------- validation

namespace {

Flavor job_flavor(const JobSpec& job, IdentityId id) {
    return job.flavor ? flavor_from_string(*job.flavor) : natural_flavor(id);
}

std::vector<ModeFunction> build_modes(const JobSpec& job, int N, bool full) {
    const Dimension dim(N);
    std::vector<ModeFunction> out;
    if (job.modes.empty()) {
        const RadialProfile u = job.profile.build(N);
        out.emplace_back(u, 0, dim);
        if (full) out.emplace_back(u, 1, dim);
    } else {
        for (const auto& m : job.modes) out.emplace_back(m.profile.build(N), m.n, dim);
    }
    return out;
}

void validate_job(const JobSpec& job, const JobConfig& config) {
    if (job.dims.empty()) throw ConfigError("dims must not be empty");
    for (int N : job.dims) {
        const Dimension dim(N);
        const std::vector<double> lambdas = job.lambda.expand(dim);
        if (lambdas.empty()) throw ConfigError("lambda grid is empty");
        for (double l : lambdas) lambda_params(dim, l);
        if (job.flavor) flavor_from_string(*job.flavor);
        if (job.pair) make_pair(*job.pair, dim, lambdas.front());
        switch (job.kind) {
            case JobKind::Verify:
            case JobKind::ScanLambda: {
                if (job.identities.empty()) throw ConfigError("no identities selected");
                for (const auto& name : expand_identities(job.identities)) {
                    const IdentityId id = identity_from_string(name);
                    check_dimension_gate(id, job_flavor(job, id), dim);
                }
                build_modes(job, N, true);
                break;
            }
            case JobKind::OdeCheck:
                if (job.r_points < 2 || job.r_min <= 0.0 || job.r_max <= job.r_min || job.random_points < 0)
                    throw ConfigError("ode-check needs r_points >= 2 and 0 < r_min < r_max");
                break;
            case JobKind::Modes:
                if (job.n_max < 0) throw ConfigError("n_max must be >= 0");
                job.profile.build(N);
                break;
            case JobKind::Hpw: {
                hpw_variant_from_string(job.variant);
                const Flavor f = job.flavor ? flavor_from_string(*job.flavor) : Flavor::Full;
                if (f == Flavor::Full && N < 5)
                    throw DimensionError("HPW (" + job.variant + ", full) requires N >= 5, got N=" + std::to_string(N));
                build_modes(job, N, f == Flavor::Full);
                break;
            }
            case JobKind::Sharpness: {
                const SharpConstant c = sharp_constant_from_string(job.constant);
                if ((c == SharpConstant::Rellich || c == SharpConstant::JointPair) && N < 5)
                    throw DimensionError(job.constant + " sharpness requires N >= 5, got N=" + std::to_string(N));
                if (job.epsilons.empty()) throw ConfigError("epsilons must not be empty");
                for (double e : job.epsilons)
                    if (!(e > 0.0 && e < 0.5)) throw ConfigError("epsilon must lie in (0, 1/2)");
                break;
            }
            case JobKind::CrossCheck: build_modes(job, N, false); break;
        }
    }
    (void)config;
}

}  // namespace

void validate(const JobConfig& config) {
    if (config.threads < 1) throw ConfigError("threads must be >= 1");
    if (!(config.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
    for (size_t i = 0; i < config.jobs.size(); ++i) {
        const std::string where = "jobs[" + std::to_string(i) + "] (" + to_string(config.jobs[i].kind) + ")";
        try {
            validate_job(config.jobs[i], config);
        } catch (const ConfigError& e) {
            throw ConfigError(where + ": " + e.what());
        } catch (const std::exception& e) {
            throw ConfigError(where + ": " + e.what());
        }
    }
}

// ---------------------------------------------------------------- serialization of results

json to_json(const IdentityReport& r) {
    json terms = json::array();
    for (const auto& t : r.terms)
        terms.push_back({{"label", t.label},
                         {"coefficient", num(t.coefficient)},
                         {"integral", num(t.integral)},
                         {"value", num(t.value)},
                         {"error", num(t.error)}});
    return json{{"identity", to_string(r.id)},
                {"flavor", to_string(r.flavor)},
                {"kind", to_string(r.kind)},
                {"N", r.N},
                {"lambda", num(r.lambda)},
                {"pair", r.pair},
                {"input", r.input},
                {"lhs", num(r.lhs)},
                {"lhs_error", num(r.lhs_error)},
                {"terms", terms},
                {"rhs", num(r.rhs)},
                {"residual", num(r.residual)},
                {"rel_residual", num(r.rel_residual)},
                {"scale", num(r.scale)},
                {"error_budget", num(r.error_budget)},
                {"threshold", num(r.threshold)},
                {"verdict", to_string(r.verdict)},
                {"notes", r.notes}};
}

json to_json(const HpwReport& r) {
    return json{{"variant", to_string(r.variant)},
                {"flavor", to_string(r.flavor)},
                {"N", r.N},
                {"lambda", num(r.lambda)},
                {"input", r.input},
                {"lhs_product", num(r.lhs_product)},
                {"rhs_square", num(r.rhs_square)},
                {"gap", num(r.gap)},
                {"scale", num(r.scale)},
                {"effective_constant", num(r.effective_constant)},
                {"implied_constant", num(r.implied_constant)},
                {"error_budget", num(r.error_budget)},
                {"passed", r.passed}};
}

json to_json(const SharpnessScan& s) {
    json points = json::array();
    for (const auto& p : s.points) {
        json pj{{"epsilon", num(p.epsilon)}, {"quotient", num(p.quotient)}, {"ok", p.ok}};
        if (!p.ok) pj["error"] = p.error;
        points.push_back(pj);
    }
    return json{{"constant", to_string(s.constant)},
                {"N", s.N},
                {"lambda", num(s.lambda)},
                {"family", s.family},
                {"target", num(s.target)},
                {"points", points},
                {"monotone", s.monotone},
                {"extrapolation", num(s.extrapolated)},
                {"estimated_order", num(s.estimated_order)},
                {"rel_distance", num(s.rel_distance)},
                {"band", num(s.band)},
                {"within_band", s.within_band},
                {"one_sided", s.one_sided},
                {"tolerance", num(s.tolerance)}};
}

// ---------------------------------------------------------------- execution

namespace {

using Task = std::function<Record()>;

Record identity_record(const std::string& kind, const IdentityReport& r) {
    Record rec;
    rec.kind = kind;
    rec.name = to_string(r.id);
    rec.N = r.N;
    rec.lambda = r.lambda;
    rec.input = r.input;
    rec.residual = r.rel_residual;
    rec.passed = r.passed();
    rec.payload = to_json(r);
    for (const auto& t : r.terms) rec.rows.push_back({rec.name, r.N, r.lambda, t.label, t.value, r.residual});
    return rec;
}

void add_tasks(const JobSpec& job, const JobConfig& config, size_t job_index, std::vector<Task>& tasks) {
    QuadratureOptions q;
    q.abs_tol = config.tolerance;
    const std::string kind = to_string(job.kind);

    for (int N : job.dims) {
        const Dimension dim(N);
        const std::vector<double> lambdas = job.lambda.expand(dim);
        switch (job.kind) {
            case JobKind::Verify:
            case JobKind::ScanLambda:
                for (const auto& name : expand_identities(job.identities)) {
                    const IdentityId id = identity_from_string(name);
                    const std::vector<double> ls = uses_lambda(id) ? lambdas : std::vector<double>{0.0};
                    for (double l : ls) {
                        tasks.push_back([=, &config]() {
                            const Flavor f = job_flavor(job, id);
                            IdentityRequest req;
                            req.id = id;
                            req.N = N;
                            req.lambda = l;
                            req.flavor = f;
                            req.modes = build_modes(job, N, f == Flavor::Full && id != IdentityId::AbstractRellichRad);
                            if (job.pair && uses_pair(id)) req.pair = make_pair(*job.pair, dim, l);
                            req.quadrature = q;
                            req.equality_threshold = config.equality_threshold;
                            req.inequality_threshold = config.inequality_threshold;
                            return identity_record(kind, assemble(req));
                        });
                    }
                }
                break;
            case JobKind::OdeCheck:
                for (size_t li = 0; li < lambdas.size(); ++li) {
                    const double l = lambdas[li];
                    tasks.push_back([=, &config]() {
                        const BesselPair pair = make_pair(job.pair.value_or("canonical"), dim, l);
                        std::vector<double> grid;
                        const double a = std::log(job.r_min), b = std::log(job.r_max);
                        for (int i = 0; i < job.r_points; ++i)
                            grid.push_back(std::exp(a + (b - a) * i / (job.r_points - 1)));
                        std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                                          static_cast<std::uint32_t>(job_index), static_cast<std::uint32_t>(N),
                                          static_cast<std::uint32_t>(li)};
                        std::mt19937_64 rng(seq);
                        std::uniform_real_distribution<double> u(a, b);
                        for (int i = 0; i < job.random_points; ++i) grid.push_back(std::exp(u(rng)));
                        double worst = 0.0, worst_r = grid.front();
                        for (double r : grid) {
                            const double res = ode_residual_normalized(pair, dim, r);
                            if (!(res <= worst)) {
                                worst = res;
                                worst_r = r;
                            }
                        }
                        Record rec;
                        rec.kind = kind;
                        rec.name = "ODE[" + pair.name() + "]";
                        rec.N = N;
                        rec.lambda = l;
                        rec.input = std::to_string(grid.size()) + " points in [" + fmt("%g", job.r_min) + ", " +
                                    fmt("%g", job.r_max) + "]";
                        rec.residual = worst;
                        rec.passed = std::isfinite(worst) && worst < job.ode_tolerance;
                        rec.payload = {{"pair", pair.name()},   {"N", N},
                                       {"lambda", num(l)},      {"points", grid.size()},
                                       {"max_normalized_residual", num(worst)},
                                       {"worst_r", num(worst_r)}, {"tolerance", job.ode_tolerance}};
                        rec.rows.push_back({rec.name, N, l, "max_normalized_residual", worst, worst});
                        return rec;
                    });
                }
                break;
            case JobKind::Modes:
                for (double l : lambdas) {
                    tasks.push_back([=]() {
                        const BesselPair pair = make_pair(job.pair.value_or("canonical"), dim, l);
                        const RadialProfile u = job.profile.build(N);
                        const ModeSpectrum spec = mode_spectrum(dim, job.n_max);
                        Record rec;
                        rec.kind = kind;
                        rec.name = "B[" + pair.name() + "]";
                        rec.N = N;
                        rec.lambda = l;
                        rec.input = job.profile.label();
                        rec.passed = true;
                        json entries = json::array();
                        double worst = std::numeric_limits<double>::infinity();
                        for (const auto& e : spec.entries) {
                            json ej{{"n", e.n}, {"eigenvalue", e.eigenvalue}, {"multiplicity", e.multiplicity}};
                            if (N >= 5 && e.n >= 1) {
                                const BFunctional bf = b_functional(dim, pair, ModeFunction(u, e.n, dim), q);
                                const double rel = bf.scale > 0.0 ? bf.value / bf.scale : 0.0;
                                ej["B"] = num(bf.value);
                                ej["scale"] = num(bf.scale);
                                ej["reduced"] = num(bf.reduced);
                                ej["lower_bound"] = num(bf.lower_bound);
                                if (bf.value < -config.inequality_threshold * bf.scale) rec.passed = false;
                                worst = std::min(worst, rel);
                                rec.rows.push_back({rec.name, N, l, "B_" + std::to_string(e.n), bf.value, rel});
                            }
                            entries.push_back(ej);
                        }
                        rec.residual = std::isfinite(worst) ? worst : 0.0;
                        rec.payload = {{"pair", pair.name()}, {"N", N}, {"lambda", num(l)}, {"modes", entries}};
                        return rec;
                    });
                }
                break;
            case JobKind::Hpw:
                for (double l : lambdas) {
                    tasks.push_back([=, &config]() {
                        HpwRequest req;
                        req.variant = hpw_variant_from_string(job.variant);
                        req.N = N;
                        req.lambda = l;
                        req.flavor = job.flavor ? flavor_from_string(*job.flavor) : Flavor::Full;
                        req.modes = build_modes(job, N, req.flavor == Flavor::Full);
                        if (job.pair) req.pair = make_pair(*job.pair, dim, l);
                        req.quadrature = q;
                        req.threshold = config.inequality_threshold;
                        const HpwReport r = hpw_check(req);
                        Record rec;
                        rec.kind = kind;
                        rec.name = to_string(r.variant);
                        rec.N = N;
                        rec.lambda = l;
                        rec.input = r.input;
                        rec.residual = r.scale > 0.0 ? r.gap / r.scale : 0.0;
                        rec.passed = r.passed;
                        rec.payload = to_json(r);
                        rec.rows.push_back({rec.name, N, l, "lhs_product", r.lhs_product, r.gap});
                        rec.rows.push_back({rec.name, N, l, "rhs_square", r.rhs_square, r.gap});
                        rec.rows.push_back({rec.name, N, l, "effective_constant", r.effective_constant, r.gap});
                        rec.rows.push_back({rec.name, N, l, "implied_constant", r.implied_constant, r.gap});
                        return rec;
                    });
                }
                break;
            case JobKind::Sharpness: {
                const SharpConstant c = sharp_constant_from_string(job.constant);
                // Only the joint pair depends on lambda.
                const std::vector<double> ls = c == SharpConstant::JointPair ? lambdas : std::vector<double>{0.0};
                for (double l : ls) {
                    tasks.push_back([=]() {
                        QuadratureOptions sq = q;
                        sq.max_subdivisions = std::max(sq.max_subdivisions, 20000);
                        const SharpnessScan s = sharpness_scan(c, dim, job.epsilons, sq, l, job.exponent_shift);
                        Record rec;
                        rec.kind = kind;
                        rec.name = to_string(c);
                        rec.N = N;
                        rec.lambda = s.lambda;
                        rec.input = s.family;
                        rec.residual = s.rel_distance;
                        rec.passed = s.one_sided;
                        rec.payload = to_json(s);
                        for (const auto& p : s.points)
                            rec.rows.push_back({rec.name, N, s.lambda, "epsilon=" + fmt("%g", p.epsilon), p.quotient,
                                                p.quotient - s.target});
                        rec.rows.push_back(
                            {rec.name, N, s.lambda, "extrapolation", s.extrapolated, s.extrapolated - s.target});
                        return rec;
                    });
                }
                break;
            }
            case JobKind::CrossCheck:
                for (double l : lambdas) {
                    tasks.push_back([=]() {
                        const CrossConsistencyReport r = cross_consistency(dim, l, build_modes(job, N, false), q);
                        Record rec;
                        rec.kind = kind;
                        rec.name = "RADIAL_HR~ABSTRACT_RELLICH_ROP";
                        rec.N = N;
                        rec.lambda = l;
                        rec.input = r.radial_hr.input;
                        rec.residual = r.worst_rel_difference;
                        rec.passed = r.passed;
                        json cmp = json::array();
                        for (const auto& t : r.comparisons) {
                            cmp.push_back({{"label", t.label},
                                           {"first", num(t.first)},
                                           {"second", num(t.second)},
                                           {"rel_difference", num(t.rel_difference)}});
                            rec.rows.push_back({rec.name, N, l, t.label, t.first, t.rel_difference});
                        }
                        rec.payload = {{"radial_hr", to_json(r.radial_hr)},
                                       {"abstract_rop", to_json(r.abstract_rop)},
                                       {"comparisons", cmp},
                                       {"residual_difference", num(r.residual_difference)},
                                       {"combined_tolerance", num(r.combined_tolerance)},
                                       {"passed", r.passed}};
                        return rec;
                    });
                }
                break;
        }
    }
}

}  // namespace

RunReport run(const JobConfig& config) {
    validate(config);
    const auto start = std::chrono::steady_clock::now();

    std::vector<Task> tasks;
    for (size_t i = 0; i < config.jobs.size(); ++i) add_tasks(config.jobs[i], config, i, tasks);

    std::vector<Record> results(tasks.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next++; i < tasks.size(); i = next++) {
            try {
                results[i] = tasks[i]();
            } catch (const std::exception& e) {
                Record rec;
                rec.kind = "error";
                rec.name = "task " + std::to_string(i);
                rec.passed = false;
                rec.input = e.what();
                rec.payload = {{"error", e.what()}};
                results[i] = std::move(rec);
            }
        }
    };
    const size_t workers = std::min<size_t>(static_cast<size_t>(config.threads), std::max<size_t>(tasks.size(), 1));
    std::vector<std::thread> pool;
    for (size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    RunReport rep;
    rep.tool_version = tool_version();
    rep.config = to_json(config);
    // Task order is fixed by the config, so slot order is already canonical.
    rep.records = std::move(results);
    for (const auto& r : rep.records) (r.passed ? rep.passed : rep.failed)++;
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

// ---------------------------------------------------------------- report serialization

json to_json(const RunReport& r, bool include_wall_time) {
    json records = json::array();
    for (const auto& rec : r.records) {
        json rows = json::array();
        for (const auto& row : rec.rows)
            rows.push_back({{"identity", row.identity},
                            {"N", row.N},
                            {"lambda", num(row.lambda)},
                            {"term_label", row.term_label},
                            {"value", num(row.value)},
                            {"residual", num(row.residual)}});
        records.push_back({{"kind", rec.kind},
                           {"name", rec.name},
                           {"N", rec.N},
                           {"lambda", num(rec.lambda)},
                           {"input", rec.input},
                           {"residual", num(rec.residual)},
                           {"passed", rec.passed},
                           {"payload", rec.payload},
                           {"rows", rows}});
    }
    json j{{"schema_version", kSchemaVersion},
           {"tool_version", r.tool_version},
           {"config", r.config},
           {"records", records},
           {"summary", {{"passed", r.passed}, {"failed", r.failed}}}};
    if (include_wall_time) j["wall_time"] = r.wall_time;
    return j;
}

RunReport run_report_from_json(const json& j) {
    try {
        if (j.at("schema_version").get<int>() != kSchemaVersion) throw ConfigError("unsupported report schema_version");
        RunReport r;
        r.tool_version = j.at("tool_version").get<std::string>();
        r.config = j.at("config");
        for (const auto& rj : j.at("records")) {
            Record rec;
            rec.kind = rj.at("kind").get<std::string>();
            rec.name = rj.at("name").get<std::string>();
            rec.N = rj.at("N").get<int>();
            rec.lambda = num_of(rj.at("lambda"));
            rec.input = rj.at("input").get<std::string>();
            rec.residual = num_of(rj.at("residual"));
            rec.passed = rj.at("passed").get<bool>();
            rec.payload = rj.at("payload");
            for (const auto& row : rj.at("rows"))
                rec.rows.push_back({row.at("identity").get<std::string>(), row.at("N").get<int>(),
                                    num_of(row.at("lambda")), row.at("term_label").get<std::string>(),
                                    num_of(row.at("value")), num_of(row.at("residual"))});
            r.records.push_back(std::move(rec));
        }
        r.passed = j.at("summary").at("passed").get<int>();
        r.failed = j.at("summary").at("failed").get<int>();
        if (j.contains("wall_time")) r.wall_time = j["wall_time"].get<double>();
        return r;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed report: ") + e.what());
    }
}

EmitFormat emit_format_from_string(const std::string& name) {
    if (name == "json") return EmitFormat::Json;
    if (name == "csv") return EmitFormat::Csv;
    if (name == "text" || name == "text-table") return EmitFormat::Text;
    throw ConfigError("unknown output format '" + name + "'");
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string emit_csv(const RunReport& r) {
    std::ostringstream os;
    os << "identity,N,lambda,term_label,value,residual\n";
    for (const auto& rec : r.records)
        for (const auto& row : rec.rows)
            os << csv_field(row.identity) << ',' << row.N << ',' << fmt("%.17g", row.lambda) << ','
               << csv_field(row.term_label) << ',' << fmt("%.17g", row.value) << ',' << fmt("%.17g", row.residual)
               << '\n';
    return os.str();
}

std::string emit_text(const RunReport& r) {
    std::ostringstream os;
    char line[512];
    std::snprintf(line, sizeof line, "%-12s %-32s %3s %10s %10s  %-6s %s\n", "kind", "name", "N", "lambda", "residual",
                  "result", "input");
    os << line;
    for (const auto& rec : r.records) {
        std::snprintf(line, sizeof line, "%-12s %-32s %3d %10.6g %10.2e  %-6s %s\n", rec.kind.c_str(),
                      rec.name.c_str(), rec.N, rec.lambda, rec.residual, rec.passed ? "PASS" : "FAIL",
                      rec.input.c_str());
        os << line;
    }
    os << "summary: " << r.passed << " passed, " << r.failed << " failed\n";
    return os.str();
}

}  // namespace

std::string emit(const RunReport& report, EmitFormat format) {
    switch (format) {
        case EmitFormat::Json: return to_json(report, false).dump(2) + "\n";
        case EmitFormat::Csv: return emit_csv(report);
        case EmitFormat::Text: return emit_text(report);
    }
    return {};
}

}  // namespace hypbessel
