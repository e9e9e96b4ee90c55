// Command-line driver. Exit status: 0 all checks pass, 1 some check fails,
// 2 invalid configuration or arguments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hypbessel/errors.hpp"
#include "hypbessel/report.hpp"

using namespace hypbessel;

namespace {

struct Globals {
    double tol = 1e-10;
    int jobs = 1;
    std::string json_out;
    std::string csv_out;
    std::uint64_t seed = 0;
    std::string format = "text";
};

struct InputOptions {
    std::vector<int> dims{5};
    std::string lambda = "0";
    std::string profile = "bump";
    std::vector<std::string> modes;
    std::string flavor;
    std::string pair;
};

void add_input_options(CLI::App* sub, InputOptions& in, bool with_modes) {
    sub->add_option("--dim", in.dims, "Dimensions N")->delimiter(',')->capture_default_str();
    sub->add_option("--lambda", in.lambda, "Value, comma list (may use lambda1) or uniform:K")->capture_default_str();
    sub->add_option("--profile", in.profile, "family[:key=value,...]")->capture_default_str();
    if (with_modes) {
        sub->add_option("--mode", in.modes, "Explicit mode n:family[:key=value,...]; repeatable");
        sub->add_option("--flavor", in.flavor, "radial or full");
    }
    sub->add_option("--pair", in.pair, "Bessel pair registry entry");
}

void apply_inputs(JobSpec& job, const InputOptions& in) {
    job.dims = in.dims;
    job.lambda = LambdaGrid::parse(in.lambda);
    job.profile = ProfileSpec::parse(in.profile);
    for (const auto& m : in.modes) job.modes.push_back(ModeSpec::parse(m));
    if (!in.flavor.empty()) job.flavor = in.flavor;
    if (!in.pair.empty()) job.pair = in.pair;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification of Bessel-pair Hardy-Rellich and Poincare identities on H^N"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", tool_version());

    Globals g;
    app.add_option("--tol", g.tol, "Quadrature absolute tolerance")->capture_default_str();
    app.add_option("--jobs", g.jobs, "Worker threads")->capture_default_str();
    app.add_option("--json-out", g.json_out, "Write the canonical JSON report here");
    app.add_option("--csv-out", g.csv_out, "Write the CSV term table here");
    app.add_option("--seed", g.seed, "Seed for randomized residual sample points")->capture_default_str();
    app.add_option("--format", g.format, "Stdout format: text, json or csv")->capture_default_str();

    JobSpec job;
    JobConfig config;
    bool from_config = false;
    std::string config_path;

    InputOptions verify_in;
    std::vector<std::string> verify_ids{"all"};
    auto* verify = app.add_subcommand("verify", "Assemble identities term by term");
    verify->add_option("--identity", verify_ids, "Identity name or 'all'; repeatable")->delimiter(',');
    add_input_options(verify, verify_in, true);

    InputOptions scan_in;
    scan_in.lambda = "uniform:9";
    std::vector<std::string> scan_ids{"RADIAL_HR"};
    auto* scan = app.add_subcommand("scan-lambda", "Sweep identities over a lambda grid");
    scan->add_option("--identity", scan_ids, "Identity name; repeatable")->delimiter(',');
    add_input_options(scan, scan_in, true);

    InputOptions ode_in;
    ode_in.dims = {2, 3, 5, 6, 8};
    ode_in.lambda = "uniform:19";
    auto* ode = app.add_subcommand("ode-check", "Bessel-pair ODE residual certificate");
    ode->add_option("--dim", ode_in.dims, "Dimensions N")->delimiter(',')->capture_default_str();
    ode->add_option("--lambda", ode_in.lambda, "Lambda grid")->capture_default_str();
    ode->add_option("--pair", ode_in.pair, "Bessel pair registry entry");
    int r_points = 200, random_points = 50;
    double r_min = 1e-3, r_max = 20.0;
    ode->add_option("--r-points", r_points, "Log-spaced sample points")->capture_default_str();
    ode->add_option("--random-points", random_points, "Extra seeded random points")->capture_default_str();
    ode->add_option("--r-min", r_min)->capture_default_str();
    ode->add_option("--r-max", r_max)->capture_default_str();

    InputOptions modes_in;
    int n_max = 5;
    auto* modes = app.add_subcommand("modes", "Mode spectrum and per-mode B functional");
    add_input_options(modes, modes_in, false);
    modes->add_option("--n-max", n_max, "Largest mode index")->capture_default_str();

    InputOptions hpw_in;
    std::string variant = "plain";
    auto* hpw = app.add_subcommand("hpw", "Heisenberg-Pauli-Weyl product inequalities");
    hpw->add_option("--variant", variant, "plain, improved, abstract or stringent")->capture_default_str();
    add_input_options(hpw, hpw_in, true);

    std::string constant = "hardy-rellich", sharp_lambda;
    std::vector<int> sharp_dims{5};
    std::vector<double> epsilons{0.4, 0.2, 0.1, 0.05};
    double shift = 0.0;
    auto* sharp = app.add_subcommand("sharpness", "Quotient scans along saturating families");
    sharp->add_option("--constant", constant,
                      "hardy-rellich, poincare-grad, rellich, poincare-l0 or joint-pair")
        ->capture_default_str();
    sharp->add_option("--dim", sharp_dims, "Dimensions N")->delimiter(',')->capture_default_str();
    sharp->add_option("--epsilons", epsilons, "Scan parameters")->delimiter(',')->capture_default_str();
    sharp->add_option("--exponent-shift", shift, "Extra exponent of the concentrating family")->capture_default_str();
    sharp->add_option("--lambda", sharp_lambda, "Joint pair only; defaults to lambda1");

    auto* report = app.add_subcommand("report", "Run every job of a JSON configuration file");
    report->add_option("--config", config_path, "Configuration file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    RunReport result;
    try {
        if (*report) {
            config = load_config(config_path);
            from_config = true;
        } else if (*verify) {
            job.kind = JobKind::Verify;
            job.identities = verify_ids;
            apply_inputs(job, verify_in);
        } else if (*scan) {
            job.kind = JobKind::ScanLambda;
            job.identities = scan_ids;
            apply_inputs(job, scan_in);
        } else if (*ode) {
            job.kind = JobKind::OdeCheck;
            job.dims = ode_in.dims;
            job.lambda = LambdaGrid::parse(ode_in.lambda);
            if (!ode_in.pair.empty()) job.pair = ode_in.pair;
            job.r_points = r_points;
            job.random_points = random_points;
            job.r_min = r_min;
            job.r_max = r_max;
        } else if (*modes) {
            job.kind = JobKind::Modes;
            apply_inputs(job, modes_in);
            job.n_max = n_max;
        } else if (*hpw) {
            job.kind = JobKind::Hpw;
            apply_inputs(job, hpw_in);
            job.variant = variant;
        } else if (*sharp) {
            job.kind = JobKind::Sharpness;
            job.constant = constant;
            job.dims = sharp_dims;
            job.epsilons = epsilons;
            job.exponent_shift = shift;
            job.lambda = LambdaGrid::parse(sharp_lambda.empty() ? "lambda1" : sharp_lambda);
        }
        if (!from_config) config.jobs = {job};
        // Flags given on the command line override the file.
        if (!from_config || app.count("--tol")) config.tolerance = g.tol;
        if (!from_config || app.count("--jobs")) config.threads = g.jobs;
        if (!from_config || app.count("--seed")) config.seed = g.seed;
        const EmitFormat fmt = emit_format_from_string(g.format);
        validate(config);

        result = run(config);
        std::cout << emit(result, fmt);
        if (!g.json_out.empty()) write_file(g.json_out, emit(result, EmitFormat::Json));
        if (!g.csv_out.empty()) write_file(g.csv_out, emit(result, EmitFormat::Csv));
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {  // ParameterError, DimensionError
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const RangeError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return result.all_passed() ? 0 : 1;
}
