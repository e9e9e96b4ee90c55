// Thin pybind11 layer. Structured results cross the boundary as JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypbessel/bessel_pairs.hpp"
#include "hypbessel/errors.hpp"
#include "hypbessel/identities.hpp"
#include "hypbessel/report.hpp"

namespace py = pybind11;
using namespace hypbessel;

namespace {

std::string run_config(const std::string& text) {
    const JobConfig config = parse_config(nlohmann::json::parse(text));
    validate(config);
    return to_json(run(config), false).dump();
}

std::vector<std::pair<std::string, double>> coefficients(const std::string& identity, int N, double lambda) {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& c : coefficient_table(identity_from_string(identity), Dimension(N), lambda))
        out.emplace_back(c.label, c.value);
    return out;
}

}  // namespace

PYBIND11_MODULE(_hypbessel, m) {
    m.doc() = "Bessel-pair Hardy-Rellich and Poincare identity checks on hyperbolic space";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);

    m.def("version", &tool_version);
    m.def("identities", [] {
        std::vector<std::string> names;
        for (auto id : all_identities()) names.push_back(to_string(id));
        return names;
    });
    m.def("lambda_one", [](int N) { return lambda_one(Dimension(N)); }, py::arg("N"));
    m.def("psi", [](int N, double lambda, double r, int order) {
        const Dimension d(N);
        return psi(lambda_params(d, lambda), d, r, order);
    }, py::arg("N"), py::arg("lam"), py::arg("r"), py::arg("order") = 0);
    m.def("w_lambda", [](int N, double lambda, double r) {
        const Dimension d(N);
        return w_lambda(lambda_params(d, lambda), d, r);
    }, py::arg("N"), py::arg("lam"), py::arg("r"));
    m.def("ode_residual", [](int N, double lambda, double r, const std::string& pair) {
        const Dimension d(N);
        return ode_residual_normalized(make_pair(pair, d, lambda), d, r);
    }, py::arg("N"), py::arg("lam"), py::arg("r"), py::arg("pair") = "canonical");
    m.def("coefficients", &coefficients, py::arg("identity"), py::arg("N"), py::arg("lam") = 0.0);
    m.def("run_config", [](const std::string& text) {
        py::gil_scoped_release release;
        return run_config(text);
    }, py::arg("config_json"));
}
