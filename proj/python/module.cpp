#include "driftlab/config.hpp"
#include "driftlab/errors.hpp"
#include "driftlab/experiments.hpp"
#include "driftlab/report.hpp"

#include <nlohmann/json.hpp>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace driftlab;

namespace {

Hypothesis hypothesis_from_name(const std::string& s) {
    if (s == "H0") return Hypothesis::H0;
    if (s == "H1") return Hypothesis::H1;
    if (s == "H2") return Hypothesis::H2;
    if (s == "H3") return Hypothesis::H3;
    if (s == "S22") return Hypothesis::S22;
    throw InputError("unknown hypothesis tag: " + s);
}

Theorem theorem_from_name(const std::string& s) {
    if (s == "T22") return Theorem::T22;
    if (s == "T23") return Theorem::T23;
    if (s == "T24") return Theorem::T24;
    throw InputError("unknown theorem tag: " + s);
}

py::object json_to_py(const nlohmann::json& j) {
    py::module_ json_mod = py::module_::import("json");
    return json_mod.attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(driftlab, m) {
    m.doc() = "Radial elliptic drift equations on rotationally symmetric manifolds";

    py::class_<WarpingFunction>(m, "WarpingFunction")
        .def_static("euclidean", &WarpingFunction::euclidean)
        .def_static("hyperbolic", &WarpingFunction::hyperbolic, py::arg("curvature"))
        .def_static("power_law", &WarpingFunction::power_law, py::arg("lambda_"))
        .def_static("sampled", &WarpingFunction::sampled, py::arg("radii"), py::arg("values"))
        .def("value", &WarpingFunction::value)
        .def("derivative", &WarpingFunction::derivative);

    py::class_<ModelManifold>(m, "ModelManifold")
        .def(py::init<int, WarpingFunction>(), py::arg("dimension"), py::arg("warping"))
        .def_readonly("dimension", &ModelManifold::dimension);

    py::class_<RadialDrift>(m, "RadialDrift")
        .def_static("zero", &RadialDrift::zero)
        .def_static("power_affine", &RadialDrift::power_affine, py::arg("amplitude"),
                    py::arg("exponent"), py::arg("offset") = 0.0)
        .def_static("sine", &RadialDrift::sine, py::arg("amplitude"))
        .def_static("sampled", &RadialDrift::sampled, py::arg("radii"), py::arg("values"))
        .def("value", &RadialDrift::value)
        .def("derivative", &RadialDrift::derivative);

    py::class_<PotentialC>(m, "PotentialC")
        .def_static("constant", &PotentialC::constant, py::arg("c0"))
        .def_static("polynomial", &PotentialC::polynomial, py::arg("coefficients"))
        .def("value", &PotentialC::value);

    py::class_<Weight>(m, "Weight")
        .def_static("exponential", &Weight::exponential, py::arg("beta"))
        .def_static("stretched_exponential", &Weight::stretched_exponential, py::arg("beta"),
                    py::arg("theta"))
        .def_static("polynomial", &Weight::polynomial, py::arg("tau"))
        .def("value", &Weight::value);

    py::class_<RadialGrid>(m, "RadialGrid")
        .def_static("uniform", &RadialGrid::uniform, py::arg("R"), py::arg("cells"))
        .def_static("graded", &RadialGrid::graded, py::arg("R"), py::arg("cells") = 4096)
        .def_readonly("nodes", &RadialGrid::nodes);

    py::class_<SolutionGrid>(m, "SolutionGrid")
        .def_readonly("values", &SolutionGrid::values)
        .def_property_readonly("nodes", [](const SolutionGrid& s) { return s.grid.nodes; })
        .def_readonly("residual_sup", &SolutionGrid::residual_sup)
        .def("eval", &SolutionGrid::eval);

    m.def("sphere_constant", &sphere_constant, py::arg("dimension"));
    m.def("radial_laplacian_coeff", &radial_laplacian_coeff, py::arg("manifold"), py::arg("r"));
    m.def("volume", &volume, py::arg("manifold"), py::arg("r"), py::arg("rel_tol") = 1e-10);
    m.def(
        "classify_volume_growth",
        [](const ModelManifold& manifold) {
            return json_to_py(to_json(classify_volume_growth(manifold, classification_radii(manifold))));
        },
        py::arg("manifold"));

    m.def("divergence", &divergence, py::arg("manifold"), py::arg("drift"), py::arg("r"));
    m.def("divergence_at_pole", &divergence_at_pole, py::arg("manifold"), py::arg("drift"));
    m.def(
        "check_hypothesis",
        [](const ModelManifold& manifold, const RadialDrift& drift, const PotentialC& potential,
           const std::string& which, double r_max, std::size_t nodes, double theta) {
            const auto grid = make_hypothesis_grid(r_max, nodes);
            return json_to_py(to_json(
                check_hypothesis(manifold, drift, potential, hypothesis_from_name(which), grid, theta)));
        },
        py::arg("manifold"), py::arg("drift"), py::arg("potential"), py::arg("which"),
        py::arg("r_max") = 200.0, py::arg("nodes") = 2048, py::arg("theta") = 0.0);

    m.def("delta_min", &delta_min, py::arg("p"));
    m.def(
        "admissible_params",
        [](const std::string& theorem, double alpha, double K, int dimension, double p, double c0,
           double candidate, double theta) {
            return json_to_py(to_json(admissible_params(theorem_from_name(theorem), alpha, K,
                                                        dimension, p, c0, candidate, theta)));
        },
        py::arg("theorem"), py::arg("alpha"), py::arg("K"), py::arg("dimension"), py::arg("p"),
        py::arg("c0"), py::arg("candidate"), py::arg("theta") = 0.0);
    m.def(
        "weighted_lp_norm",
        [](const ModelManifold& manifold, const std::function<double(double)>& u, bool u_bounded,
           const Weight& w, double p, double r_max, double rel_tol) {
            const WeightedNorm n = weighted_lp_norm(manifold, u, u_bounded, w, p, r_max, rel_tol);
            py::dict out;
            out["value"] = n.value;
            out["tail"] = tail_verdict_name(n.tail);
            return out;
        },
        py::arg("manifold"), py::arg("u"), py::arg("u_bounded"), py::arg("weight"), py::arg("p"),
        py::arg("r_max"), py::arg("rel_tol") = 1e-10);

    m.def(
        "solve_bvp",
        [](const ModelManifold& manifold, const RadialDrift& drift, const PotentialC& potential,
           double gamma, double R, std::size_t nodes, bool uniform, bool upwind) {
            const RadialGrid grid = uniform ? RadialGrid::uniform(R, nodes) : RadialGrid::graded(R, nodes);
            return solve_bvp(BVPProblem{manifold, drift, potential, gamma, R}, grid,
                             SolverOptions{upwind});
        },
        py::arg("manifold"), py::arg("drift"), py::arg("potential"), py::arg("gamma"), py::arg("R"),
        py::arg("nodes") = 4096, py::arg("uniform") = false, py::arg("upwind") = false);
    m.def(
        "shoot_oracle",
        [](const ModelManifold& manifold, const RadialDrift& drift, const PotentialC& potential,
           double gamma, double R, std::size_t nodes, bool uniform, double rel_tol) {
            const RadialGrid grid = uniform ? RadialGrid::uniform(R, nodes) : RadialGrid::graded(R, nodes);
            return shoot_oracle(BVPProblem{manifold, drift, potential, gamma, R}, grid, rel_tol);
        },
        py::arg("manifold"), py::arg("drift"), py::arg("potential"), py::arg("gamma"), py::arg("R"),
        py::arg("nodes") = 4096, py::arg("uniform") = false, py::arg("rel_tol") = 1e-11);
    m.def("residual", &residual, py::arg("manifold"), py::arg("drift"), py::arg("potential"),
          py::arg("solution"));
    m.def(
        "verify_power_decay_supersolution",
        [](const ModelManifold& manifold, const RadialDrift& drift, const PotentialC& potential,
           double C, double beta, double r_lo, double r_hi, double rhs_bound) {
            return json_to_py(to_json(verify_supersolution(
                manifold, drift, potential, SupersolutionCandidate::power_decay(C, beta), r_lo,
                r_hi, rhs_bound)));
        },
        py::arg("manifold"), py::arg("drift"), py::arg("potential"), py::arg("C"), py::arg("beta"),
        py::arg("r_lo"), py::arg("r_hi"), py::arg("rhs_bound") = -1.0);
    m.def(
        "verify_constant_supersolution",
        [](const ModelManifold& manifold, const RadialDrift& drift, const PotentialC& potential,
           double value, double r_lo, double r_hi, double rhs_bound) {
            return json_to_py(to_json(verify_supersolution(
                manifold, drift, potential, SupersolutionCandidate::constant(value), r_lo, r_hi,
                rhs_bound)));
        },
        py::arg("manifold"), py::arg("drift"), py::arg("potential"), py::arg("value"),
        py::arg("r_lo"), py::arg("r_hi"), py::arg("rhs_bound") = -1.0);

    // Config-driven entry points mirroring the CLI commands.
    m.def(
        "dichotomy_report",
        [](const std::string& config_text) {
            const ParsedConfig cfg = parse_config_text(config_text);
            return json_to_py(to_json(dichotomy_scan(cfg.scenario)));
        },
        py::arg("config_text"));
    m.def(
        "family_report",
        [](const std::string& config_text) {
            const ParsedConfig cfg = parse_config_text(config_text);
            return json_to_py(to_json(gamma_family(cfg.scenario, cfg.scenario.R_ladder.back())));
        },
        py::arg("config_text"));
    m.def(
        "reproduce_report",
        [](const std::string& config_text) {
            const ParsedConfig cfg = parse_config_text(config_text);
            if (!cfg.reproduce) throw ConfigError("config has no 'reproduce' block");
            return json_to_py(to_json(reproduce_dichotomy(*cfg.reproduce)));
        },
        py::arg("config_text"));
}
