// Command-line front end: scenario ingestion, experiment execution and
// report/plot emission.
//
//   driftlab --config <path> --command <check|solve|dichotomy|family|reproduce>
//            --out <dir> [--nodes <n>] [--strict]
//
// Exit status: 0 all asserted invariants pass, 1 invariant failure,
// 2 config parse error, 3 I/O failure.

#include "driftlab/config.hpp"
#include "driftlab/errors.hpp"
#include "driftlab/report.hpp"
#include "driftlab/svg_plot.hpp"
#include "driftlab/version.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>

namespace {

using driftlab::Assertion;
using nlohmann::json;
namespace fs = std::filesystem;

struct CommandResult {
    json payload;
    std::vector<Assertion> assertions;
};

void emit_meta(const fs::path& out_dir) {
    const auto now = std::chrono::system_clock::now();
    const auto epoch_s =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    json meta{{"timestamp_unix", epoch_s}, {"tool_version", driftlab::kDriftlabVersion}};
    driftlab::write_text_file((out_dir / "run_meta.json").string(), meta.dump(2) + "\n");
}

CommandResult run_check(const driftlab::ParsedConfig& cfg) {
    using namespace driftlab;
    const Scenario& sc = cfg.scenario;

    DichotomyReport rep;
    rep.growth = classify_volume_growth(sc.manifold, classification_radii(sc.manifold));
    const auto grid = make_hypothesis_grid(std::max(200.0, sc.R_ladder.back()), 2048);
    rep.hypotheses.push_back(check_hypothesis(sc.manifold, sc.drift, sc.potential, Hypothesis::H0, grid));
    if (sc.weight.family() == WeightFamily::StretchedExponential) {
        rep.hypotheses.push_back(
            check_hypothesis(sc.manifold, sc.drift, sc.potential, Hypothesis::H1, grid, sc.weight.theta()));
    }
    rep.hypotheses.push_back(check_hypothesis(sc.manifold, sc.drift, sc.potential, Hypothesis::H2, grid));
    rep.hypotheses.push_back(check_hypothesis(sc.manifold, sc.drift, sc.potential, Hypothesis::H3, grid));
    rep.hypotheses.push_back(check_hypothesis(sc.manifold, sc.drift, sc.potential, Hypothesis::S22, grid));

    const HypothesisReport* sharp = rep.hypothesis(Hypothesis::S22);
    const HypothesisReport* h2 = rep.hypothesis(Hypothesis::H2);
    const HypothesisReport* h0 = rep.hypothesis(Hypothesis::H0);
    Regime predicted = Regime::Unknown;
    if (sharp && sharp->pass) {
        predicted = Regime::MultiplicityExpected;
    } else if ((h2 && h2->pass) || (h0 && h0->pass)) {
        predicted = Regime::UniquenessExpected;
    }

    json hyps = json::array();
    for (const auto& h : rep.hypotheses) hyps.push_back(to_json(h));
    json payload{{"hypotheses", hyps},
                 {"growth", to_json(rep.growth)},
                 {"predicted_regime", regime_name(predicted)}};

    const HypothesisReport* floor_rep = rep.hypothesis(Hypothesis::H3);
    const Hypothesis gate = sc.weight.family() == WeightFamily::Exponential ? Hypothesis::H0
                            : sc.weight.family() == WeightFamily::StretchedExponential
                                ? Hypothesis::H1
                                : Hypothesis::H2;
    const HypothesisReport* gate_rep = rep.hypothesis(gate);
    if (gate_rep && gate_rep->pass && floor_rep->pass) {
        const double alpha = alpha_for_weight(rep.growth, sc.weight);
        if (std::isfinite(alpha)) {
            const Theorem thm = sc.weight.family() == WeightFamily::Exponential ? Theorem::T22
                                : sc.weight.family() == WeightFamily::StretchedExponential
                                    ? Theorem::T23
                                    : Theorem::T24;
            const double candidate = sc.weight.family() == WeightFamily::Polynomial
                                         ? sc.weight.tau()
                                         : sc.weight.beta();
            payload["admissibility"] =
                to_json(admissible_params(thm, alpha, gate_rep->admissible_constant("K"),
                                          sc.manifold.dimension, sc.p, floor_rep->constant("c0"),
                                          candidate, sc.weight.theta()));
        } else {
            payload["admissibility_note"] = "no finite growth coefficient for this weight family";
        }
    } else {
        payload["admissibility_note"] = "hypothesis backing the weight family did not pass";
    }

    std::vector<Assertion> asserts;
    if (sc.declared_regime != Regime::Unknown) {
        asserts.push_back(Assertion{"declared-regime-matches-hypotheses",
                                    predicted == sc.declared_regime,
                                    std::string("predicted ") + regime_name(predicted)});
    }
    return {payload, asserts};
}

CommandResult run_solve(const driftlab::ParsedConfig& cfg, const fs::path& out_dir) {
    using namespace driftlab;
    const Scenario& sc = cfg.scenario;
    const double R = sc.R_ladder.back();
    const RadialGrid grid = sc.solver.make_grid(R);
    BVPProblem problem{sc.manifold, sc.drift, sc.potential, sc.dichotomy_gamma, R};
    const SolutionGrid sol = solve_bvp(problem, grid, SolverOptions{sc.solver.upwind});

    write_text_file((out_dir / "solution.csv").string(), solution_csv(sol));
    PlotSeries series{"u(r)", {}};
    for (std::size_t i = 0; i < sol.grid.nodes.size(); ++i) {
        series.points.emplace_back(sol.grid.nodes[i], sol.values[i]);
    }
    write_line_plot((out_dir / "plot_solution-profile.svg").string(), {series}, "r", "u", false);

    json payload{{"R", R},
                 {"gamma", sc.dichotomy_gamma},
                 {"residual", sol.residual_sup},
                 {"u_at_rstar", sol.eval(sc.r_star)},
                 {"nodes", static_cast<int>(sol.grid.cells())}};
    std::vector<Assertion> asserts{
        Assertion{"residual-below-1e-4", sol.residual_sup <= 1e-4,
                  "residual " + std::to_string(sol.residual_sup)}};
    return {payload, asserts};
}

CommandResult run_dichotomy(const driftlab::ParsedConfig& cfg, const fs::path& out_dir,
                            bool strict) {
    using namespace driftlab;
    const DichotomyReport rep = dichotomy_scan(cfg.scenario);

    write_text_file((out_dir / "probes.csv").string(), probes_csv(rep));
    PlotSeries series{"u_R(r*)", {}};
    for (const auto& e : rep.probes) {
        if (e.solved) series.points.emplace_back(e.R, e.probe);
    }
    write_line_plot((out_dir / "plot_probe-vs-R.svg").string(), {series}, "R", "u", true);

    std::vector<Assertion> asserts;
    asserts.push_back(Assertion{"all-truncations-solved", rep.complete, ""});
    if (rep.predicted_regime != Regime::Unknown) {
        asserts.push_back(Assertion{"classification-matches-predicted-regime", rep.regime_match,
                                    std::string(classification_name(rep.classification)) +
                                        " vs predicted " + regime_name(rep.predicted_regime)});
    }
    if (strict) {
        asserts.push_back(Assertion{"classification-conclusive",
                                    rep.classification != Classification::Inconclusive,
                                    classification_name(rep.classification)});
    }
    return {to_json(rep), asserts};
}

CommandResult run_family(const driftlab::ParsedConfig& cfg, const fs::path& out_dir) {
    using namespace driftlab;
    const FamilyReport rep = gamma_family(cfg.scenario, cfg.scenario.R_ladder.back());

    write_text_file((out_dir / "family.csv").string(), family_csv(rep));
    std::vector<PlotSeries> series;
    for (const auto& m : rep.members) {
        char label[40];
        std::snprintf(label, sizeof(label), "gamma=%g", m.gamma);
        PlotSeries s{label, {}};
        for (std::size_t i = 0; i < m.solution.grid.nodes.size(); ++i) {
            s.points.emplace_back(m.solution.grid.nodes[i], m.solution.values[i]);
        }
        series.push_back(std::move(s));
    }
    write_line_plot((out_dir / "plot_family-overlay.svg").string(), series, "r", "u", false);

    std::vector<Assertion> asserts{
        Assertion{"family-invariants-verified", rep.ok(),
                  rep.ok() ? "" : rep.violations.front()}};
    return {to_json(rep), asserts};
}

CommandResult run_reproduce(const driftlab::ParsedConfig& cfg) {
    using namespace driftlab;
    if (!cfg.reproduce) {
        throw ConfigError("config error at /reproduce: the reproduce command needs a 'reproduce' block");
    }
    const ReproduceReport rep = reproduce_dichotomy(*cfg.reproduce);
    std::vector<Assertion> asserts{
        Assertion{"two-part-study-passed", rep.ok(),
                  rep.ok() ? "" : rep.failed_invariants.front()}};
    return {to_json(rep), asserts};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"driftlab: radial elliptic drift equations on model manifolds"};
    std::string config_path, command, out_dir_arg;
    int nodes_override = 0;
    bool strict = false;
    app.add_option("--config", config_path, "Path to a scenario config (JSON)")->required();
    app.add_option("--command", command, "One of: check, solve, dichotomy, family, reproduce")
        ->required()
        ->check(CLI::IsMember({"check", "solve", "dichotomy", "family", "reproduce"}));
    app.add_option("--out", out_dir_arg, "Output directory")->required();
    app.add_option("--nodes", nodes_override, "Override the solver cell count");
    app.add_flag("--strict", strict, "Treat an inconclusive classification as failure");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        driftlab::ParsedConfig cfg = driftlab::parse_config_file(config_path);
        if (nodes_override > 0) {
            cfg.scenario.solver.nodes = static_cast<std::size_t>(nodes_override);
            if (cfg.reproduce) {
                cfg.reproduce->base.solver.nodes = static_cast<std::size_t>(nodes_override);
            }
        }

        const fs::path out_dir(out_dir_arg);
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec || !fs::is_directory(out_dir)) {
            throw driftlab::IoError("cannot create output directory: " + out_dir_arg);
        }

        CommandResult result;
        if (command == "check") {
            result = run_check(cfg);
        } else if (command == "solve") {
            result = run_solve(cfg, out_dir);
        } else if (command == "dichotomy") {
            result = run_dichotomy(cfg, out_dir, strict);
        } else if (command == "family") {
            result = run_family(cfg, out_dir);
        } else {
            result = run_reproduce(cfg);
        }

        const json report =
            driftlab::make_run_report(command, cfg, result.payload, result.assertions);
        driftlab::write_text_file((out_dir / "report.json").string(), report.dump(2) + "\n");
        emit_meta(out_dir);

        bool ok = true;
        for (const auto& a : result.assertions) {
            if (!a.pass) {
                ok = false;
                std::cerr << "driftlab: invariant failed: " << a.name
                          << (a.detail.empty() ? "" : " (" + a.detail + ")") << "\n";
            }
        }
        std::cout << "driftlab: " << command << " on " << cfg.scenario.name << ": "
                  << (ok ? "ok" : "invariant failure") << "\n";
        return ok ? 0 : 1;
    } catch (const driftlab::ConfigError& e) {
        std::cerr << "driftlab: " << e.what() << "\n";
        return 2;
    } catch (const driftlab::IoError& e) {
        std::cerr << "driftlab: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "driftlab: " << e.what() << "\n";
        return 1;
    }
}
