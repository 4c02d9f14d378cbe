#include "driftlab/report.hpp"

#include "driftlab/errors.hpp"
#include "driftlab/version.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace driftlab {

using nlohmann::json;

json to_json(const HypothesisReport& rep) {
    json witnesses = json::array();
    for (const auto& w : rep.witnesses) {
        witnesses.push_back({{"r", w.r}, {"lhs", w.lhs}, {"rhs", w.rhs}, {"inequality", w.inequality}});
    }
    return json{{"hypothesis", hypothesis_name(rep.hypothesis)},
                {"pass", rep.pass},
                {"exponent_fitted", rep.exponent_fitted},
                {"constants", rep.constants},
                {"witnesses", witnesses}};
}

json to_json(const AdmissibleParams& ap) {
    return json{{"theorem", theorem_name(ap.theorem)},
                {"p", ap.p},
                {"delta_min", ap.delta_min},
                {"candidate", ap.candidate},
                {"candidate_lower_bound", ap.candidate_lower_bound},
                {"pc0_threshold", ap.pc0_threshold},
                {"pc0", ap.pc0},
                {"min_c0", ap.min_c0()},
                {"candidate_ok", ap.candidate_ok},
                {"pc0_ok", ap.pc0_ok},
                {"feasible", ap.feasible}};
}

json to_json(const GrowthReport& g) {
    json out{{"class", growth_class_name(g.cls)},
             {"exponent", g.exponent},
             {"theta", g.theta},
             {"intercept", g.intercept},
             {"max_residual", g.max_residual},
             {"radii", g.radii},
             {"volumes", g.volumes}};
    if (g.expected_polynomial_exponent) {
        out["expected_polynomial_exponent"] = *g.expected_polynomial_exponent;
    }
    return out;
}

json to_json(const DichotomyReport& rep) {
    json probes = json::array();
    for (const auto& e : rep.probes) {
        json entry{{"R", e.R}, {"solved", e.solved}};
        if (e.solved) {
            entry["u_at_rstar"] = e.probe;
            entry["residual"] = e.residual;
        } else {
            entry["error"] = e.error;
        }
        probes.push_back(entry);
    }
    json hyps = json::array();
    for (const auto& h : rep.hypotheses) hyps.push_back(to_json(h));

    json out{{"probes", probes},
             {"classification", classification_name(rep.classification)},
             {"limit_estimate", rep.limit_estimate},
             {"hypotheses", hyps},
             {"growth", to_json(rep.growth)},
             {"predicted_regime", regime_name(rep.predicted_regime)},
             {"regime_match", rep.regime_match},
             {"complete", rep.complete},
             {"annotations", rep.annotations}};
    if (rep.admissibility) {
        out["admissibility"] = to_json(*rep.admissibility);
    } else {
        out["admissibility_note"] = rep.admissibility_note;
    }
    return out;
}

json to_json(const FamilyReport& rep) {
    json members = json::array();
    for (const auto& m : rep.members) {
        members.push_back({{"gamma", m.gamma},
                           {"residual", m.residual},
                           {"sup_norm", m.sup_norm},
                           {"weighted_norm", m.weighted_norm.value},
                           {"tail_verdict", tail_verdict_name(m.weighted_norm.tail)},
                           {"boundary_value", m.solution.boundary_value()}});
    }
    return json{{"R", rep.R},
                {"members", members},
                {"sup_distance", rep.sup_distance},
                {"regime_mismatch_warning", rep.regime_mismatch_warning},
                {"sharpness", to_json(rep.sharpness)},
                {"violations", rep.violations}};
}

json to_json(const VerifyResult& vr) {
    json out{{"pass", vr.pass},
             {"margin", vr.margin},
             {"worst_r", vr.worst_r},
             {"worst_value", vr.worst_value}};
    if (vr.witness) {
        out["witness"] = {{"r", vr.witness->r},
                          {"lhs", vr.witness->lhs},
                          {"rhs", vr.witness->rhs},
                          {"inequality", vr.witness->inequality}};
    }
    return out;
}

json to_json(const ReproduceReport& rep) {
    return json{{"uniqueness_part", to_json(rep.uniqueness_part)},
                {"multiplicity_part", to_json(rep.multiplicity_part)},
                {"barrier_check", to_json(rep.barrier_check)},
                {"bounded_supersolution", to_json(rep.bounded_supersolution)},
                {"alpha_fitted", rep.alpha_fitted},
                {"alpha_expected", rep.alpha_expected},
                {"failed_invariants", rep.failed_invariants},
                {"ok", rep.ok()}};
}

json make_run_report(const std::string& command, const ParsedConfig& cfg,
                     const json& payload, const std::vector<Assertion>& assertions) {
    json asserts = json::array();
    bool all_pass = true;
    for (const auto& a : assertions) {
        asserts.push_back({{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
        all_pass &= a.pass;
    }
    return json{{"tool", {{"name", "driftlab"}, {"version", kDriftlabVersion}}},
                {"command", command},
                {"config_hash", config_hash(cfg.canonical_text)},
                {"scenario", scenario_to_json(cfg.scenario)},
                {"result", payload},
                {"assertions", asserts},
                {"ok", all_pass}};
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open output file for writing: " + path);
    }
    out << content;
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

std::string format_csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string probes_csv(const DichotomyReport& rep) {
    std::ostringstream out;
    out << "R,u_at_rstar\n";
    for (const auto& e : rep.probes) {
        if (!e.solved) continue;
        out << format_csv_number(e.R) << "," << format_csv_number(e.probe) << "\n";
    }
    return out.str();
}

std::string family_csv(const FamilyReport& rep) {
    if (rep.members.empty()) {
        throw NoDataError("family_csv: no family members");
    }
    std::ostringstream out;
    out << "r";
    for (const auto& m : rep.members) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%g", m.gamma);
        out << ",u_gamma_" << buf;
    }
    out << "\n";
    const auto& nodes = rep.members.front().solution.grid.nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        out << format_csv_number(nodes[i]);
        for (const auto& m : rep.members) {
            out << "," << format_csv_number(m.solution.values[i]);
        }
        out << "\n";
    }
    return out.str();
}

std::string solution_csv(const SolutionGrid& sol) {
    std::ostringstream out;
    out << "r,u\n";
    for (std::size_t i = 0; i < sol.grid.nodes.size(); ++i) {
        out << format_csv_number(sol.grid.nodes[i]) << "," << format_csv_number(sol.values[i]) << "\n";
    }
    return out.str();
}

}  // namespace driftlab
