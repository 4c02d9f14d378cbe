#pragma once

#include "driftlab/config.hpp"
#include "driftlab/experiments.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace driftlab {

nlohmann::json to_json(const HypothesisReport& rep);
nlohmann::json to_json(const AdmissibleParams& ap);
nlohmann::json to_json(const GrowthReport& g);
nlohmann::json to_json(const DichotomyReport& rep);
nlohmann::json to_json(const FamilyReport& rep);
nlohmann::json to_json(const VerifyResult& vr);
nlohmann::json to_json(const ReproduceReport& rep);

struct Assertion {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Machine-readable run document: deterministic for a fixed config
/// (timestamps live in the separate run_meta.json).
nlohmann::json make_run_report(const std::string& command, const ParsedConfig& cfg,
                               const nlohmann::json& payload,
                               const std::vector<Assertion>& assertions);

void write_text_file(const std::string& path, const std::string& content);
std::string format_csv_number(double v);

std::string probes_csv(const DichotomyReport& rep);
std::string family_csv(const FamilyReport& rep);
std::string solution_csv(const SolutionGrid& sol);

}  // namespace driftlab
