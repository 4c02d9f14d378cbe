#include "driftlab/config.hpp"

#include "driftlab/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace driftlab {

namespace {

using nlohmann::json;

/// Wrapper that tracks which keys of an object were consumed and rejects
/// the rest, so configs cannot carry silently ignored settings.
class StrictObject {
public:
    StrictObject(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ConfigError("config error at " + path_ + ": expected an object");
        }
    }

    const json& require(const std::string& key) {
        used_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end()) {
            throw ConfigError("config error at " + path_ + ": missing key '" + key + "'");
        }
        return *it;
    }

    const json* optional(const std::string& key) {
        used_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!used_.count(it.key())) {
                throw ConfigError("config error at " + path_ + ": unknown key '" + it.key() + "'");
            }
        }
    }

    const std::string& path() const { return path_; }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError("config error at " + path + ": expected a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ConfigError("config error at " + path + ": expected an integer");
    return j.get<int>();
}

bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) throw ConfigError("config error at " + path + ": expected a boolean");
    return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError("config error at " + path + ": expected a string");
    return j.get<std::string>();
}

std::vector<double> as_number_list(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError("config error at " + path + ": expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

WarpingFunction parse_warping(const json& j, const std::string& path) {
    StrictObject o(j, path);
    const std::string kind = as_string(o.require("kind"), path + "/kind");
    WarpingFunction out = WarpingFunction::euclidean();
    if (kind == "euclidean") {
        // no parameters
    } else if (kind == "hyperbolic") {
        out = WarpingFunction::hyperbolic(as_number(o.require("curvature"), path + "/curvature"));
    } else if (kind == "power_law") {
        out = WarpingFunction::power_law(as_number(o.require("lambda"), path + "/lambda"));
    } else {
        throw ConfigError("config error at " + path + "/kind: unknown warping '" + kind + "'");
    }
    o.finish();
    return out;
}

RadialDrift parse_drift(const json& j, const std::string& path) {
    StrictObject o(j, path);
    const std::string family = as_string(o.require("family"), path + "/family");
    RadialDrift out = RadialDrift::zero();
    if (family == "zero") {
        // no parameters
    } else if (family == "power_affine") {
        const double amplitude = as_number(o.require("amplitude"), path + "/amplitude");
        const double exponent = as_number(o.require("exponent"), path + "/exponent");
        double offset = 0.0;
        if (const json* v = o.optional("offset")) offset = as_number(*v, path + "/offset");
        out = RadialDrift::power_affine(amplitude, exponent, offset);
    } else if (family == "sine") {
        out = RadialDrift::sine(as_number(o.require("amplitude"), path + "/amplitude"));
    } else {
        throw ConfigError("config error at " + path + "/family: unknown drift family '" + family + "'");
    }
    o.finish();
    return out;
}

PotentialC parse_potential(const json& j, const std::string& path) {
    StrictObject o(j, path);
    const std::string kind = as_string(o.require("kind"), path + "/kind");
    PotentialC out = PotentialC::constant(1.0);
    if (kind == "constant") {
        out = PotentialC::constant(as_number(o.require("c0"), path + "/c0"));
    } else if (kind == "polynomial") {
        out = PotentialC::polynomial(as_number_list(o.require("coefficients"), path + "/coefficients"));
    } else {
        throw ConfigError("config error at " + path + "/kind: unknown potential '" + kind + "'");
    }
    o.finish();
    return out;
}

Weight parse_weight(const json& j, const std::string& path) {
    StrictObject o(j, path);
    const std::string family = as_string(o.require("family"), path + "/family");
    Weight out = Weight::polynomial(1.0);
    if (family == "exponential") {
        out = Weight::exponential(as_number(o.require("beta"), path + "/beta"));
    } else if (family == "stretched_exponential") {
        out = Weight::stretched_exponential(as_number(o.require("beta"), path + "/beta"),
                                            as_number(o.require("theta"), path + "/theta"));
    } else if (family == "polynomial") {
        out = Weight::polynomial(as_number(o.require("tau"), path + "/tau"));
    } else {
        throw ConfigError("config error at " + path + "/family: unknown weight family '" + family + "'");
    }
    o.finish();
    return out;
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    StrictObject root(doc, "/");
    const int dimension = as_int(root.require("dimension"), "/dimension");
    WarpingFunction warping = parse_warping(root.require("warping"), "/warping");
    RadialDrift drift = parse_drift(root.require("drift"), "/drift");
    PotentialC potential = parse_potential(root.require("potential"), "/potential");
    Weight weight = parse_weight(root.require("weight"), "/weight");
    const double p = as_number(root.require("p"), "/p");

    SolverSettings solver;
    double R = 0.0;
    {
        const json& js = root.require("solver");
        StrictObject o(js, "/solver");
        R = as_number(o.require("R"), "/solver/R");
        const int nodes = as_int(o.require("nodes"), "/solver/nodes");
        if (nodes < 64) throw ConfigError("config error at /solver/nodes: need at least 64");
        solver.nodes = static_cast<std::size_t>(nodes);
        const std::string grading = as_string(o.require("grading"), "/solver/grading");
        if (grading == "uniform") {
            solver.uniform_grid = true;
        } else if (grading == "default") {
            solver.uniform_grid = false;
        } else {
            throw ConfigError("config error at /solver/grading: expected 'default' or 'uniform'");
        }
        solver.upwind = as_bool(o.require("upwind"), "/solver/upwind");
        o.finish();
    }

    Scenario sc = Scenario::make("", ModelManifold(dimension, warping), drift, potential, weight);
    sc.p = p;
    sc.solver = solver;
    {
        const json& je = root.require("experiment");
        StrictObject o(je, "/experiment");
        sc.r_star = as_number(o.require("r_star"), "/experiment/r_star");
        sc.R_ladder = as_number_list(o.require("R_ladder"), "/experiment/R_ladder");
        sc.gammas = as_number_list(o.require("gammas"), "/experiment/gammas");
        sc.declared_regime = regime_from_name(as_string(o.require("regime"), "/experiment/regime"));
        if (const json* v = o.optional("dichotomy_gamma")) {
            sc.dichotomy_gamma = as_number(*v, "/experiment/dichotomy_gamma");
        }
        o.finish();
    }
    if (std::abs(R - sc.R_ladder.back()) > 1e-9 * std::max(1.0, R) &&
        !(R >= sc.R_ladder.back())) {
        throw ConfigError("config error at /solver/R: must be >= the largest ladder entry");
    }

    ParsedConfig out{std::move(sc), std::nullopt, doc.dump()};

    if (const json* jr = root.optional("reproduce")) {
        StrictObject o(*jr, "/reproduce");
        ReproduceConfig rc;
        rc.base = out.scenario;
        {
            const json& part = o.require("growth_bounded");
            StrictObject po(part, "/reproduce/growth_bounded");
            rc.growth_bounded_drift = parse_drift(po.require("drift"), "/reproduce/growth_bounded/drift");
            rc.growth_bounded_potential =
                parse_potential(po.require("potential"), "/reproduce/growth_bounded/potential");
            po.finish();
        }
        {
            const json& part = o.require("superlinear");
            StrictObject po(part, "/reproduce/superlinear");
            rc.superlinear_drift = parse_drift(po.require("drift"), "/reproduce/superlinear/drift");
            rc.superlinear_potential =
                parse_potential(po.require("potential"), "/reproduce/superlinear/potential");
            po.finish();
        }
        {
            const json& barrier = o.require("barrier");
            StrictObject bo(barrier, "/reproduce/barrier");
            rc.barrier_C = as_number(bo.require("C"), "/reproduce/barrier/C");
            rc.barrier_beta = as_number(bo.require("beta"), "/reproduce/barrier/beta");
            rc.barrier_r_lo = as_number(bo.require("r_lo"), "/reproduce/barrier/r_lo");
            rc.barrier_r_hi = as_number(bo.require("r_hi"), "/reproduce/barrier/r_hi");
            bo.finish();
        }
        o.finish();
        out.reproduce = std::move(rc);
    }
    root.finish();

    out.scenario.validate();
    return out;
}

ParsedConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    ParsedConfig cfg = parse_config_text(buf.str());
    // Scenario name from the file stem.
    auto slash = path.find_last_of("/\\");
    std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = stem.find_last_of('.');
    if (dot != std::string::npos) stem = stem.substr(0, dot);
    cfg.scenario.name = stem;
    if (cfg.reproduce) cfg.reproduce->base.name = stem;
    return cfg;
}

std::string config_hash(const std::string& canonical_text) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical_text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

nlohmann::json scenario_to_json(const Scenario& sc) {
    json warping;
    switch (sc.manifold.warping.kind()) {
        case WarpingKind::Euclidean:
            warping = {{"kind", "euclidean"}};
            break;
        case WarpingKind::Hyperbolic:
            warping = {{"kind", "hyperbolic"}, {"curvature", sc.manifold.warping.curvature()}};
            break;
        case WarpingKind::PowerLaw:
            warping = {{"kind", "power_law"}, {"lambda", sc.manifold.warping.lambda()}};
            break;
        case WarpingKind::Sampled:
            warping = {{"kind", "sampled"}};
            break;
    }

    json drift;
    switch (sc.drift.family()) {
        case DriftFamily::Zero:
            drift = {{"family", "zero"}};
            break;
        case DriftFamily::PowerAffine:
            drift = {{"family", "power_affine"},
                     {"amplitude", sc.drift.amplitude()},
                     {"exponent", sc.drift.exponent()},
                     {"offset", sc.drift.offset()}};
            break;
        case DriftFamily::Bounded:
            if (sc.drift.label() == "sine") {
                drift = {{"family", "sine"}, {"amplitude", sc.drift.amplitude()}};
            } else {
                drift = {{"family", sc.drift.label()}};
            }
            break;
    }

    json potential;
    if (sc.potential.is_constant()) {
        potential = {{"kind", "constant"}, {"c0", sc.potential.coefficients().front()}};
    } else {
        potential = {{"kind", "polynomial"}, {"coefficients", sc.potential.coefficients()}};
    }

    json weight;
    switch (sc.weight.family()) {
        case WeightFamily::Exponential:
            weight = {{"family", "exponential"}, {"beta", sc.weight.beta()}};
            break;
        case WeightFamily::StretchedExponential:
            weight = {{"family", "stretched_exponential"},
                      {"beta", sc.weight.beta()},
                      {"theta", sc.weight.theta()}};
            break;
        case WeightFamily::Polynomial:
            weight = {{"family", "polynomial"}, {"tau", sc.weight.tau()}};
            break;
    }

    return json{{"dimension", sc.manifold.dimension},
                {"warping", warping},
                {"drift", drift},
                {"potential", potential},
                {"weight", weight},
                {"p", sc.p},
                {"solver",
                 {{"R", sc.R_ladder.back()},
                  {"nodes", static_cast<int>(sc.solver.nodes)},
                  {"grading", sc.solver.uniform_grid ? "uniform" : "default"},
                  {"upwind", sc.solver.upwind}}},
                {"experiment",
                 {{"r_star", sc.r_star},
                  {"R_ladder", sc.R_ladder},
                  {"gammas", sc.gammas},
                  {"regime", regime_name(sc.declared_regime)},
                  {"dichotomy_gamma", sc.dichotomy_gamma}}}};
}

}  // namespace driftlab
