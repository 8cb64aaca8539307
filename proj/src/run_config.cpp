#include "logistic/run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace logistic {

namespace {

using nlohmann::json;

double env_or(const char* name, double fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    try {
        return std::stod(v);
    } catch (...) {
        throw ConfigError(std::string("bad numeric value in $") + name);
    }
}

std::vector<std::pair<double, double>> load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open potential table " + path);
    std::vector<std::pair<double, double>> table;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        for (char& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream ss(line);
        double r, v;
        if (ss >> r >> v) table.emplace_back(r, v);
        // non-numeric lines (a header) are skipped
    }
    if (table.size() < 2)
        throw ConfigError("potential table " + path + " has < 2 samples");
    return table;
}

}  // namespace

double RunConfig::domain_extent() const {
    double r = radius.value_or(0.0);
    if (!R_schedule.empty()) r = std::max(r, R_schedule.back());
    return r > 0.0 ? r : 10.0;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }

    RunConfig cfg;
    try {
        cfg.dimension = j.value("dimension", 3);
        if (cfg.dimension < 3) throw ConfigError("dimension must be >= 3");

        if (!j.contains("potential") || !j["potential"].contains("family"))
            throw ConfigError("config needs potential.family");
        const auto& pj = j["potential"];
        cfg.potential.family = pj["family"].get<std::string>();
        cfg.potential.a = pj.value("a", 1.0);
        cfg.potential.p = pj.value("p", 0.0);
        cfg.potential.b = pj.value("b", 0.0);
        cfg.potential.q = pj.value("q", 0.0);
        cfg.potential.c = pj.value("c", 1.0);
        cfg.potential.table_path = pj.value("path", std::string{});
        if (pj.contains("sup_norm"))
            cfg.potential.sup_norm = pj["sup_norm"].get<double>();
        if (pj.contains("decay_A") && pj.contains("decay_alpha"))
            cfg.potential.decay = DecayBound{pj["decay_A"].get<double>(),
                                             pj["decay_alpha"].get<double>()};

        if (!j.contains("absorption") || !j["absorption"].contains("family"))
            throw ConfigError("config needs absorption.family");
        cfg.absorption.family = j["absorption"]["family"].get<std::string>();
        cfg.absorption.p = j["absorption"].value("p", 2.0);

        cfg.nodes_per_unit = j.value("grid", json::object())
                                 .value("nodes_per_unit", 256);
        if (cfg.nodes_per_unit < 4)
            throw ConfigError("nodes_per_unit must be >= 4");

        if (j.contains("radius")) cfg.radius = j["radius"].get<double>();
        if (j.contains("R_schedule"))
            cfg.R_schedule = j["R_schedule"].get<std::vector<double>>();
        for (std::size_t i = 1; i < cfg.R_schedule.size(); ++i)
            if (!(cfg.R_schedule[i] > cfg.R_schedule[i - 1]))
                throw ConfigError("R_schedule must be strictly increasing");

        if (j.contains("lambda")) cfg.lambda = j["lambda"].get<double>();
        if (j.contains("lambda_grid"))
            cfg.lambda_grid = j["lambda_grid"].get<std::vector<double>>();

        const auto tj = j.value("tolerances", json::object());
        cfg.eig_tol = tj.value("tol", 1e-10);
        cfg.solve.eig_tol = cfg.eig_tol;
        cfg.solve.tol_fix = tj.value("tol_fix", 1e-10);
        cfg.solve.tol_res = tj.value("tol_res", 1e-8);
        cfg.solve.extinction_tol = tj.value("extinction_tol", 0.0);
        cfg.solve.tol_stage = tj.value("tol_stage", 1e-7);
        cfg.solve.max_iter = tj.value("max_iter", 400000);

        cfg.seed = j.value("seed", std::uint64_t{0});
    } catch (const json::exception& e) {
        throw ConfigError("malformed config: " + std::string(e.what()));
    }

    cfg.eig_tol = env_or("LOGISTIC_TOL", cfg.eig_tol);
    cfg.solve.eig_tol = cfg.eig_tol;
    cfg.solve.tol_fix = env_or("LOGISTIC_TOL_FIX", cfg.solve.tol_fix);
    cfg.solve.tol_res = env_or("LOGISTIC_TOL_RES", cfg.solve.tol_res);
    cfg.solve.extinction_tol =
        env_or("LOGISTIC_EXTINCTION_TOL", cfg.solve.extinction_tol);
    cfg.solve.tol_stage = env_or("LOGISTIC_TOL_STAGE", cfg.solve.tol_stage);

    for (double t : {cfg.eig_tol, cfg.solve.tol_fix, cfg.solve.tol_res,
                     cfg.solve.tol_stage})
        if (!(t > 0.0)) throw ConfigError("tolerances must be positive");
    return cfg;
}

Potential make_potential(const RunConfig& cfg) {
    const auto& s = cfg.potential;
    Potential V;
    if (s.family == "rational_decay") {
        V = Potential::rational_decay(s.a, s.p, s.b, s.q);
    } else if (s.family == "gaussian_bump") {
        V = Potential::gaussian_bump(s.c);
    } else if (s.family == "tabulated") {
        V = Potential::tabulated(load_table(s.table_path));
    } else {
        throw ConfigError("unknown potential family '" + s.family + "'");
    }
    if (s.sup_norm) V.set_sup_norm(*s.sup_norm);
    if (s.decay) V.set_decay_bound(*s.decay);
    return V;
}

AbsorptionTerm make_absorption(const RunConfig& cfg) {
    if (cfg.absorption.family == "power") {
        if (!(cfg.absorption.p > 1.0))
            throw ConfigError("power absorption needs p > 1");
        return AbsorptionTerm::power(cfg.absorption.p);
    }
    throw ConfigError("unknown absorption family '" + cfg.absorption.family +
                      "'");
}

}  // namespace logistic
