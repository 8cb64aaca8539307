#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "logistic/logistic_solver.hpp"
#include "logistic/problem_data.hpp"

namespace logistic {

/// Malformed configuration or command line; mapped to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PotentialSpec {
    std::string family;  // rational_decay | gaussian_bump | tabulated
    double a = 1.0, p = 0.0, b = 0.0, q = 0.0;  // rational_decay
    double c = 1.0;                             // gaussian_bump
    std::string table_path;                     // tabulated
    std::optional<double> sup_norm;
    std::optional<DecayBound> decay;
};

struct AbsorptionSpec {
    std::string family;  // power
    double p = 2.0;
};

struct RunConfig {
    int dimension = 3;
    PotentialSpec potential;
    AbsorptionSpec absorption;
    int nodes_per_unit = 256;
    std::optional<double> radius;
    std::vector<double> R_schedule;
    std::optional<double> lambda;
    std::vector<double> lambda_grid;
    SolveOptions solve;        // tolerances block
    double eig_tol = 1e-10;    // "tol" in the config
    std::uint64_t seed = 0;

    double domain_extent() const;  // largest radius named anywhere
};

/// Parse the JSON run config; environment variables LOGISTIC_TOL,
/// LOGISTIC_TOL_FIX, LOGISTIC_TOL_RES, LOGISTIC_EXTINCTION_TOL and
/// LOGISTIC_TOL_STAGE override the tolerance block.
RunConfig load_config(const std::string& path);

Potential make_potential(const RunConfig& cfg);
AbsorptionTerm make_absorption(const RunConfig& cfg);

}  // namespace logistic
