#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace logistic {

struct RadialGrid;
class Potential;
class AbsorptionTerm;

struct SolveOptions {
    double tol_fix = 1e-10;        // fixed-point stop, relative to sup-norm
    double tol_res = 1e-8;         // accepted relative residual
    double extinction_tol = 0.0;   // 0 selects 1e-10 * M
    double tol_stage = 1e-7;       // stage agreement, relative to sup-norm
    int max_iter = 400000;
    double mono_allowance = 1e-9;  // roundoff slack in ordering asserts
    double sup_bound = 0.0;        // 0 selects supersolution_bound(f, ||V||)
    double eig_tol = 1e-10;        // tolerance of the embedded eigensolve
};

enum class Branch { Minimal, Maximal };

/// Converged radial solution of -Lap u = lambda (V u - f(u)) on B_R.
struct SolutionProfile {
    int dim = 0;
    double radius = 0.0;
    double lambda = 0.0;
    std::vector<double> r;
    std::vector<double> u;
    Branch branch = Branch::Minimal;
    int iterations = 0;
    double update_norm = 0.0;
    double residual = 0.0;            // relative, sup-norm
    double sup_bound_M = 0.0;         // supersolution constant in force
    int monotonicity_violations = 0;  // ordering failures beyond allowance
    double worst_violation = 0.0;

    double sup_norm() const;
};

/// Evidence that the iteration collapsed to zero (no positive steady state).
struct Extinct {
    double lambda = 0.0;
    std::string reason;
    std::vector<double> sup_trajectory;  // decreasing sup-norms
};

using BallOutcome = std::variant<SolutionProfile, Extinct>;

/// Monotone iteration u <- (A + lambda K W)^{-1} lambda W (V u - f(u) + K u)
/// from a verified subsolution (epsilon * e1) or the constant supersolution M.
BallOutcome monotone_solve_ball(const RadialGrid& grid, const Potential& V,
                                const AbsorptionTerm& f, double lambda,
                                Branch start, const SolveOptions& opts = {});

/// ||u_min - u_max||_inf / ||u_max||_inf from the two monotone limits.
/// Throws std::runtime_error when either branch goes extinct (caller asserts
/// lambda > lambda_1(R)).
double minimal_maximal_gap(const RadialGrid& grid, const Potential& V,
                           const AbsorptionTerm& f, double lambda,
                           const SolveOptions& opts = {});

struct StageInfo {
    double R = 0.0;
    bool extinct = false;
    double sup_norm = 0.0;
    int iterations = 0;
    double stage_delta = 0.0;  // sup difference to the previous stage
};

struct EntireSolution {
    std::vector<StageInfo> stages;
    SolutionProfile final_profile;
    double activation_R = 0.0;        // first radius with lambda_1(R) < lambda
    bool stage_converged = false;     // last delta < tol_stage
    double supersolution_constant = 0.0;  // witnessed n*: u <= n*/(1+r^2)
    bool supersolution_ok = false;
    int monotonicity_violations_total = 0;
};

using EntireOutcome = std::variant<EntireSolution, Extinct>;

/// Expanding-ball construction: each stage warm-starts from the zero
/// extension of the previous profile (an exact discrete subsolution on the
/// nested grid) and the stage profiles are asserted nondecreasing.
EntireOutcome solve_entire(const Potential& V, const AbsorptionTerm& f,
                           double lambda,
                           const std::vector<double>& R_schedule, int dim,
                           int nodes_per_unit, const SolveOptions& opts = {});

struct SweepRow {
    double lambda = 0.0;
    bool exists = false;
    double sup_norm = 0.0;
    int stages = 0;
    double activation_R = 0.0;  // 0 when never activated
    int iterations = 0;         // total monotone iterations spent
};

std::vector<SweepRow> bifurcation_sweep(const Potential& V,
                                        const AbsorptionTerm& f,
                                        const std::vector<double>& lambda_grid,
                                        const std::vector<double>& R_schedule,
                                        int dim, int nodes_per_unit,
                                        const SolveOptions& opts = {});

/// Midpoint between the largest extinct lambda and the smallest existent one;
/// empty when the sweep does not bracket the threshold.
std::optional<double> empirical_threshold(const std::vector<SweepRow>& rows);

}  // namespace logistic
