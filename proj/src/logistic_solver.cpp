#include "logistic/logistic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "logistic/eigensolver.hpp"
#include "logistic/problem_data.hpp"
#include "logistic/radial_grid.hpp"
#include "logistic/tridiag.hpp"

namespace logistic {

namespace {

double sup_norm_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

struct IterationStats {
    int iterations = 0;
    double update_norm = 0.0;
    int violations = 0;
    double worst_violation = 0.0;
    bool extinct = false;
    std::vector<double> sup_trajectory;
};

// Relative sup-norm residual of A u = lambda W (V u - f(u)).
double equation_residual(const Tridiag& A, const RadialGrid& grid,
                         const std::vector<double>& Vs,
                         const AbsorptionTerm& f, double lambda,
                         const std::vector<double>& u) {
    const auto Au = apply(A, u);
    double num = 0.0, den = 1e-300;
    for (int i = 0; i < grid.node_count; ++i) {
        const double rhs =
            lambda * grid.quad_weights[i] * (Vs[i] * u[i] - f(u[i]));
        num = std::max(num, std::fabs(Au[i] - rhs));
        den = std::max(den, std::max(std::fabs(Au[i]), std::fabs(rhs)));
    }
    return num / den;
}

// The fixed-point map u -> (A + lambda K W)^{-1} lambda W (V u - f(u) + K u)
// is order-preserving on [0, M] once K >= sup f' + ||V||; iterates from a
// subsolution increase, from a supersolution decrease.
IterationStats iterate_monotone(const RadialGrid& grid,
                                const std::vector<double>& Vs,
                                const AbsorptionTerm& f, double lambda,
                                double K, double M, bool upward,
                                std::vector<double>& u,
                                const SolveOptions& opts,
                                double extinction_tol, const Tridiag& A,
                                const CholeskyBidiag& F) {
    const int n = grid.node_count;
    IterationStats st;
    std::vector<double> rhs(n), x;

    for (st.iterations = 1; st.iterations <= opts.max_iter; ++st.iterations) {
        for (int i = 0; i < n; ++i)
            rhs[i] = lambda * grid.quad_weights[i] *
                     (Vs[i] * u[i] - f(u[i]) + K * u[i]);
        solve(F, rhs, x);

        const double allow =
            opts.mono_allowance * std::max(1.0, sup_norm_of(u));
        double delta = 0.0, sup = 0.0;
        for (int i = 0; i < n; ++i) {
            const double gap = upward ? u[i] - x[i] : x[i] - u[i];
            if (gap > allow) {
                ++st.violations;
                st.worst_violation = std::max(st.worst_violation, gap);
            }
            if (x[i] < 0.0) x[i] = 0.0;  // roundoff guard; map preserves >= 0
            delta = std::max(delta, std::fabs(x[i] - u[i]));
            sup = std::max(sup, x[i]);
        }
        u = x;
        st.update_norm = delta;
        st.sup_trajectory.push_back(sup);

        if (sup < extinction_tol) {
            st.extinct = true;
            return st;
        }
        if (sup > M * (1.0 + 1e-9))
            throw std::runtime_error(
                "monotone iterate exceeded the supersolution bound");
        if (delta <= opts.tol_fix * sup &&
            equation_residual(A, grid, Vs, f, lambda, u) <= opts.tol_res)
            return st;
    }
    throw NonConverged("monotone iteration hit max_iter", sup_norm_of(u),
                       st.iterations, 0.0);
}

SolutionProfile make_profile(const RadialGrid& grid, double lambda,
                             std::vector<double> u, Branch branch,
                             const IterationStats& st, double M,
                             double residual) {
    SolutionProfile p;
    p.dim = grid.dim;
    p.radius = grid.radius;
    p.lambda = lambda;
    p.r = grid.nodes;
    p.u = std::move(u);
    p.branch = branch;
    p.iterations = st.iterations;
    p.update_norm = st.update_norm;
    p.residual = residual;
    p.sup_bound_M = M;
    p.monotonicity_violations = st.violations;
    p.worst_violation = st.worst_violation;
    return p;
}

// Nodewise check of the subsolution inequality eps*mu1*e1 + lambda*f(eps*e1)
// <= 0; halve eps until it holds (f(t)/t -> 0 makes the search terminate).
double subsolution_scale(const ShiftedEigenResult& eig,
                         const AbsorptionTerm& f, double lambda) {
    double eps = 1.0;
    while (true) {
        bool ok = true;
        for (double e : eig.e1) {
            if (eps * eig.mu1 * e + lambda * f(eps * e) > 0.0) {
                ok = false;
                break;
            }
        }
        if (ok) return eps;
        eps *= 0.5;
        if (eps < 1e-300)
            throw std::runtime_error(
                "subsolution scale underflow (mu1 too close to zero)");
    }
}

int node_count_for(double R, int nodes_per_unit) {
    const double cells = R * nodes_per_unit;
    const double rounded = std::lround(cells);
    if (std::fabs(cells - rounded) > 1e-6 * std::max(1.0, cells))
        throw std::invalid_argument(
            "schedule radius " + std::to_string(R) +
            " does not align with nodes_per_unit (nested grids need R * "
            "nodes_per_unit integral)");
    const int m = static_cast<int>(rounded) - 1;
    if (m < 2)
        throw std::invalid_argument("nodes_per_unit too small for radius");
    return m;
}

}  // namespace

double SolutionProfile::sup_norm() const { return sup_norm_of(u); }

BallOutcome monotone_solve_ball(const RadialGrid& grid, const Potential& V,
                                const AbsorptionTerm& f, double lambda,
                                Branch start, const SolveOptions& opts) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("monotone_solve_ball requires lambda > 0");

    const double sup_V = V.sup_norm(grid.radius);
    const double M =
        opts.sup_bound > 0.0 ? opts.sup_bound : supersolution_bound(f, sup_V);
    const double K = f.derivative_sup(M) + sup_V + 1.0;
    const double ext_tol =
        opts.extinction_tol > 0.0 ? opts.extinction_tol : 1e-10 * M;

    const auto Vs = V.sample(grid);
    const auto A = stiffness_matrix(build_stiffness(grid));
    Tridiag sys = A;
    for (int i = 0; i < grid.node_count; ++i)
        sys.diag[i] += lambda * K * grid.quad_weights[i];
    const auto F = cholesky(sys);
    if (!F.ok) throw std::runtime_error("shifted operator not SPD");

    std::vector<double> u;
    if (start == Branch::Maximal) {
        u.assign(grid.node_count, M);
    } else {
        const auto eig = principal_shifted(grid, V, lambda, opts.eig_tol);
        if (eig.mu1 >= 0.0)
            return Extinct{lambda,
                           "least eigenvalue mu1 = " + std::to_string(eig.mu1) +
                               " >= 0: lambda <= lambda_1(R), no positive "
                               "subsolution exists",
                           {}};
        const double eps = subsolution_scale(eig, f, lambda);
        u.resize(grid.node_count);
        for (int i = 0; i < grid.node_count; ++i) u[i] = eps * eig.e1[i];
    }

    auto st = iterate_monotone(grid, Vs, f, lambda, K, M,
                               start == Branch::Minimal, u, opts, ext_tol, A, F);
    if (st.extinct)
        return Extinct{lambda, "iterates collapsed below the extinction threshold",
                       std::move(st.sup_trajectory)};
    const double res = equation_residual(A, grid, Vs, f, lambda, u);
    return make_profile(grid, lambda, std::move(u), start, st, M, res);
}

double minimal_maximal_gap(const RadialGrid& grid, const Potential& V,
                           const AbsorptionTerm& f, double lambda,
                           const SolveOptions& opts) {
    auto lo = monotone_solve_ball(grid, V, f, lambda, Branch::Minimal, opts);
    auto hi = monotone_solve_ball(grid, V, f, lambda, Branch::Maximal, opts);
    if (!std::holds_alternative<SolutionProfile>(lo) ||
        !std::holds_alternative<SolutionProfile>(hi))
        throw std::runtime_error(
            "minimal_maximal_gap: a branch went extinct although lambda > "
            "lambda_1(R) was required");
    const auto& umin = std::get<SolutionProfile>(lo);
    const auto& umax = std::get<SolutionProfile>(hi);

    const double allow =
        opts.mono_allowance * std::max(1.0, umax.sup_norm());
    double gap = 0.0;
    for (int i = 0; i < grid.node_count; ++i) {
        if (umin.u[i] > umax.u[i] + allow)
            throw std::runtime_error(
                "minimal_maximal_gap: branch ordering violated");
        gap = std::max(gap, std::fabs(umax.u[i] - umin.u[i]));
    }
    return gap / umax.sup_norm();
}

EntireOutcome solve_entire(const Potential& V, const AbsorptionTerm& f,
                           double lambda,
                           const std::vector<double>& R_schedule, int dim,
                           int nodes_per_unit, const SolveOptions& opts) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("solve_entire requires lambda > 0");
    if (R_schedule.empty())
        throw std::invalid_argument("solve_entire: empty schedule");
    for (std::size_t i = 1; i < R_schedule.size(); ++i)
        if (!(R_schedule[i] > R_schedule[i - 1]))
            throw std::invalid_argument("schedule must be strictly increasing");

    const double R_final = R_schedule.back();
    const double sup_V = V.sup_norm(R_final);
    const double M =
        opts.sup_bound > 0.0 ? opts.sup_bound : supersolution_bound(f, sup_V);
    const double K = f.derivative_sup(M) + sup_V + 1.0;
    const double ext_tol =
        opts.extinction_tol > 0.0 ? opts.extinction_tol : 1e-10 * M;

    EntireSolution sol;
    std::vector<double> prev_u;  // last active profile (nested grid prefix)
    RadialGrid grid;
    bool have_active = false;

    for (double R : R_schedule) {
        grid = build_grid(dim, R, node_count_for(R, nodes_per_unit));
        const auto Vs = V.sample(grid);
        const auto A = stiffness_matrix(build_stiffness(grid));
        Tridiag sys = A;
        for (int i = 0; i < grid.node_count; ++i)
            sys.diag[i] += lambda * K * grid.quad_weights[i];
        const auto F = cholesky(sys);
        if (!F.ok) throw std::runtime_error("shifted operator not SPD");

        std::vector<double> u;
        if (have_active) {
            // Zero extension of the previous stage: an exact discrete
            // subsolution on the refined-in-radius (nested) grid.
            u.assign(grid.node_count, 0.0);
            std::copy(prev_u.begin(), prev_u.end(), u.begin());
        } else {
            ShiftedEigenResult eig;
            try {
                eig = principal_shifted(grid, V, lambda, opts.eig_tol);
            } catch (const NonConverged&) {
                sol.stages.push_back({R, true, 0.0, 0, 0.0});
                continue;
            }
            if (eig.mu1 >= 0.0) {
                sol.stages.push_back({R, true, 0.0, 0, 0.0});
                continue;
            }
            const double eps = subsolution_scale(eig, f, lambda);
            u.resize(grid.node_count);
            for (int i = 0; i < grid.node_count; ++i) u[i] = eps * eig.e1[i];
        }

        const std::vector<double> u_start = u;
        auto st = iterate_monotone(grid, Vs, f, lambda, K, M, true, u, opts,
                                   ext_tol, A, F);
        sol.monotonicity_violations_total += st.violations;
        if (st.extinct) {
            sol.stages.push_back({R, true, 0.0, st.iterations, 0.0});
            continue;
        }

        const double sup = sup_norm_of(u);
        double delta = sup;
        if (have_active) {
            delta = 0.0;
            const double allow = opts.mono_allowance * std::max(1.0, sup);
            for (std::size_t i = 0; i < u.size(); ++i) {
                const double base = u_start[i];
                if (u[i] < base - allow)
                    throw std::runtime_error(
                        "stage profiles not nondecreasing (tolerances too "
                        "loose)");
                if (i < prev_u.size())
                    delta = std::max(delta, std::fabs(u[i] - prev_u[i]));
            }
        } else {
            sol.activation_R = R;
        }

        const double res = equation_residual(A, grid, Vs, f, lambda, u);
        sol.final_profile = make_profile(grid, lambda, u, Branch::Minimal, st,
                                         M, res);
        sol.stages.push_back({R, false, sup, st.iterations, delta});
        const bool second_active = have_active;
        have_active = true;
        prev_u = std::move(u);

        if (second_active && delta <= opts.tol_stage * std::max(sup, 1e-300)) {
            sol.stage_converged = true;
            break;
        }
    }

    if (!have_active)
        return Extinct{lambda,
                       "every stage refused or collapsed: lambda below the "
                       "principal eigenvalue of the largest ball",
                       {}};

    // Witness a constant n* making n/(1+r^2) a discrete supersolution that
    // dominates the computed profile.
    {
        const auto& p = sol.final_profile;
        const auto g = build_grid(p.dim, p.radius,
                                  static_cast<int>(p.u.size()));
        const auto form = build_stiffness(g);
        const auto Vs = V.sample(g);
        double nstar = 1.0;
        bool ok = false;
        std::vector<double> ubar(g.node_count);
        for (int k = 0; k < 40 && !ok; ++k, nstar *= 2.0) {
            for (int i = 0; i < g.node_count; ++i)
                ubar[i] = nstar / (1.0 + g.nodes[i] * g.nodes[i]);
            const auto Aub = apply_stiffness(form, ubar);
            ok = true;
            for (int i = 0; i < g.node_count && ok; ++i) {
                const double rhs = lambda * g.quad_weights[i] *
                                   (Vs[i] * ubar[i] - f(ubar[i]));
                const double slack =
                    1e-12 * (std::fabs(Aub[i]) + std::fabs(rhs));
                if (Aub[i] < rhs - slack || p.u[i] > ubar[i]) ok = false;
            }
            if (ok) {
                sol.supersolution_constant = nstar;
                sol.supersolution_ok = true;
            }
        }
    }
    return sol;
}

std::vector<SweepRow> bifurcation_sweep(const Potential& V,
                                        const AbsorptionTerm& f,
                                        const std::vector<double>& lambda_grid,
                                        const std::vector<double>& R_schedule,
                                        int dim, int nodes_per_unit,
                                        const SolveOptions& opts) {
    for (std::size_t i = 1; i < lambda_grid.size(); ++i)
        if (!(lambda_grid[i] > lambda_grid[i - 1]))
            throw std::invalid_argument("lambda grid must be increasing");

    std::vector<SweepRow> rows;
    for (double lam : lambda_grid) {
        SweepRow row;
        row.lambda = lam;
        auto out = solve_entire(V, f, lam, R_schedule, dim, nodes_per_unit,
                                opts);
        if (const auto* sol = std::get_if<EntireSolution>(&out)) {
            row.exists = true;
            row.sup_norm = sol->final_profile.sup_norm();
            row.stages = static_cast<int>(sol->stages.size());
            row.activation_R = sol->activation_R;
            for (const auto& s : sol->stages) row.iterations += s.iterations;
        } else {
            row.exists = false;
            row.sup_norm = 0.0;
            row.stages = static_cast<int>(R_schedule.size());
        }
        rows.push_back(row);
    }
    return rows;
}

std::optional<double> empirical_threshold(const std::vector<SweepRow>& rows) {
    std::optional<double> last_extinct, first_exists;
    for (const auto& r : rows) {
        if (!r.exists) {
            if (!first_exists) last_extinct = r.lambda;
        } else if (!first_exists) {
            first_exists = r.lambda;
        }
    }
    if (last_extinct && first_exists)
        return 0.5 * (*last_extinct + *first_exists);
    return std::nullopt;
}

}  // namespace logistic
