#pragma once

#include <span>
#include <vector>

namespace logistic {

struct RadialGrid;
class Potential;
class AbsorptionTerm;
struct SolutionProfile;

/// Log-log tail slope of a positive profile against the expected rate 2 - N.
struct DecayReport {
    double slope = 0.0;
    double target = 0.0;   // 2 - N
    double r_lo = 0.0;     // fit window
    double r_hi = 0.0;
    int points = 0;
    bool pass = false;     // |slope - target| <= 0.1
};

/// Fit window defaults to the outer third of the domain minus the last 5%
/// (Dirichlet boundary layer). Throws std::domain_error when the profile
/// touches zero inside the window.
DecayReport decay_exponent(const SolutionProfile& profile,
                           double window_lo_frac = 2.0 / 3.0,
                           double window_hi_frac = 0.95);

struct NormEntry {
    double value = 0.0;
    double half_value = 0.0;       // same quantity over B_{R/2}
    double stability_ratio = 0.0;  // value / half_value
};

struct NormReport {
    NormEntry l2_norm;      // sqrt(int u^2)
    NormEntry energy;       // a(u,u)
    NormEntry int_Vplus_u;  // int V^+ u
    NormEntry int_Vminus_u; // int V^- u
    NormEntry int_f_u;      // int f(u)
};

NormReport norms(const SolutionProfile& profile, const Potential& V,
                 const AbsorptionTerm& f);

/// omega_N r^{N-1} u u' at the outer fit point (one-sided difference).
double boundary_flux(const SolutionProfile& profile, double at_frac = 0.95);

/// Radial Newtonian potential of rho = V^+ u and the consistency residual of
/// -Lap v = rho against the stiffness operator.
struct NewtonianResult {
    std::vector<double> v;
    double boundary_value = 0.0;      // v(R), enters the stiffness correction
    double tail_bound = 0.0;          // bound on the dropped integral over r > R
    double identity_residual = 0.0;   // relative sup-norm residual of A v = W rho
};

NewtonianResult newtonian_potential(const SolutionProfile& profile,
                                    const Potential& V);

/// Same computation from an explicit density (rho_at_R supplies the ghost
/// sample the boundary cell of the outer integral needs).
NewtonianResult newtonian_from_density(const RadialGrid& grid,
                                       std::span<const double> rho,
                                       double rho_at_R, double tail_bound = 0.0);

/// Relative gap in the energy identity a(u,u) = lambda (int V u^2 - int f(u) u)
/// satisfied by converged Dirichlet profiles.
double flux_energy_gap(const SolutionProfile& profile, const Potential& V,
                       const AbsorptionTerm& f);

/// Pointwise comparison C v - u > 0 with C = 2 lambda (1 + sup u / min_window v).
struct ComparisonReport {
    double C = 0.0;
    double min_margin = 0.0;  // min_i (C v_i - u_i)
    bool pass = false;
};

ComparisonReport newtonian_comparison(const SolutionProfile& profile,
                                      const NewtonianResult& newton);

}  // namespace logistic
