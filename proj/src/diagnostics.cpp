#include "logistic/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "logistic/logistic_solver.hpp"
#include "logistic/problem_data.hpp"
#include "logistic/radial_grid.hpp"
#include "logistic/tridiag.hpp"

namespace logistic {

namespace {

RadialGrid grid_of(const SolutionProfile& p) {
    return build_grid(p.dim, p.radius, static_cast<int>(p.u.size()));
}

double ratio_or_one(double value, double half) {
    if (half == 0.0) return value == 0.0 ? 1.0
                                         : std::numeric_limits<double>::infinity();
    return value / half;
}

}  // namespace

DecayReport decay_exponent(const SolutionProfile& profile,
                           double window_lo_frac, double window_hi_frac) {
    if (!(window_lo_frac < window_hi_frac) || window_hi_frac > 1.0)
        throw std::invalid_argument("decay_exponent: bad fit window");
    DecayReport rep;
    rep.target = 2.0 - profile.dim;
    rep.r_lo = window_lo_frac * profile.radius;
    rep.r_hi = window_hi_frac * profile.radius;

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < profile.r.size(); ++i) {
        const double r = profile.r[i];
        if (r < rep.r_lo || r > rep.r_hi) continue;
        if (!(profile.u[i] > 0.0))
            throw std::domain_error(
                "decay_exponent: profile not strictly positive on the fit "
                "window (extinct profiles have no decay rate)");
        const double x = std::log(r), y = std::log(profile.u[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2)
        throw std::domain_error("decay_exponent: fewer than 2 window nodes");
    rep.points = n;
    rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.pass = std::fabs(rep.slope - rep.target) <= 0.1;
    return rep;
}

NormReport norms(const SolutionProfile& profile, const Potential& V,
                 const AbsorptionTerm& f) {
    const auto grid = grid_of(profile);
    const auto form = build_stiffness(grid);
    const int n = grid.node_count;
    const double half_R = 0.5 * profile.radius;

    std::vector<double> u2(n), vplus_u(n), vminus_u(n), fu(n);
    for (int i = 0; i < n; ++i) {
        u2[i] = profile.u[i] * profile.u[i];
        vplus_u[i] = V.positive_part(grid.nodes[i]) * profile.u[i];
        vminus_u[i] = V.negative_part(grid.nodes[i]) * profile.u[i];
        fu[i] = f(profile.u[i]);
    }

    NormReport rep;
    auto fill = [&](NormEntry& e, const std::vector<double>& vals) {
        e.value = integrate(grid, vals);
        e.half_value = integrate_within(grid, vals, half_R);
        e.stability_ratio = ratio_or_one(e.value, e.half_value);
    };
    fill(rep.int_Vplus_u, vplus_u);
    fill(rep.int_Vminus_u, vminus_u);
    fill(rep.int_f_u, fu);

    NormEntry l2sq;
    fill(l2sq, u2);
    rep.l2_norm.value = std::sqrt(l2sq.value);
    rep.l2_norm.half_value = std::sqrt(l2sq.half_value);
    rep.l2_norm.stability_ratio =
        ratio_or_one(rep.l2_norm.value, rep.l2_norm.half_value);

    rep.energy.value = bilinear(form, profile.u, profile.u);
    rep.energy.half_value = energy_within(form, grid, profile.u, half_R);
    rep.energy.stability_ratio =
        ratio_or_one(rep.energy.value, rep.energy.half_value);
    return rep;
}

double boundary_flux(const SolutionProfile& profile, double at_frac) {
    const int n = static_cast<int>(profile.u.size());
    if (n < 3)
        throw std::invalid_argument("boundary_flux needs >= 3 nodes");
    const auto grid = grid_of(profile);
    const double r_eval = at_frac * profile.radius;
    int i = 0;
    while (i + 1 < n && profile.r[i + 1] <= r_eval) ++i;
    const double up = (i + 1 < n ? profile.u[i + 1] : 0.0);
    const double du = (up - profile.u[i]) / grid.spacing;
    return grid.sphere_area * std::pow(profile.r[i], profile.dim - 1) *
           profile.u[i] * du;
}

NewtonianResult newtonian_from_density(const RadialGrid& grid,
                                       std::span<const double> rho,
                                       double rho_at_R, double tail_bound) {
    const int n = grid.node_count;
    if (static_cast<int>(rho.size()) != n)
        throw std::invalid_argument("newtonian: density length mismatch");
    if (grid.dim < 3)
        throw std::invalid_argument("newtonian potential needs N >= 3");
    const double h = grid.spacing;
    const int N = grid.dim;

    // Cumulative trapezoid of rho s^{N-1} from 0 and of rho s out to R;
    // the same O(h^2) accuracy as the volume quadrature.
    std::vector<double> inner(n), outer(n);
    double acc = 0.0, g_prev = 0.0;  // g(0) = 0 for N >= 2
    for (int i = 0; i < n; ++i) {
        const double g = rho[i] * std::pow(grid.nodes[i], N - 1);
        acc += 0.5 * h * (g_prev + g);
        inner[i] = acc;
        g_prev = g;
    }
    const double g_R = rho_at_R * std::pow(grid.radius, N - 1);
    const double inner_R = acc + 0.5 * h * (g_prev + g_R);

    acc = 0.0;
    g_prev = rho_at_R * grid.radius;
    for (int i = n - 1; i >= 0; --i) {
        const double g = rho[i] * grid.nodes[i];
        acc += 0.5 * h * (g + g_prev);
        outer[i] = acc;
        g_prev = g;
    }

    NewtonianResult res;
    res.tail_bound = tail_bound;
    res.v.resize(n);
    for (int i = 0; i < n; ++i)
        res.v[i] = (std::pow(grid.nodes[i], 2 - N) * inner[i] + outer[i]) /
                   (N - 2);
    res.boundary_value = std::pow(grid.radius, 2 - N) * inner_R / (N - 2);

    // Cross-check -Lap v = rho through the independent stiffness path. The
    // last row sees the Dirichlet ghost, so the known boundary value of v is
    // credited back before comparing.
    const auto form = build_stiffness(grid);
    auto Av = apply_stiffness(form, res.v);
    Av[n - 1] -= form.face_coeff[n - 1] * res.boundary_value;
    double num = 0.0, den = 1e-300;
    for (int i = 0; i < n; ++i) {
        num = std::max(num, std::fabs(Av[i] - grid.quad_weights[i] * rho[i]));
        den = std::max(den, std::fabs(grid.quad_weights[i] * rho[i]));
    }
    res.identity_residual = num / den;
    return res;
}

NewtonianResult newtonian_potential(const SolutionProfile& profile,
                                    const Potential& V) {
    const auto grid = grid_of(profile);
    std::vector<double> rho(grid.node_count);
    for (int i = 0; i < grid.node_count; ++i)
        rho[i] = V.positive_part(grid.nodes[i]) * profile.u[i];

    // The formula truncates the integral at R; with the asserted growth
    // bound the dropped mass of rho s ds is below A * sup(u) * R^-alpha / alpha.
    double tail = 0.0;
    if (V.decay_bound()) {
        const auto [A, alpha] = *V.decay_bound();
        double sup_u = 0.0;
        for (double x : profile.u) sup_u = std::max(sup_u, x);
        tail = A * sup_u * std::pow(profile.radius, -alpha) / alpha /
               (grid.dim - 2);
    }
    return newtonian_from_density(grid, rho, 0.0, tail);
}

double flux_energy_gap(const SolutionProfile& profile, const Potential& V,
                       const AbsorptionTerm& f) {
    const auto grid = grid_of(profile);
    const auto form = build_stiffness(grid);
    const double energy = bilinear(form, profile.u, profile.u);

    std::vector<double> rhs(grid.node_count);
    for (int i = 0; i < grid.node_count; ++i)
        rhs[i] = V(grid.nodes[i]) * profile.u[i] * profile.u[i] -
                 f(profile.u[i]) * profile.u[i];
    const double work = profile.lambda * integrate(grid, rhs);
    return std::fabs(energy - work) /
           std::max({std::fabs(energy), std::fabs(work), 1e-300});
}

ComparisonReport newtonian_comparison(const SolutionProfile& profile,
                                      const NewtonianResult& newton) {
    ComparisonReport rep;
    const double r_lo = (2.0 / 3.0) * profile.radius;
    const double r_hi = 0.95 * profile.radius;
    double vmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < profile.r.size(); ++i)
        if (profile.r[i] >= r_lo && profile.r[i] <= r_hi)
            vmin = std::min(vmin, newton.v[i]);
    if (!(vmin > 0.0))
        throw std::domain_error("newtonian_comparison: v not positive on the "
                                "comparison window");

    double sup_u = 0.0;
    for (double x : profile.u) sup_u = std::max(sup_u, x);
    rep.C = 2.0 * profile.lambda * (1.0 + sup_u / vmin);

    rep.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < profile.u.size(); ++i)
        rep.min_margin =
            std::min(rep.min_margin, rep.C * newton.v[i] - profile.u[i]);
    rep.pass = rep.min_margin > 0.0;
    return rep;
}

}  // namespace logistic
