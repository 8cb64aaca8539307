#include "logistic/radial_grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace logistic {

namespace {

double surface_area(int dim) {
    // omega_N = 2 pi^{N/2} / Gamma(N/2)
    return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) /
           std::tgamma(0.5 * dim);
}

void require_length(std::size_t got, std::size_t want) {
    if (got != want)
        throw std::invalid_argument("value vector length " +
                                    std::to_string(got) + " != node count " +
                                    std::to_string(want));
}

}  // namespace

double RadialGrid::ball_volume() const {
    return sphere_area * std::pow(radius, dim) / dim;
}

RadialGrid build_grid(int dim, double radius, int node_count) {
    if (dim < 3) throw std::invalid_argument("dimension must be >= 3");
    if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
    if (node_count < 2)
        throw std::invalid_argument("node_count must be >= 2");

    RadialGrid g;
    g.dim = dim;
    g.radius = radius;
    g.node_count = node_count;
    g.spacing = radius / (node_count + 1);
    g.sphere_area = surface_area(dim);
    g.nodes.resize(node_count);
    g.quad_weights.resize(node_count);
    for (int i = 0; i < node_count; ++i) {
        const double r = (i + 1) * g.spacing;
        g.nodes[i] = r;
        g.quad_weights[i] = g.sphere_area * std::pow(r, dim - 1) * g.spacing;
    }
    return g;
}

StiffnessForm build_stiffness(const RadialGrid& grid) {
    StiffnessForm form;
    form.node_count = grid.node_count;
    form.face_coeff.resize(grid.node_count);
    const double h = grid.spacing;
    for (int i = 0; i < grid.node_count; ++i) {
        const double r_face = (i + 1.5) * h;  // between nodes i and i+1
        form.face_coeff[i] =
            grid.sphere_area * std::pow(r_face, grid.dim - 1) / h;
    }
    return form;
}

double integrate(const RadialGrid& grid, std::span<const double> values) {
    require_length(values.size(), grid.quad_weights.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        sum += grid.quad_weights[i] * values[i];
    return sum;
}

double integrate_within(const RadialGrid& grid, std::span<const double> values,
                        double r_max) {
    require_length(values.size(), grid.quad_weights.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (grid.nodes[i] > r_max) break;
        sum += grid.quad_weights[i] * values[i];
    }
    return sum;
}

std::vector<double> apply_stiffness(const StiffnessForm& form,
                                    std::span<const double> values) {
    const int n = form.node_count;
    require_length(values.size(), static_cast<std::size_t>(n));
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double right = (i + 1 < n) ? values[i + 1] : 0.0;
        double v = form.face_coeff[i] * (values[i] - right);
        if (i > 0) v += form.face_coeff[i - 1] * (values[i] - values[i - 1]);
        out[i] = v;
    }
    return out;
}

double bilinear(const StiffnessForm& form, std::span<const double> u,
                std::span<const double> v) {
    const int n = form.node_count;
    require_length(u.size(), static_cast<std::size_t>(n));
    require_length(v.size(), static_cast<std::size_t>(n));
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double du = ((i + 1 < n) ? u[i + 1] : 0.0) - u[i];
        const double dv = ((i + 1 < n) ? v[i + 1] : 0.0) - v[i];
        sum += form.face_coeff[i] * du * dv;
    }
    return sum;
}

double energy_within(const StiffnessForm& form, const RadialGrid& grid,
                     std::span<const double> u, double r_max) {
    const int n = form.node_count;
    require_length(u.size(), static_cast<std::size_t>(n));
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        if (grid.nodes[i] > r_max) break;
        const double du = ((i + 1 < n) ? u[i + 1] : 0.0) - u[i];
        sum += form.face_coeff[i] * du * du;
    }
    return sum;
}

}  // namespace logistic
