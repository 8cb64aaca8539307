#pragma once

#include <span>
#include <vector>

namespace logistic {

/// Uniform vertex-centered grid for radially symmetric functions on the ball
/// B_R in R^N. Interior nodes sit at r_i = i*h, i = 1..M, with h = R/(M+1);
/// the point r = R is the homogeneous Dirichlet boundary and is not stored.
struct RadialGrid {
    int dim = 0;                       // space dimension N >= 3
    double radius = 0.0;               // ball radius R
    int node_count = 0;                // M interior nodes
    double spacing = 0.0;              // h = R / (M + 1)
    double sphere_area = 0.0;          // omega_N = 2 pi^{N/2} / Gamma(N/2)
    std::vector<double> nodes;         // r_i = i*h
    std::vector<double> quad_weights;  // w_i = omega_N * r_i^{N-1} * h

    double ball_volume() const;        // omega_N R^N / N
};

/// Conservative (flux) discretization of u -> -div(grad u) restricted to
/// radial functions. face_coeff[i] couples nodes i and i+1 across the face
/// at r = (i + 3/2) h; the last face touches the Dirichlet ghost value 0.
/// The face at r = h/2 carries zero flux (reflection closure u_0 := u_1).
struct StiffnessForm {
    int node_count = 0;
    std::vector<double> face_coeff;    // c_i = omega_N * r_{i+1/2}^{N-1} / h, i = 1..M
};

RadialGrid build_grid(int dim, double radius, int node_count);

StiffnessForm build_stiffness(const RadialGrid& grid);

/// Quadrature for integral over B_R: sum_i w_i * values_i.
double integrate(const RadialGrid& grid, std::span<const double> values);

/// Same quadrature truncated to nodes with r_i <= r_max.
double integrate_within(const RadialGrid& grid, std::span<const double> values,
                        double r_max);

/// Action of the weighted discrete Laplacian, W * (-Lap_h u). This is the
/// gradient of u -> a(u,u)/2 for the bilinear form below.
std::vector<double> apply_stiffness(const StiffnessForm& form,
                                    std::span<const double> values);

/// a(u,v) = sum_i c_i (u_{i+1} - u_i)(v_{i+1} - v_i), ghost value 0 at r = R.
double bilinear(const StiffnessForm& form, std::span<const double> u,
                std::span<const double> v);

/// Partial energy: face terms whose inner node satisfies r_i <= r_max.
double energy_within(const StiffnessForm& form, const RadialGrid& grid,
                     std::span<const double> u, double r_max);

}  // namespace logistic
