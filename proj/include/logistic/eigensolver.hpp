#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace logistic {

struct RadialGrid;
class Potential;

/// Raised when the weight form has no positive direction on the grid
/// (V <= 0 at every node): the constrained minimum does not exist.
struct NoPositiveEigenvalue : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when an iterative solver hits max_iter; carries the best iterate.
struct NonConverged : std::runtime_error {
    double best_value;
    int iterations;
    double residual;
    NonConverged(const std::string& what, double value, int iters, double res)
        : std::runtime_error(what), best_value(value), iterations(iters),
          residual(res) {}
};

/// Principal pair of -Lap u = lambda V u on B_R, Dirichlet at R.
struct WeightedEigenResult {
    double lambda1 = 0.0;
    std::vector<double> phi1;      // nonnegative, b(phi,phi) = 1
    double normalization = 0.0;    // recomputed integral V phi^2
    int iterations = 0;
    double residual = 0.0;         // ||A phi - lambda B phi|| / ||A phi||
};

/// Least pair of (-Lap - lambda V) e = mu e on B_R, Dirichlet at R.
struct ShiftedEigenResult {
    double mu1 = 0.0;
    std::vector<double> e1;        // nonnegative, sup-norm 1
    int iterations = 0;
    double residual = 0.0;
};

/// lambda_1(R) as the reciprocal top eigenvalue of the Cholesky-congruent
/// weight form, by shifted power iteration. max_iter = 0 selects 50*M.
WeightedEigenResult principal_weighted(const RadialGrid& grid,
                                       const Potential& V, double tol = 1e-10,
                                       int max_iter = 0);

/// Least eigenvalue of the pencil (A - lambda B, W) by inverse iteration
/// with a Gershgorin shift below the spectrum.
ShiftedEigenResult principal_shifted(const RadialGrid& grid,
                                     const Potential& V, double lambda,
                                     double tol = 1e-10, int max_iter = 0);

/// Full spectra by dense Jacobi diagonalization; test oracle, guarded to
/// M <= 512.
struct WeightedSpectrum {
    std::vector<double> mu;       // eigenvalues of L^{-1} B L^{-T}, descending
    std::vector<double> lambda;   // positive pencil eigenvalues 1/mu, ascending
};

WeightedSpectrum dense_weighted_spectrum(const RadialGrid& grid,
                                         const Potential& V);

/// Ascending eigenvalues of (A - lambda B, W).
std::vector<double> dense_shifted_spectrum(const RadialGrid& grid,
                                           const Potential& V, double lambda);

}  // namespace logistic
