#pragma once

#include <span>
#include <vector>

namespace logistic {

struct RadialGrid;
struct StiffnessForm;

/// Symmetric tridiagonal matrix: diag[i] on the diagonal, off[i] coupling
/// rows i and i+1.
struct Tridiag {
    std::vector<double> diag;
    std::vector<double> off;

    int size() const { return static_cast<int>(diag.size()); }
};

/// Assemble the stiffness form as an explicit tridiagonal matrix A with
/// A u = W(-Lap_h u).
Tridiag stiffness_matrix(const StiffnessForm& form);

std::vector<double> apply(const Tridiag& m, std::span<const double> x);

/// Cholesky factor of an SPD tridiagonal matrix, A = L L^T with L lower
/// bidiagonal (diag d, subdiagonal s). ok == false when a pivot fails,
/// in which case the factor must not be used.
struct CholeskyBidiag {
    std::vector<double> d;
    std::vector<double> s;
    bool ok = false;
};

CholeskyBidiag cholesky(const Tridiag& m);

void solve_lower(const CholeskyBidiag& L, std::span<const double> b,
                 std::vector<double>& x);
void solve_upper(const CholeskyBidiag& L, std::span<const double> b,
                 std::vector<double>& x);
/// Solve A x = b with A = L L^T.
void solve(const CholeskyBidiag& L, std::span<const double> b,
           std::vector<double>& x);

/// Eigenvalues of a dense symmetric matrix (row-major n*n) by cyclic Jacobi
/// rotations, returned ascending. Intended for small oracle problems.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n);

}  // namespace logistic
