#include "logistic/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "logistic/problem_data.hpp"
#include "logistic/radial_grid.hpp"
#include "logistic/tridiag.hpp"

namespace logistic {

namespace {

constexpr int kDenseGuard = 512;

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void normalize(std::vector<double>& v) {
    const double n = norm2(v);
    for (double& x : v) x /= n;
}

// Deterministic start vector; solvers must be pure functions of their inputs.
std::vector<double> start_vector(int n) {
    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = uni(rng);
    normalize(v);
    return v;
}

void flip_to_positive(std::vector<double>& v) {
    double best = 0.0;
    for (double x : v)
        if (std::fabs(x) > std::fabs(best)) best = x;
    if (best < 0.0)
        for (double& x : v) x = -x;
}

std::vector<double> weight_diagonal(const RadialGrid& grid,
                                    const Potential& V) {
    std::vector<double> b(grid.node_count);
    for (int i = 0; i < grid.node_count; ++i)
        b[i] = grid.quad_weights[i] * V(grid.nodes[i]);
    return b;
}

// y -> L^{-1} B L^{-T} y for the Cholesky factor of the stiffness matrix.
struct CongruentWeight {
    const CholeskyBidiag& L;
    const std::vector<double>& b;
    mutable std::vector<double> t1, t2;

    void apply(const std::vector<double>& y, std::vector<double>& out) const {
        solve_upper(L, y, t1);
        for (std::size_t i = 0; i < t1.size(); ++i) t1[i] *= b[i];
        solve_lower(L, t1, t2);
        out = t2;
    }
};

}  // namespace

WeightedEigenResult principal_weighted(const RadialGrid& grid,
                                       const Potential& V, double tol,
                                       int max_iter) {
    const int n = grid.node_count;
    if (max_iter <= 0) max_iter = 50 * n;

    const auto b = weight_diagonal(grid, V);
    if (*std::max_element(b.begin(), b.end()) <= 0.0)
        throw NoPositiveEigenvalue(
            "weight V is nonpositive at every grid node: the constraint set "
            "has no positive direction");

    const auto A = stiffness_matrix(build_stiffness(grid));
    const auto L = cholesky(A);
    if (!L.ok)
        throw std::runtime_error("stiffness form not SPD (internal error)");
    CongruentWeight C{L, b, {}, {}};

    auto y = start_vector(n);
    std::vector<double> cy;
    int used = 0;

    // Locate the dominant side of the spectrum first; if it is negative,
    // a positivity shift redirects the iteration to the top eigenvalue.
    double theta = 0.0;
    const int probe = std::min(64, max_iter / 4 + 1);
    for (int k = 0; k < probe; ++k, ++used) {
        C.apply(y, cy);
        theta = dot(y, cy);
        const double nc = norm2(cy);
        if (nc == 0.0) break;
        for (int i = 0; i < n; ++i) y[i] = cy[i] / nc;
    }
    const double shift = theta < 0.0 ? 1.5 * std::fabs(theta) : 0.0;

    double mu = theta - shift;
    double prev = std::numeric_limits<double>::infinity();
    double resid_c = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (; used < max_iter; ++used) {
        C.apply(y, cy);
        if (shift != 0.0)
            for (int i = 0; i < n; ++i) cy[i] += shift * y[i];
        const double th = dot(y, cy);  // ||y|| = 1
        double rr = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = cy[i] - th * y[i];
            rr += d * d;
        }
        resid_c = std::sqrt(rr);
        mu = th - shift;
        const double dtheta = std::fabs(th - prev);
        prev = th;
        const double nc = norm2(cy);
        if (nc == 0.0) break;
        for (int i = 0; i < n; ++i) y[i] = cy[i] / nc;
        if (mu > 0.0 && dtheta <= tol * std::fabs(th) && resid_c <= tol * mu) {
            converged = true;
            ++used;
            break;
        }
    }
    if (!converged)
        throw NonConverged("principal_weighted: power iteration hit max_iter",
                           mu > 0.0 ? 1.0 / mu : 0.0, used, resid_c);
    if (mu <= 0.0)
        throw NoPositiveEigenvalue(
            "top eigenvalue of the transformed weight form is not positive");

    WeightedEigenResult res;
    res.lambda1 = 1.0 / mu;
    res.iterations = used;

    solve_upper(L, y, res.phi1);
    flip_to_positive(res.phi1);
    double bnorm = 0.0;
    for (int i = 0; i < n; ++i) bnorm += b[i] * res.phi1[i] * res.phi1[i];
    const double scale = 1.0 / std::sqrt(bnorm);
    for (double& x : res.phi1) x *= scale;

    res.normalization = 0.0;
    for (int i = 0; i < n; ++i)
        res.normalization += b[i] * res.phi1[i] * res.phi1[i];

    const auto Aphi = apply(A, res.phi1);
    double rnum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = Aphi[i] - res.lambda1 * b[i] * res.phi1[i];
        rnum += d * d;
    }
    res.residual = std::sqrt(rnum) / norm2(Aphi);
    return res;
}

ShiftedEigenResult principal_shifted(const RadialGrid& grid,
                                     const Potential& V, double lambda,
                                     double tol, int max_iter) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("principal_shifted requires lambda > 0");
    const int n = grid.node_count;
    if (max_iter <= 0) max_iter = 50 * n;

    const auto A = stiffness_matrix(build_stiffness(grid));
    const auto b = weight_diagonal(grid, V);
    const auto& w = grid.quad_weights;

    // S = W^{-1/2} (A - lambda B) W^{-1/2}, symmetric tridiagonal.
    Tridiag S;
    S.diag.resize(n);
    S.off.resize(n - 1);
    for (int i = 0; i < n; ++i) {
        S.diag[i] = (A.diag[i] - lambda * b[i]) / w[i];
        if (i + 1 < n) S.off[i] = A.off[i] / std::sqrt(w[i] * w[i + 1]);
    }

    double smax = 0.0, g0 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double lo = (i > 0 ? std::fabs(S.off[i - 1]) : 0.0);
        const double hi = (i + 1 < n ? std::fabs(S.off[i]) : 0.0);
        g0 = std::min(g0, S.diag[i] - lo - hi);
        smax = std::max(smax, std::fabs(S.diag[i]) + lo + hi);
    }

    double margin = 1e-8 * smax;
    CholeskyBidiag F;
    Tridiag shifted = S;
    double sigma = 0.0;
    for (int attempt = 0; attempt < 60; ++attempt) {
        sigma = g0 - margin;
        for (int i = 0; i < n; ++i) shifted.diag[i] = S.diag[i] - sigma;
        F = cholesky(shifted);
        if (F.ok) break;
        margin *= 4.0;  // retry further below the spectrum
    }
    if (!F.ok)
        throw std::runtime_error(
            "principal_shifted: no factorizable shift below the spectrum");

    auto z = start_vector(n);
    std::vector<double> t;
    double theta = 0.0, prev = std::numeric_limits<double>::infinity();
    double resid = std::numeric_limits<double>::infinity();
    int used = 0;
    bool converged = false;
    const double resid_floor = 1e3 * 1e-16 * smax;
    for (; used < max_iter; ++used) {
        solve(F, z, t);
        normalize(t);
        z = t;
        const auto Sz = apply(S, z);
        theta = dot(z, Sz);
        double rr = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = Sz[i] - theta * z[i];
            rr += d * d;
        }
        resid = std::sqrt(rr);
        const double dtheta = std::fabs(theta - prev);
        prev = theta;
        if (dtheta <= tol * std::max(std::fabs(theta), 1.0) &&
            resid <= std::max(tol * std::fabs(theta), resid_floor)) {
            converged = true;
            ++used;
            break;
        }
    }
    if (!converged)
        throw NonConverged("principal_shifted: inverse iteration hit max_iter",
                           theta, used, resid);

    ShiftedEigenResult res;
    res.mu1 = theta;
    res.iterations = used;
    res.e1.resize(n);
    for (int i = 0; i < n; ++i) res.e1[i] = z[i] / std::sqrt(w[i]);
    flip_to_positive(res.e1);
    double emax = 0.0;
    for (double x : res.e1) emax = std::max(emax, std::fabs(x));
    for (double& x : res.e1) x /= emax;

    std::vector<double> lhs = apply(A, res.e1);
    double scale = 0.0, rnum = 0.0;
    for (int i = 0; i < n; ++i) {
        lhs[i] -= lambda * b[i] * res.e1[i];
        scale += lhs[i] * lhs[i];
    }
    for (int i = 0; i < n; ++i) {
        const double d = lhs[i] - res.mu1 * w[i] * res.e1[i];
        rnum += d * d;
    }
    res.residual = std::sqrt(rnum) /
                   (std::sqrt(scale) + std::fabs(res.mu1) + 1e-300);
    return res;
}

WeightedSpectrum dense_weighted_spectrum(const RadialGrid& grid,
                                         const Potential& V) {
    const int n = grid.node_count;
    if (n > kDenseGuard)
        throw std::invalid_argument(
            "dense oracle guarded to node_count <= 512");

    const auto A = stiffness_matrix(build_stiffness(grid));
    const auto L = cholesky(A);
    if (!L.ok) throw std::runtime_error("stiffness form not SPD");
    const auto b = weight_diagonal(grid, V);

    // Columns of L^{-1}, then C = L^{-1} B L^{-T} densely.
    std::vector<double> Finv(n * n, 0.0);
    std::vector<double> e(n, 0.0), col;
    for (int j = 0; j < n; ++j) {
        e.assign(n, 0.0);
        e[j] = 1.0;
        solve_lower(L, e, col);
        for (int i = 0; i < n; ++i) Finv[i * n + j] = col[i];
    }
    std::vector<double> C(n * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k <= std::min(i, j); ++k)
                s += Finv[i * n + k] * b[k] * Finv[j * n + k];
            C[i * n + j] = s;
            C[j * n + i] = s;
        }

    WeightedSpectrum out;
    out.mu = jacobi_eigenvalues(std::move(C), n);
    std::sort(out.mu.begin(), out.mu.end(), std::greater<>());
    for (double m : out.mu)
        if (m > 0.0) out.lambda.push_back(1.0 / m);
    std::sort(out.lambda.begin(), out.lambda.end());
    return out;
}

std::vector<double> dense_shifted_spectrum(const RadialGrid& grid,
                                           const Potential& V, double lambda) {
    const int n = grid.node_count;
    if (n > kDenseGuard)
        throw std::invalid_argument(
            "dense oracle guarded to node_count <= 512");

    const auto A = stiffness_matrix(build_stiffness(grid));
    const auto b = weight_diagonal(grid, V);
    const auto& w = grid.quad_weights;
    std::vector<double> S(n * n, 0.0);
    for (int i = 0; i < n; ++i) {
        S[i * n + i] = (A.diag[i] - lambda * b[i]) / w[i];
        if (i + 1 < n) {
            const double off = A.off[i] / std::sqrt(w[i] * w[i + 1]);
            S[i * n + i + 1] = off;
            S[(i + 1) * n + i] = off;
        }
    }
    return jacobi_eigenvalues(std::move(S), n);
}

}  // namespace logistic
