#include "logistic/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "logistic/radial_grid.hpp"

namespace logistic {

Tridiag stiffness_matrix(const StiffnessForm& form) {
    const int n = form.node_count;
    Tridiag m;
    m.diag.resize(n);
    m.off.assign(n > 0 ? n - 1 : 0, 0.0);
    for (int i = 0; i < n; ++i) {
        m.diag[i] = form.face_coeff[i] + (i > 0 ? form.face_coeff[i - 1] : 0.0);
        if (i + 1 < n) m.off[i] = -form.face_coeff[i];
    }
    return m;
}

std::vector<double> apply(const Tridiag& m, std::span<const double> x) {
    const int n = m.size();
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double v = m.diag[i] * x[i];
        if (i > 0) v += m.off[i - 1] * x[i - 1];
        if (i + 1 < n) v += m.off[i] * x[i + 1];
        y[i] = v;
    }
    return y;
}

CholeskyBidiag cholesky(const Tridiag& m) {
    const int n = m.size();
    CholeskyBidiag L;
    L.d.resize(n);
    L.s.assign(n > 0 ? n - 1 : 0, 0.0);
    L.ok = true;
    for (int i = 0; i < n; ++i) {
        double pivot = m.diag[i];
        if (i > 0) pivot -= L.s[i - 1] * L.s[i - 1];
        if (!(pivot > 0.0)) {
            L.ok = false;
            return L;
        }
        L.d[i] = std::sqrt(pivot);
        if (i + 1 < n) L.s[i] = m.off[i] / L.d[i];
    }
    return L;
}

void solve_lower(const CholeskyBidiag& L, std::span<const double> b,
                 std::vector<double>& x) {
    const int n = static_cast<int>(L.d.size());
    x.resize(n);
    for (int i = 0; i < n; ++i) {
        double v = b[i];
        if (i > 0) v -= L.s[i - 1] * x[i - 1];
        x[i] = v / L.d[i];
    }
}

void solve_upper(const CholeskyBidiag& L, std::span<const double> b,
                 std::vector<double>& x) {
    const int n = static_cast<int>(L.d.size());
    x.resize(n);
    for (int i = n - 1; i >= 0; --i) {
        double v = b[i];
        if (i + 1 < n) v -= L.s[i] * x[i + 1];
        x[i] = v / L.d[i];
    }
}

void solve(const CholeskyBidiag& L, std::span<const double> b,
           std::vector<double>& x) {
    std::vector<double> z;
    solve_lower(L, b, z);
    solve_upper(L, z, x);
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
    if (static_cast<int>(a.size()) != n * n)
        throw std::invalid_argument("jacobi: matrix size mismatch");
    auto at = [&](int i, int j) -> double& { return a[i * n + j]; };

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += at(i, j) * at(i, j);
        return std::sqrt(2.0 * s);
    };
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::fabs(at(i, j)));
    if (scale == 0.0) return std::vector<double>(n, 0.0);

    const double tol = 1e-15 * scale * n;
    for (int sweep = 0; sweep < 64 && off_norm() > tol; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (std::fabs(apq) <= 1e-18 * scale) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }

    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace logistic
