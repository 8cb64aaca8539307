#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace testutil {

inline double bisect(const std::function<double(double)>& g, double lo,
                     double hi) {
    double flo = g(lo), fhi = g(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw std::runtime_error("bisect: no sign change");
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double fm = g(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

// k-th zero of the radial Dirichlet mode on the unit ball: for N = 3 the
// radial part is sin(x)/x (zeros k pi); for N = 5 it is proportional to
// sin(x)/x^2 - cos(x)/x (zeros of tan x = x). Eigenvalues are the squares.
inline double radial_bessel_zero(int dim, int k) {
    const double pi = std::numbers::pi;
    if (dim == 3) return k * pi;
    if (dim == 5) {
        const auto g = [](double x) { return std::sin(x) - x * std::cos(x); };
        return bisect(g, k * pi + 1e-9, (k + 1) * pi - 1e-9);
    }
    throw std::runtime_error("radial_bessel_zero: only N = 3 and N = 5");
}

inline double dirichlet_eigenvalue(int dim, double R, int k) {
    const double z = radial_bessel_zero(dim, k);
    return z * z / (R * R);
}

}  // namespace testutil
