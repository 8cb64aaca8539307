#pragma once

#include <string>
#include <vector>

namespace logistic {

class Potential;

struct CurveEntry {
    double R = 0.0;
    double lambda1 = 0.0;
    double residual = 0.0;
};

struct LambdaCurve {
    std::vector<CurveEntry> entries;  // increasing R, decreasing lambda1
    int nodes_per_unit = 0;
};

struct LambdaEstimate {
    double value = 0.0;   // Lambda_hat, clamped at 0
    double low = 0.0;     // max(0, value - fit_err)
    double high = 0.0;    // last lambda1(R): the curve is an upper bound
    std::string model = "lambda1(R) = Lambda + c*R^-beta";
    bool fit_ok = false;  // false means the fallback bracket [0, last] was used
    double beta = 0.0;
    double coeff = 0.0;
    double fit_rms = 0.0;
    double jackknife_delta = 0.0;  // |Lambda_hat| shift when the earliest tail
                                   // point is dropped
    int tail_points = 0;
};

/// One principal_weighted solve per schedule radius at fixed resolution per
/// unit radius (so the grids nest and the discrete curve is monotone).
/// Throws std::invalid_argument on a non-increasing schedule and
/// std::runtime_error when monotonicity fails beyond solver tolerance.
LambdaCurve lambda_curve(const Potential& V,
                         const std::vector<double>& R_schedule, int dim,
                         int nodes_per_unit, double tol = 1e-10);

/// Tail fit of lambda1(R) = Lambda + c R^-beta; beta from log-space least
/// squares on successive differences, then (Lambda, c) by linear least
/// squares. Requires >= 4 entries and a decreasing curve.
LambdaEstimate estimate_big_lambda(const LambdaCurve& curve);

}  // namespace logistic
