#include "logistic/lambda_estimator.hpp"

#include <cmath>
#include <stdexcept>

#include "logistic/eigensolver.hpp"
#include "logistic/problem_data.hpp"
#include "logistic/radial_grid.hpp"

namespace logistic {

namespace {

int node_count_for(double R, int nodes_per_unit) {
    const int m = static_cast<int>(std::lround(R * nodes_per_unit)) - 1;
    if (m < 2)
        throw std::invalid_argument(
            "nodes_per_unit too small for schedule radius");
    return m;
}

struct PowerFit {
    double Lambda = 0.0;
    double c = 0.0;
    double beta = 0.0;
    double rms = 0.0;
    bool ok = false;
};

// lambda1(R) = Lambda + c R^-beta on the tail entries: beta from the
// log-space slope of successive differences, then (Lambda, c) linearly.
PowerFit fit_tail(const std::vector<CurveEntry>& tail) {
    PowerFit fit;
    const std::size_t m = tail.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t nd = 0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double d = tail[i].lambda1 - tail[i + 1].lambda1;
        if (!(d > 0.0)) return fit;
        const double x = std::log(tail[i].R), y = std::log(d);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++nd;
    }
    const double denom = nd * sxx - sx * sx;
    if (denom == 0.0) return fit;
    fit.beta = -(nd * sxy - sx * sy) / denom;
    if (!(fit.beta > 0.0)) return fit;

    // Normal equations for y = Lambda + c * t with t = R^-beta.
    double st = 0, stt = 0, syv = 0, sty = 0;
    for (const auto& e : tail) {
        const double t = std::pow(e.R, -fit.beta);
        st += t;
        stt += t * t;
        syv += e.lambda1;
        sty += t * e.lambda1;
    }
    const double n = static_cast<double>(m);
    const double det = n * stt - st * st;
    if (det == 0.0) return fit;
    fit.c = (n * sty - st * syv) / det;
    fit.Lambda = (syv * stt - st * sty) / det;

    double ss = 0.0;
    for (const auto& e : tail) {
        const double r = e.lambda1 - fit.Lambda - fit.c * std::pow(e.R, -fit.beta);
        ss += r * r;
    }
    fit.rms = std::sqrt(ss / n);
    fit.ok = true;
    return fit;
}

}  // namespace

LambdaCurve lambda_curve(const Potential& V,
                         const std::vector<double>& R_schedule, int dim,
                         int nodes_per_unit, double tol) {
    if (R_schedule.empty())
        throw std::invalid_argument("empty R schedule");
    for (std::size_t i = 1; i < R_schedule.size(); ++i)
        if (!(R_schedule[i] > R_schedule[i - 1]))
            throw std::invalid_argument("R schedule must be strictly increasing");

    LambdaCurve curve;
    curve.nodes_per_unit = nodes_per_unit;
    for (double R : R_schedule) {
        const auto grid = build_grid(dim, R, node_count_for(R, nodes_per_unit));
        const auto eig = principal_weighted(grid, V, tol);
        if (!curve.entries.empty()) {
            const double prev = curve.entries.back().lambda1;
            // Nested grids make the discrete curve monotone; a violation
            // beyond solver tolerance means the resolution is too coarse.
            if (!(eig.lambda1 < prev + 100.0 * tol * prev))
                throw std::runtime_error(
                    "lambda1 curve not decreasing at R = " + std::to_string(R) +
                    "; raise nodes_per_unit");
        }
        curve.entries.push_back({R, eig.lambda1, eig.residual});
    }
    return curve;
}

LambdaEstimate estimate_big_lambda(const LambdaCurve& curve) {
    const auto& e = curve.entries;
    if (e.size() < 4)
        throw std::invalid_argument("estimate_big_lambda needs >= 4 entries");
    for (std::size_t i = 1; i < e.size(); ++i)
        if (!(e[i].lambda1 < e[i - 1].lambda1))
            throw std::invalid_argument(
                "estimate_big_lambda refuses a non-decreasing curve");

    LambdaEstimate est;
    est.high = e.back().lambda1;

    const std::size_t tail_n = std::max<std::size_t>(3, e.size() / 2);
    std::vector<CurveEntry> tail(e.end() - tail_n, e.end());
    const auto fit = fit_tail(tail);
    if (!fit.ok) {
        est.value = e.back().lambda1;
        est.low = 0.0;
        est.fit_ok = false;
        return est;
    }

    est.fit_ok = true;
    est.beta = fit.beta;
    est.coeff = fit.c;
    est.fit_rms = fit.rms;
    est.value = std::min(std::max(fit.Lambda, 0.0), est.high);
    est.tail_points = static_cast<int>(tail_n);

    // Sensitivity: refit without the earliest tail point.
    if (tail.size() > 3) {
        std::vector<CurveEntry> tail2(tail.begin() + 1, tail.end());
        const auto fit2 = fit_tail(tail2);
        if (fit2.ok)
            est.jackknife_delta = std::fabs(std::max(fit2.Lambda, 0.0) - est.value);
    }
    const double fit_err = std::max(fit.rms, est.jackknife_delta);
    est.low = std::max(0.0, est.value - fit_err);
    return est;
}

}  // namespace logistic
