#include "logistic/problem_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "logistic/radial_grid.hpp"

namespace logistic {

namespace {

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> out(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        out[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    return out;
}

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

Potential Potential::rational_decay(double a, double p, double b, double q) {
    Potential V;
    V.eval_ = [a, p, b, q](double r) {
        const double s = 1.0 + r * r;
        return a * std::pow(s, -p) - b * std::pow(s, -q);
    };
    V.family_ = "rational_decay";
    return V;
}

Potential Potential::gaussian_bump(double c) {
    Potential V;
    V.eval_ = [c](double r) { return (c - r * r) * std::exp(-r * r); };
    V.family_ = "gaussian_bump";
    return V;
}

Potential Potential::tabulated(std::vector<std::pair<double, double>> table) {
    if (table.size() < 2)
        throw std::invalid_argument("tabulated potential needs >= 2 samples");
    std::sort(table.begin(), table.end());
    Potential V;
    V.eval_ = [t = std::move(table)](double r) {
        if (r <= t.front().first) return t.front().second;
        if (r >= t.back().first) return t.back().second;
        auto it = std::lower_bound(
            t.begin(), t.end(), r,
            [](const auto& row, double x) { return row.first < x; });
        const auto& [r1, v1] = *it;
        const auto& [r0, v0] = *(it - 1);
        const double w = (r - r0) / (r1 - r0);
        return v0 + w * (v1 - v0);
    };
    V.family_ = "tabulated";
    return V;
}

Potential Potential::from_function(std::function<double(double)> f,
                                   std::string family) {
    Potential V;
    V.eval_ = std::move(f);
    V.family_ = std::move(family);
    return V;
}

double Potential::positive_part(double r) const {
    return std::max(eval_(r), 0.0);
}

double Potential::negative_part(double r) const {
    return std::max(-eval_(r), 0.0);
}

double Potential::sup_norm(double r_max) const {
    if (sup_norm_) return *sup_norm_;
    const int n = 1 << 14;
    double m = 0.0;
    for (int i = 1; i <= n; ++i)
        m = std::max(m, std::fabs(eval_(r_max * i / n)));
    return m;
}

std::vector<double> Potential::sample(const RadialGrid& grid) const {
    std::vector<double> out(grid.node_count);
    for (int i = 0; i < grid.node_count; ++i) out[i] = eval_(grid.nodes[i]);
    return out;
}

AbsorptionTerm AbsorptionTerm::power(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("power absorption needs p > 1");
    AbsorptionTerm f;
    f.f_ = [p](double u) { return std::pow(u, p); };
    f.fprime_ = [p](double u) { return p * std::pow(u, p - 1.0); };
    f.limit_ = std::numeric_limits<double>::infinity();
    f.family_ = "power";
    return f;
}

AbsorptionTerm AbsorptionTerm::from_functions(
    std::function<double(double)> f, std::function<double(double)> fprime,
    std::string family) {
    AbsorptionTerm a;
    a.f_ = std::move(f);
    a.fprime_ = std::move(fprime);
    a.family_ = std::move(family);
    return a;
}

double AbsorptionTerm::derivative_sup(double hi) const {
    const int n = 1 << 12;
    double m = std::max(fprime_(0.0), fprime_(hi));
    for (int i = 1; i < n; ++i) m = std::max(m, fprime_(hi * i / n));
    return m;
}

bool ValidationReport::all_pass() const {
    return std::none_of(checks.begin(), checks.end(), [](const auto& c) {
        return c.status == CheckStatus::Fail;
    });
}

const HypothesisCheck* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

ValidationReport validate_potential(const Potential& V, double r_max,
                                    int check_points) {
    if (!(r_max > 0.0) || check_points < 8)
        throw std::invalid_argument("validate_potential: bad check grid");
    ValidationReport rep;
    rep.check_grid = log_spaced(1e-3 * std::min(1.0, r_max), r_max, check_points);

    // Sign split identity: V^+ - V^- = V and V^+ V^- = 0 at samples.
    bool split_ok = true;
    for (double r : rep.check_grid) {
        const double v = V(r), vp = V.positive_part(r), vm = V.negative_part(r);
        if (std::fabs(vp - vm - v) > 1e-14 * (1.0 + std::fabs(v)) ||
            vp * vm != 0.0) {
            split_ok = false;
            break;
        }
    }
    rep.checks.push_back({"split_identity",
                          split_ok ? CheckStatus::Pass : CheckStatus::Fail,
                          "V = V+ - V- and V+ V- = 0 at sampled radii"});

    double max_vplus = 0.0;
    for (double r : rep.check_grid) max_vplus = std::max(max_vplus, V.positive_part(r));
    rep.checks.push_back(
        {"positive_part_nontrivial",
         max_vplus > 0.0 ? CheckStatus::Pass : CheckStatus::Fail,
         max_vplus > 0.0 ? "max V+ on check grid = " + std::to_string(max_vplus)
                         : "V+ vanishes on the whole check grid"});

    rep.sup_norm_estimate = V.sup_norm(r_max);
    rep.checks.push_back({"bounded",
                          std::isfinite(rep.sup_norm_estimate)
                              ? CheckStatus::Pass
                              : CheckStatus::Fail,
                          "||V||_inf estimate = " +
                              std::to_string(rep.sup_norm_estimate)});

    if (V.decay_bound()) {
        const auto [A, alpha] = *V.decay_bound();
        double worst = 0.0;
        for (double r : rep.check_grid)
            worst = std::max(worst,
                             V.positive_part(r) * std::pow(r, 2.0 + alpha));
        rep.decay_margin = worst;
        const bool ok = worst <= A * (1.0 + 1e-12);
        rep.checks.push_back(
            {"decay_bound", ok ? CheckStatus::Pass : CheckStatus::Fail,
             "max V+(r) r^{2+alpha} = " + std::to_string(worst) +
                 (ok ? " <= A = " : " > A = ") + std::to_string(A)});
    } else {
        rep.checks.push_back({"decay_bound", CheckStatus::NotCheckable,
                              "no (A, alpha) bound supplied"});
    }

    // Near-origin regularity: a bounded V satisfies the vanishing-at-zero
    // weight condition automatically; sample below the check grid to flag
    // singular potentials.
    bool bounded_near_zero = true;
    for (double r : log_spaced(1e-8, 1e-3, 21))
        if (!std::isfinite(V(r)) ||
            std::fabs(V(r)) > 1e6 * (1.0 + rep.sup_norm_estimate)) {
            bounded_near_zero = false;
            break;
        }
    rep.checks.push_back(
        {"origin_weight_limit",
         bounded_near_zero ? CheckStatus::Pass : CheckStatus::Fail,
         bounded_near_zero ? "V bounded near 0; |x|^{2(N-1)/N} V2 -> 0 holds"
                           : "V unbounded near the origin"});

    // Membership of a split component in L^{N/2} is an integrability
    // statement over all of R^N; sampling cannot decide it.
    rep.checks.push_back({"split_LN2_membership", CheckStatus::NotCheckable,
                          "V1 in L^{N/2} is not verifiable by sampling"});
    return rep;
}

ValidationReport validate_absorption(const AbsorptionTerm& f,
                                     double sup_norm_V) {
    ValidationReport rep;

    const double f0 = f(0.0), fp0 = f.derivative(0.0);
    const bool zero_ok = std::fabs(f0) <= 1e-14 && std::fabs(fp0) <= 1e-14;
    rep.checks.push_back({"f1_zero",
                          zero_ok ? CheckStatus::Pass : CheckStatus::Fail,
                          "f(0) = " + std::to_string(f0) +
                              ", f'(0) = " + std::to_string(fp0)});

    // liminf_{u->0} f'(u)/u > 0, sampled: positivity plus a log-log trend
    // guard (a clearly positive slope of f'(u)/u means the ratio drains to 0).
    {
        auto grid = log_spaced(1e-8, 1e-2, 25);
        rep.check_grid = grid;
        std::vector<double> lx, ly;
        double wit = std::numeric_limits<double>::infinity();
        bool positive = true;
        for (double u : grid) {
            const double ratio = f.derivative(u) / u;
            if (!(ratio > 0.0)) {
                positive = false;
                break;
            }
            wit = std::min(wit, ratio);
            lx.push_back(std::log(u));
            ly.push_back(std::log(ratio));
        }
        bool ok = positive;
        double trend = 0.0;
        if (positive) {
            trend = ls_slope(lx, ly);
            ok = trend < 0.05;  // ratio must not decay toward 0
            rep.witnessed_a = wit;
        }
        rep.checks.push_back(
            {"f1_liminf", ok ? CheckStatus::Pass : CheckStatus::Fail,
             positive ? "witnessed f'(u)/u >= " + std::to_string(wit) +
                            ", log-log trend " + std::to_string(trend)
                      : "f'(u)/u not positive on the small-u grid"});
    }

    // (f2): f(u)/u strictly increasing on a wide log-spaced grid.
    {
        auto grid = log_spaced(1e-6, 1e4, 81);
        bool inc = true;
        double prev = f(grid[0]) / grid[0];
        for (std::size_t i = 1; i < grid.size(); ++i) {
            const double cur = f(grid[i]) / grid[i];
            if (!(cur > prev * (1.0 + 1e-14) + 1e-300)) {
                inc = false;
                break;
            }
            prev = cur;
        }
        rep.checks.push_back({"f2_monotone_quotient",
                              inc ? CheckStatus::Pass : CheckStatus::Fail,
                              inc ? "f(u)/u strictly increasing on check grid"
                                  : "f(u)/u fails strict increase"});
    }

    // (f3): eventual f(M)/M > ||V||_inf, witnessed by a doubling search.
    {
        bool found = false;
        double M = 1.0;
        for (int k = 0; k < 64; ++k, M *= 2.0) {
            if (f(M) / M > sup_norm_V) {
                found = true;
                break;
            }
        }
        if (found) rep.witnessed_M = M;
        rep.checks.push_back(
            {"f3_superlinear", found ? CheckStatus::Pass : CheckStatus::Fail,
             found ? "f(M)/M > ||V||_inf at M = " + std::to_string(M)
                   : "no M <= 2^64 with f(M)/M > ||V||_inf"});
    }
    return rep;
}

double supersolution_bound(const AbsorptionTerm& f, double sup_norm_V) {
    double M = 1.0;
    for (int k = 0; k < 64; ++k, M *= 2.0)
        if (f(M) / M > sup_norm_V) return M;
    throw std::domain_error(
        "supersolution bound search exhausted: f(u)/u stays <= ||V||_inf "
        "(superlinearity hypothesis violated)");
}

}  // namespace logistic
