#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace logistic {

struct RadialGrid;

/// Asserted growth bound V^+(r) <= A * r^{-2-alpha}.
struct DecayBound {
    double A = 0.0;
    double alpha = 0.0;
};

/// Radial, possibly sign-changing potential (the birth-rate weight).
class Potential {
  public:
    Potential() = default;

    static Potential rational_decay(double a, double p, double b, double q);
    static Potential gaussian_bump(double c);
    /// Piecewise-linear interpolant of (r, V) samples; constant beyond the
    /// last sample.
    static Potential tabulated(std::vector<std::pair<double, double>> table);
    static Potential from_function(std::function<double(double)> f,
                                   std::string family = "custom");

    double operator()(double r) const { return eval_(r); }
    double positive_part(double r) const;
    double negative_part(double r) const;

    /// Supplied L^inf norm, or a dense-sampling estimate over (0, r_max].
    double sup_norm(double r_max) const;
    void set_sup_norm(double v) { sup_norm_ = v; }
    void set_decay_bound(DecayBound b) { decay_ = b; }
    const std::optional<DecayBound>& decay_bound() const { return decay_; }
    const std::string& family() const { return family_; }

    std::vector<double> sample(const RadialGrid& grid) const;

  private:
    std::function<double(double)> eval_;
    std::optional<double> sup_norm_;
    std::optional<DecayBound> decay_;
    std::string family_ = "unset";
};

/// Self-limiting absorption term f with its derivative.
class AbsorptionTerm {
  public:
    AbsorptionTerm() = default;

    static AbsorptionTerm power(double p);
    static AbsorptionTerm from_functions(std::function<double(double)> f,
                                         std::function<double(double)> fprime,
                                         std::string family = "custom");

    double operator()(double u) const { return f_(u); }
    double derivative(double u) const { return fprime_(u); }
    /// sup of f' over [0, hi] by dense sampling (used for the monotonization
    /// constant).
    double derivative_sup(double hi) const;
    const std::string& family() const { return family_; }
    const std::optional<double>& superlinear_limit() const { return limit_; }
    void set_superlinear_limit(double v) { limit_ = v; }

  private:
    std::function<double(double)> f_;
    std::function<double(double)> fprime_;
    std::optional<double> limit_;
    std::string family_ = "unset";
};

enum class CheckStatus { Pass, Fail, NotCheckable };

struct HypothesisCheck {
    std::string name;
    CheckStatus status = CheckStatus::NotCheckable;
    std::string detail;
};

struct ValidationReport {
    std::vector<HypothesisCheck> checks;
    std::vector<double> check_grid;  // sample radii (or u values) used
    double sup_norm_estimate = 0.0;
    double decay_margin = 0.0;       // max V^+(r) r^{2+alpha} observed
    double witnessed_a = 0.0;        // min f'(u)/u on the small-u grid
    double witnessed_M = 0.0;        // first doubling M with f(M)/M > ||V||

    bool all_pass() const;
    const HypothesisCheck* find(const std::string& name) const;
};

/// Sampled verification of the potential hypotheses: sign split, nontrivial
/// positive part, the decay bound when asserted, boundedness near zero.
/// Report-only; solvers decide what to refuse.
ValidationReport validate_potential(const Potential& V, double r_max,
                                    int check_points = 241);

/// Sampled verification of the absorption hypotheses: f(0) = f'(0) = 0,
/// a positive lower bound on f'(u)/u near zero, strict increase of f(u)/u,
/// and eventual f(u)/u > ||V||_inf.
ValidationReport validate_absorption(const AbsorptionTerm& f,
                                     double sup_norm_V);

/// Smallest M in the doubling search {1, 2, 4, ...} with f(M)/M > ||V||_inf;
/// the constant M is then a supersolution of the ball problems.
/// Throws std::domain_error when the search exhausts (superlinearity fails).
double supersolution_bound(const AbsorptionTerm& f, double sup_norm_V);

}  // namespace logistic
