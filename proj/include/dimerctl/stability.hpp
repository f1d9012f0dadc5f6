#pragma once

#include <array>
#include <optional>
#include <vector>

#include "dimerctl/network.hpp"

namespace dimerctl {

using Mat3 = std::array<std::array<double, 3>, 3>;

enum class Verdict { kStable, kMarginal, kUnstable };
const char* to_string(Verdict v);

enum class CaseLabel { kCase1, kCase2, kCase3, kNoRealEquilibrium };
const char* to_string(CaseLabel label);

/// Routh-Hurwitz margins inside this band are reported marginal, never
/// stable.
inline constexpr double kMarginTol = 1e-9;
/// |delta| below this counts as the discriminant-zero boundary (double
/// root, unstable).
inline constexpr double kDeltaTol = 1e-12;

/// Characteristic polynomial s^3 + a2 s^2 + a1 s + a0 of a 3x3 matrix plus
/// the stability verdict: stable iff a2 > 0, a0 > 0 and a2 a1 > a0, with
/// margin = min(a2, a0, a2 a1 - a0).
struct RouthHurwitz {
    Verdict verdict = Verdict::kUnstable;
    double margin = 0.0;
    double a2 = 0.0, a1 = 0.0, a0 = 0.0;
};

/// One equilibrium of the closed-loop mean system. x2 always equals the
/// reference; k1 is the actuation sustaining the point and integ = k1 / kc.
struct Equilibrium {
    double x1 = 0.0;
    double x2 = 0.0;
    double integ = 0.0;
    double k1 = 0.0;
    Verdict verdict = Verdict::kUnstable;
    bool integ_positive = false;
};

struct EquilibriumReport {
    CaseLabel label = CaseLabel::kNoRealEquilibrium;
    double delta = 0.0;        ///< 1 + 4 (2 gamma2 mu / b - v*)
    bool delta_boundary = false;
    std::vector<Equilibrium> equilibria;  ///< ascending in x1
    std::optional<double> gain_bound;     ///< sup kc for the stabilizable branch
};

/// Parameter intervals for the robust gain bound. A degenerate box
/// (lower == upper) is accepted and collapses to the nominal bound.
struct ParamBox {
    double gamma1_lo = 0.0, gamma1_hi = 0.0;
    double gamma2_lo = 0.0, gamma2_hi = 0.0;
    double b_lo = 0.0, b_hi = 0.0;

    void validate() const;
};

/// Half-open interval (lower, upper] for the equilibrium monomer variance.
struct VarianceInterval {
    double lower = 0.0;
    double upper = 0.0;
};

/// Enumerates the real equilibria of the closed-loop mean system for an
/// assumed equilibrium variance v*, classifies the case split on
/// v* - 2 gamma2 mu / b, and attaches a Routh-Hurwitz verdict per point at
/// the given gain. Having no real equilibrium is a valid report, not an
/// error.
EquilibriumReport solve_equilibrium(const NetworkParams& params, double mu, double kc,
                                    double v_star);

/// Jacobian of the closed-loop mean system at (x1*, mu, I* > 0):
///   [ b - gamma1 - 2 b x1*   0        kc ]
///   [ -b/2 + b x1*           -gamma2  0  ]
///   [ 0                      -1       0  ]
Mat3 jacobian(const NetworkParams& params, double x1_star, double kc);

RouthHurwitz routh_hurwitz_3x3(const Mat3& m);

/// Gain supremum f(sqrt(delta)) with
///   f(z) = 2 gamma2 (gamma1 + gamma2 + b z)(gamma1 + b z) / (b z).
/// Throws std::domain_error for delta <= 0 (discriminant boundary, the
/// equilibrium is unstable for every gain).
double gain_bound_case(const NetworkParams& params, double delta);

/// Gain supremum valid for every reference and every b:
///   2 gamma2 (2 gamma1 + gamma2 + 2 sqrt(gamma1 (gamma1 + gamma2))),
/// the minimum of f over its argument.
double uniform_gain_bound(const NetworkParams& params);

/// Worst case of the uniform bound over a parameter box; attained at the
/// lower gamma corner.
double robust_gain_bound(const ParamBox& box);

/// Admissible equilibrium variance interval (0, 2 gamma2 mu / b + 1/4];
/// beyond the upper end no real equilibrium exists.
VarianceInterval variance_bound(const NetworkParams& params, double mu);
VarianceInterval variance_bound(const ParamBox& box, double mu);

/// Side-by-side verdicts of the linearized model with the quadratic terms
/// dropped (never Hurwitz: its determinant is b kc / 2 > 0) and of the true
/// linearization at the positive-branch equilibrium for (mu, v*). Throws
/// std::invalid_argument if (mu, v*) admits no real equilibrium.
struct LinearFallacyReport {
    Mat3 no_quadratic_matrix{};
    double no_quadratic_det = 0.0;
    Verdict no_quadratic_verdict = Verdict::kUnstable;
    bool upper_block_hurwitz = false;  ///< 2x2 plant block; fails iff b > gamma1
    Mat3 true_jacobian{};
    Verdict true_verdict = Verdict::kUnstable;
    double delta = 0.0;
};

LinearFallacyReport demo_linear_fallacy(const NetworkParams& params, double mu, double kc,
                                        double v_star);

}  // namespace dimerctl
