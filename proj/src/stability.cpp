#include "dimerctl/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dimerctl {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::kStable: return "stable";
        case Verdict::kMarginal: return "marginal";
        case Verdict::kUnstable: return "unstable";
    }
    return "?";
}

const char* to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::kCase1: return "case1";
        case CaseLabel::kCase2: return "case2";
        case CaseLabel::kCase3: return "case3";
        case CaseLabel::kNoRealEquilibrium: return "no-real-equilibrium";
    }
    return "?";
}

void ParamBox::validate() const {
    if (!(gamma1_lo > 0.0 && gamma2_lo > 0.0 && b_lo > 0.0))
        throw std::invalid_argument("param box: lower ends must be > 0");
    if (!(gamma1_hi >= gamma1_lo && gamma2_hi >= gamma2_lo && b_hi >= b_lo))
        throw std::invalid_argument("param box: upper ends must be >= lower ends");
}

Mat3 jacobian(const NetworkParams& p, double x1_star, double kc) {
    return Mat3{{
        {p.b - p.gamma1 - 2.0 * p.b * x1_star, 0.0, kc},
        {-0.5 * p.b + p.b * x1_star, -p.gamma2, 0.0},
        {0.0, -1.0, 0.0},
    }};
}

RouthHurwitz routh_hurwitz_3x3(const Mat3& m) {
    RouthHurwitz rh;
    rh.a2 = -(m[0][0] + m[1][1] + m[2][2]);
    rh.a1 = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) + (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
            (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    rh.a0 = -det;
    rh.margin = std::min({rh.a2, rh.a0, rh.a2 * rh.a1 - rh.a0});
    if (rh.margin > kMarginTol)
        rh.verdict = Verdict::kStable;
    else if (rh.margin < -kMarginTol)
        rh.verdict = Verdict::kUnstable;
    else
        rh.verdict = Verdict::kMarginal;
    return rh;
}

double gain_bound_case(const NetworkParams& p, double delta) {
    if (!(delta > 0.0))
        throw std::domain_error(
            "gain bound: delta must be > 0 (at the boundary the equilibrium is unstable for "
            "every gain)");
    const double z = std::sqrt(delta);
    return 2.0 * p.gamma2 * (p.gamma1 + p.gamma2 + p.b * z) * (p.gamma1 + p.b * z) / (p.b * z);
}

double uniform_gain_bound(const NetworkParams& p) {
    const double g1 = p.gamma1, g2 = p.gamma2;
    return 2.0 * g2 * (2.0 * g1 + g2 + 2.0 * std::sqrt(g1 * (g1 + g2)));
}

double robust_gain_bound(const ParamBox& box) {
    box.validate();
    NetworkParams corner;
    corner.gamma1 = box.gamma1_lo;
    corner.gamma2 = box.gamma2_lo;
    corner.b = 1.0;  // the bound does not depend on b
    return uniform_gain_bound(corner);
}

VarianceInterval variance_bound(const NetworkParams& p, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("variance bound: mu must be > 0");
    return {0.0, 2.0 * p.gamma2 * mu / p.b + 0.25};
}

VarianceInterval variance_bound(const ParamBox& box, double mu) {
    box.validate();
    if (!(mu > 0.0)) throw std::invalid_argument("variance bound: mu must be > 0");
    return {0.0, 2.0 * box.gamma2_hi * mu / box.b_lo + 0.25};
}

EquilibriumReport solve_equilibrium(const NetworkParams& p, double mu, double kc, double v_star) {
    if (!(mu > 0.0)) throw std::invalid_argument("solve_equilibrium: mu must be > 0");
    if (!(kc > 0.0)) throw std::invalid_argument("solve_equilibrium: kc must be > 0");
    if (!(v_star >= 0.0)) throw std::invalid_argument("solve_equilibrium: v_star must be >= 0");

    const double theta = 2.0 * p.gamma2 * mu / p.b;
    const double q = v_star - theta;  // x1^2 - x1 + q = 0
    EquilibriumReport report;
    report.delta = 1.0 - 4.0 * q;
    report.delta_boundary = std::abs(report.delta) <= kDeltaTol;

    std::vector<double> roots;
    if (report.delta_boundary) {
        report.label = CaseLabel::kCase3;
        roots = {0.5};
    } else if (report.delta < 0.0) {
        report.label = CaseLabel::kNoRealEquilibrium;
        return report;
    } else {
        // Larger root by the stable formula, smaller via Vieta (product = q)
        // so nothing cancels near q = 0.
        const double r_hi = 0.5 * (1.0 + std::sqrt(report.delta));
        const double r_lo = q / r_hi;
        if (q < 0.0) {
            report.label = CaseLabel::kCase1;
            roots = {r_hi};  // the negative root is inadmissible
        } else if (q == 0.0) {
            report.label = CaseLabel::kCase2;
            roots = {r_lo, r_hi};  // exactly {0, 1}
        } else {
            report.label = CaseLabel::kCase3;
            roots = {r_lo, r_hi};
        }
    }

    for (const double x1 : roots) {
        Equilibrium eq;
        eq.x1 = x1;
        eq.x2 = mu;
        eq.k1 = p.gamma1 * x1 + 2.0 * p.gamma2 * mu;  // actuation sustaining the point
        eq.integ = eq.k1 / kc;
        eq.integ_positive = eq.integ > 0.0;
        eq.verdict = report.delta_boundary
                         ? Verdict::kUnstable  // double root: an eigenvalue sits at the origin
                         : routh_hurwitz_3x3(jacobian(p, x1, kc)).verdict;
        report.equilibria.push_back(eq);
    }
    if (report.delta > kDeltaTol) report.gain_bound = gain_bound_case(p, report.delta);
    return report;
}

LinearFallacyReport demo_linear_fallacy(const NetworkParams& p, double mu, double kc,
                                        double v_star) {
    LinearFallacyReport r;
    r.no_quadratic_matrix = Mat3{{
        {p.b - p.gamma1, 0.0, kc},
        {-0.5 * p.b, -p.gamma2, 0.0},
        {0.0, -1.0, 0.0},
    }};
    r.no_quadratic_det = 0.5 * p.b * kc;
    r.no_quadratic_verdict = routh_hurwitz_3x3(r.no_quadratic_matrix).verdict;
    r.upper_block_hurwitz = p.b < p.gamma1;  // eigenvalues b - gamma1 and -gamma2

    const EquilibriumReport eq = solve_equilibrium(p, mu, kc, v_star);
    if (eq.equilibria.empty())
        throw std::invalid_argument(
            "linear fallacy demo: no real equilibrium for the given reference and variance");
    const Equilibrium& branch = eq.equilibria.back();  // stabilizable (largest-x1) branch
    r.true_jacobian = jacobian(p, branch.x1, kc);
    r.true_verdict = branch.verdict;
    r.delta = eq.delta;
    return r;
}

}  // namespace dimerctl
