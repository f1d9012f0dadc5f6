#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "dimerctl/rng.hpp"
#include "dimerctl/stability.hpp"

using namespace dimerctl;

namespace {

const NetworkParams kRef{.k1 = 0.0, .b = 3.0, .gamma1 = 2.0, .gamma2 = 1.0};
constexpr double kMu = 5.0;

double max_real_eig(const Mat3& m) {
    Eigen::Matrix3d a;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) a(r, c) = m[r][c];
    const Eigen::EigenSolver<Eigen::Matrix3d> es(a, /*computeEigenvectors=*/false);
    return es.eigenvalues().real().maxCoeff();
}

double uniform(RngStream& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.uniform01();
}

}  // namespace

TEST_CASE("reference equilibrium: unique stable point below the variance threshold") {
    // b=3, gamma2=1, mu=5, v*=1.5: delta = 1 + 4(10/3 - 3/2) and the single
    // admissible root is (1+sqrt(delta))/2.
    const EquilibriumReport rep = solve_equilibrium(kRef, kMu, /*kc=*/1.0, /*v_star=*/1.5);
    CHECK(rep.label == CaseLabel::kCase1);
    CHECK(rep.delta == doctest::Approx(8.333333333333334).epsilon(1e-12));
    CHECK_FALSE(rep.delta_boundary);
    REQUIRE(rep.equilibria.size() == 1);

    const Equilibrium& eq = rep.equilibria[0];
    CHECK(eq.x1 == doctest::Approx(1.9433756729740645).epsilon(1e-12));
    CHECK(eq.x2 == kMu);
    CHECK(eq.k1 == doctest::Approx(13.886751345948129).epsilon(1e-12));
    CHECK(eq.integ == doctest::Approx(13.886751345948129).epsilon(1e-12));
    CHECK(eq.integ_positive);
    CHECK(eq.verdict == Verdict::kStable);
    REQUIRE(rep.gain_bound.has_value());
    CHECK(*rep.gain_bound > 1.0);
}

TEST_CASE("threshold variance gives the two boundary roots 0 and 1") {
    const double v_star = 2.0 * kRef.gamma2 * kMu / kRef.b;  // same expression as internally
    const EquilibriumReport rep = solve_equilibrium(kRef, kMu, 1.0, v_star);
    CHECK(rep.label == CaseLabel::kCase2);
    CHECK(rep.delta == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(rep.equilibria.size() == 2);
    CHECK(rep.equilibria[0].x1 == 0.0);
    CHECK(rep.equilibria[1].x1 == 1.0);
    CHECK(rep.equilibria[0].verdict == Verdict::kUnstable);
    CHECK(rep.equilibria[1].verdict == Verdict::kStable);  // kc = 1 is far below f(1) = 20
    REQUIRE(rep.gain_bound.has_value());
    CHECK(*rep.gain_bound == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("between threshold and threshold + 1/4 there are two roots") {
    const double theta = 2.0 * kRef.gamma2 * kMu / kRef.b;
    const EquilibriumReport rep = solve_equilibrium(kRef, kMu, 1.0, theta + 0.2);
    CHECK(rep.label == CaseLabel::kCase3);
    CHECK(rep.delta == doctest::Approx(0.2).epsilon(1e-9));
    REQUIRE(rep.equilibria.size() == 2);
    CHECK(rep.equilibria[0].x1 + rep.equilibria[1].x1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.equilibria[0].x1 > 0.0);
    CHECK(rep.equilibria[1].x1 < 1.0);
    CHECK(rep.equilibria[0].verdict == Verdict::kUnstable);
    CHECK(rep.equilibria[1].verdict == Verdict::kStable);
}

TEST_CASE("beyond threshold + 1/4 no real equilibrium exists") {
    const double theta = 2.0 * kRef.gamma2 * kMu / kRef.b;
    const EquilibriumReport rep = solve_equilibrium(kRef, kMu, 1.0, theta + 0.3);
    CHECK(rep.label == CaseLabel::kNoRealEquilibrium);
    CHECK(rep.equilibria.empty());
    CHECK_FALSE(rep.gain_bound.has_value());
    CHECK(rep.delta < 0.0);
}

TEST_CASE("vanishing discriminant is the unstable double-root boundary") {
    const double theta = 2.0 * kRef.gamma2 * kMu / kRef.b;
    const EquilibriumReport rep = solve_equilibrium(kRef, kMu, 1.0, theta + 0.25);
    CHECK(rep.delta_boundary);
    CHECK(rep.label == CaseLabel::kCase3);
    REQUIRE(rep.equilibria.size() == 1);
    CHECK(rep.equilibria[0].x1 == 0.5);
    CHECK(rep.equilibria[0].verdict == Verdict::kUnstable);
    CHECK_FALSE(rep.gain_bound.has_value());
}

TEST_CASE("solve_equilibrium rejects bad scalars") {
    CHECK_THROWS_AS((void)solve_equilibrium(kRef, 0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)solve_equilibrium(kRef, 5.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)solve_equilibrium(kRef, 5.0, 1.0, -0.1), std::invalid_argument);
}

TEST_CASE("jacobian entries at the special roots") {
    Mat3 j = jacobian(kRef, 0.0, 1.0);
    CHECK(j[0][0] == kRef.b - kRef.gamma1);
    j = jacobian(kRef, 1.0, 1.0);
    CHECK(j[0][0] == -kRef.b - kRef.gamma1);

    // at (1 + sqrt(delta))/2 the matrix takes the -gamma1 - b sqrt(delta) /
    // b sqrt(delta)/2 form
    const double delta = 8.333333333333334;
    const double root = 0.5 * (1.0 + std::sqrt(delta));
    j = jacobian(kRef, root, 1.0);
    CHECK(j[0][0] ==
          doctest::Approx(-kRef.gamma1 - kRef.b * std::sqrt(delta)).epsilon(1e-12));
    CHECK(j[1][0] == doctest::Approx(0.5 * kRef.b * std::sqrt(delta)).epsilon(1e-12));
    CHECK(j[0][1] == 0.0);
    CHECK(j[0][2] == 1.0);
    CHECK(j[1][1] == -kRef.gamma2);
    CHECK(j[2][1] == -1.0);
    CHECK(j[2][2] == 0.0);
}

TEST_CASE("Routh-Hurwitz on known matrices") {
    const Mat3 stable{{{-1, 0, 0}, {0, -2, 0}, {0, 0, -3}}};
    const RouthHurwitz rh = routh_hurwitz_3x3(stable);
    CHECK(rh.verdict == Verdict::kStable);
    CHECK(rh.margin > 0.0);
    CHECK(rh.a2 == doctest::Approx(6.0));
    CHECK(rh.a1 == doctest::Approx(11.0));
    CHECK(rh.a0 == doctest::Approx(6.0));

    const Mat3 unstable{{{1, 0, 0}, {0, -2, 0}, {0, 0, -3}}};
    CHECK(routh_hurwitz_3x3(unstable).verdict == Verdict::kUnstable);

    // the no-quadratic matrix: positive determinant, so never Hurwitz
    const Mat3 fallacy{{{1.0, 0.0, 2.0}, {-1.5, -1.0, 0.0}, {0.0, -1.0, 0.0}}};
    const RouthHurwitz rhf = routh_hurwitz_3x3(fallacy);
    CHECK(rhf.verdict == Verdict::kUnstable);
    CHECK(rhf.a0 == doctest::Approx(-3.0));  // -det, det = b kc / 2 = 3
}

TEST_CASE("Routh-Hurwitz agrees with the eigenvalue oracle") {
    RngStream rng(404);
    int compared = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        Mat3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m[r][c] = uniform(rng, -3.0, 3.0);
        const RouthHurwitz rh = routh_hurwitz_3x3(m);
        if (rh.verdict == Verdict::kMarginal) continue;
        ++compared;
        const bool eig_stable = max_real_eig(m) < 0.0;
        CHECK((rh.verdict == Verdict::kStable) == eig_stable);
    }
    CHECK(compared > 1500);  // marginal band must be the rare exception
}

TEST_CASE("gain bound closed form and boundary failure") {
    CHECK(gain_bound_case(kRef, 1.0) == doctest::Approx(20.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)gain_bound_case(kRef, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)gain_bound_case(kRef, -1.0), std::domain_error);

    // f grows linearly for large arguments
    CHECK(gain_bound_case(kRef, 1e12) > gain_bound_case(kRef, 1e6));

    // evaluated at the minimizer, f reproduces the uniform bound
    const double zeta_star = std::sqrt(kRef.gamma1 * (kRef.gamma1 + kRef.gamma2)) / kRef.b;
    CHECK(gain_bound_case(kRef, zeta_star * zeta_star) ==
          doctest::Approx(uniform_gain_bound(kRef)).epsilon(1e-12));
}

TEST_CASE("uniform bound value and symbolic specialization") {
    CHECK(uniform_gain_bound(kRef) == doctest::Approx(19.797958971132712).epsilon(1e-13));

    // gamma1 = gamma2 = g collapses to g^2 (6 + 4 sqrt(2))
    for (const double g : {0.5, 1.0, 1.3, 2.7}) {
        const NetworkParams p{.k1 = 0.0, .b = 1.0, .gamma1 = g, .gamma2 = g};
        CHECK(uniform_gain_bound(p) ==
              doctest::Approx(g * g * (6.0 + 4.0 * std::sqrt(2.0))).epsilon(1e-12));
    }
}

TEST_CASE("uniform bound minorizes every per-discriminant bound") {
    RngStream rng(77);
    for (int trial = 0; trial < 1000; ++trial) {
        const NetworkParams p{.k1 = 0.0,
                              .b = uniform(rng, 0.05, 10.0),
                              .gamma1 = uniform(rng, 0.05, 10.0),
                              .gamma2 = uniform(rng, 0.05, 10.0)};
        const double delta = uniform(rng, 1e-4, 50.0);
        CHECK(uniform_gain_bound(p) <= gain_bound_case(p, delta) * (1.0 + 1e-12));
    }
}

TEST_CASE("numerical minimization of f confirms the closed-form minimizer") {
    RngStream rng(505);
    for (int trial = 0; trial < 100; ++trial) {
        const NetworkParams p{.k1 = 0.0,
                              .b = uniform(rng, 0.1, 5.0),
                              .gamma1 = uniform(rng, 0.1, 5.0),
                              .gamma2 = uniform(rng, 0.1, 5.0)};
        const auto f = [&](double zeta) { return gain_bound_case(p, zeta * zeta); };

        // golden-section on log(zeta) over (1e-6, 1e6)
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double lo = std::log(1e-6), hi = std::log(1e6);
        double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
        double f1 = f(std::exp(m1)), f2 = f(std::exp(m2));
        for (int it = 0; it < 200; ++it) {
            if (f1 < f2) {
                hi = m2, m2 = m1, f2 = f1;
                m1 = hi - phi * (hi - lo);
                f1 = f(std::exp(m1));
            } else {
                lo = m1, m1 = m2, f1 = f2;
                m2 = lo + phi * (hi - lo);
                f2 = f(std::exp(m2));
            }
        }
        const double zeta_min = std::exp(0.5 * (lo + hi));
        const double zeta_star = std::sqrt(p.gamma1 * (p.gamma1 + p.gamma2)) / p.b;
        CHECK(zeta_min == doctest::Approx(zeta_star).epsilon(1e-6));
        CHECK(f(zeta_min) == doctest::Approx(uniform_gain_bound(p)).epsilon(1e-8));
    }
}

TEST_CASE("robust bound sits at the lower gamma corner") {
    const ParamBox box{.gamma1_lo = 2.0, .gamma1_hi = 4.0, .gamma2_lo = 1.0, .gamma2_hi = 3.0,
                       .b_lo = 1.0, .b_hi = 5.0};
    CHECK(robust_gain_bound(box) == doctest::Approx(19.797958971132712).epsilon(1e-13));

    const ParamBox point{.gamma1_lo = 2.0, .gamma1_hi = 2.0, .gamma2_lo = 1.0, .gamma2_hi = 1.0,
                         .b_lo = 3.0, .b_hi = 3.0};
    CHECK(robust_gain_bound(point) == uniform_gain_bound(kRef));

    // dominated by the per-point uniform bound on a grid over the box
    for (int i = 0; i <= 9; ++i) {
        for (int j = 0; j <= 9; ++j) {
            const NetworkParams p{.k1 = 0.0,
                                  .b = 2.0,
                                  .gamma1 = box.gamma1_lo + (box.gamma1_hi - box.gamma1_lo) * i / 9.0,
                                  .gamma2 = box.gamma2_lo + (box.gamma2_hi - box.gamma2_lo) * j / 9.0};
            CHECK(robust_gain_bound(box) <= uniform_gain_bound(p) * (1.0 + 1e-12));
        }
    }

    CHECK_THROWS_AS((void)robust_gain_bound(ParamBox{.gamma1_lo = 0.0, .gamma1_hi = 1.0,
                                                     .gamma2_lo = 1.0, .gamma2_hi = 1.0,
                                                     .b_lo = 1.0, .b_hi = 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)robust_gain_bound(ParamBox{.gamma1_lo = 2.0, .gamma1_hi = 1.0,
                                                     .gamma2_lo = 1.0, .gamma2_hi = 1.0,
                                                     .b_lo = 1.0, .b_hi = 1.0}),
                    std::invalid_argument);
}

TEST_CASE("admissible equilibrium variance interval") {
    const VarianceInterval vi = variance_bound(kRef, kMu);
    CHECK(vi.lower == 0.0);
    CHECK(vi.upper == doctest::Approx(43.0 / 12.0).epsilon(1e-13));

    CHECK(variance_bound(kRef, 1e-9).upper == doctest::Approx(0.25).epsilon(1e-7));
    CHECK_THROWS_AS((void)variance_bound(kRef, 0.0), std::invalid_argument);

    const ParamBox box{.gamma1_lo = 1.0, .gamma1_hi = 2.0, .gamma2_lo = 0.5, .gamma2_hi = 2.0,
                       .b_lo = 2.0, .b_hi = 4.0};
    // outer interval: largest gamma2 with smallest b
    CHECK(variance_bound(box, kMu).upper == doctest::Approx(2.0 * 2.0 * kMu / 2.0 + 0.25));
}

TEST_CASE("dropping the quadratic terms always predicts instability") {
    RngStream rng(88);
    for (int trial = 0; trial < 50; ++trial) {
        const NetworkParams p{.k1 = 0.0,
                              .b = uniform(rng, 0.1, 6.0),
                              .gamma1 = uniform(rng, 0.1, 6.0),
                              .gamma2 = uniform(rng, 0.1, 6.0)};
        const double kc = uniform(rng, 0.05, 10.0);
        const double theta = 2.0 * p.gamma2 * kMu / p.b;
        const LinearFallacyReport rep = demo_linear_fallacy(p, kMu, kc, 0.5 * theta);
        CHECK(rep.no_quadratic_det == doctest::Approx(0.5 * p.b * kc).epsilon(1e-12));
        CHECK(rep.no_quadratic_det > 0.0);
        CHECK(rep.no_quadratic_verdict == Verdict::kUnstable);
        CHECK(rep.upper_block_hurwitz == (p.b < p.gamma1));
    }

    // reference operating point: the honest linearization is stable
    const LinearFallacyReport rep = demo_linear_fallacy(kRef, kMu, 1.0, 1.5);
    CHECK(rep.no_quadratic_verdict == Verdict::kUnstable);
    CHECK(rep.true_verdict == Verdict::kStable);
    CHECK_FALSE(rep.upper_block_hurwitz);  // b = 3 exceeds gamma1 = 2

    CHECK_THROWS_AS((void)demo_linear_fallacy(kRef, kMu, 1.0, 10.0), std::invalid_argument);
}

TEST_CASE("gain bound is sharp: eigenvalues cross at the predicted gain") {
    RngStream rng(1234);
    for (int trial = 0; trial < 5; ++trial) {
        const NetworkParams p{.k1 = 0.0,
                              .b = uniform(rng, 0.3, 4.0),
                              .gamma1 = uniform(rng, 0.3, 4.0),
                              .gamma2 = uniform(rng, 0.3, 4.0)};
        const double z = uniform(rng, 0.1, 2.5);
        const double delta = z * z;
        const double x1_star = 0.5 * (1.0 + z);
        const double bound = gain_bound_case(p, delta);
        CHECK(max_real_eig(jacobian(p, x1_star, bound * 0.999)) < 0.0);
        CHECK(max_real_eig(jacobian(p, x1_star, bound * 1.001)) > 0.0);
    }
}

TEST_CASE("two-root regime: lower branch unstable, upper branch stable at modest gain") {
    const double theta = 2.0 * kRef.gamma2 * kMu / kRef.b;
    for (int i = 1; i <= 8; ++i) {
        const double v_star = theta + 0.25 * i / 9.0;  // strictly inside (theta, theta + 1/4)
        const EquilibriumReport rep = solve_equilibrium(kRef, kMu, 1.0, v_star);
        REQUIRE(rep.equilibria.size() == 2);
        CHECK(max_real_eig(jacobian(kRef, rep.equilibria[0].x1, 1.0)) > 0.0);
        CHECK(max_real_eig(jacobian(kRef, rep.equilibria[1].x1, 1.0)) < 0.0);
        CHECK(rep.equilibria[0].integ_positive);
        CHECK(rep.equilibria[1].integ_positive);
    }
}

TEST_CASE("verdict names") {
    CHECK(std::string(to_string(Verdict::kStable)) == "stable");
    CHECK(std::string(to_string(Verdict::kMarginal)) == "marginal");
    CHECK(std::string(to_string(Verdict::kUnstable)) == "unstable");
    CHECK(std::string(to_string(CaseLabel::kCase1)) == "case1");
    CHECK(std::string(to_string(CaseLabel::kNoRealEquilibrium)) == "no-real-equilibrium");
}
