#include "dimerctl/ergodicity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dimerctl {

namespace {

double weight(const CellState& s) {
    return static_cast<double>(s.x1) + 2.0 * static_cast<double>(s.x2);
}

// |a - b| <= tol * max(1, |b|)
bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

}  // namespace

DriftCertificate certify_drift(const NetworkParams& p, std::uint64_t grid_bound) {
    if (grid_bound < 10) throw std::invalid_argument("certify_drift: grid_bound must be >= 10");

    DriftCertificate cert;
    cert.c1 = p.k1;
    cert.c2 = std::min(p.gamma1, p.gamma2);
    cert.c3 = p.k1;
    cert.c4 = std::max(p.gamma1, 2.0 * p.gamma2);
    cert.checked_grid_bound = grid_bound;
    cert.all_satisfied = true;

    const auto v = [](const CellState& s) { return weight(s); };
    const auto v_sq = [](const CellState& s) {
        const double w = weight(s);
        return w * w;
    };

    for (std::uint64_t x1 = 0; x1 <= grid_bound; ++x1) {
        for (std::uint64_t x2 = 0; x2 <= grid_bound; ++x2) {
            const CellState s{x1, x2};
            const double vx = weight(s);
            const double lv = generator_apply(v, s, p);
            const double qv = generator_apply(v_sq, s, p) - 2.0 * vx * lv;

            // Brute force must reproduce the closed forms; a mismatch is an
            // implementation bug, not a property of the parameters.
            const double d1 = static_cast<double>(x1), d2 = static_cast<double>(x2);
            const double lv_closed = p.k1 - p.gamma1 * d1 - 2.0 * p.gamma2 * d2;
            const double qv_closed = p.k1 + p.gamma1 * d1 + 4.0 * p.gamma2 * d2;
            const bool forms_ok =
                close_rel(lv, lv_closed, 1e-12) && close_rel(qv, qv_closed, 1e-12);

            const double drift_rhs = cert.c1 - cert.c2 * vx;
            const double quad_rhs = cert.c3 + cert.c4 * vx;
            const bool drift_ok = lv <= drift_rhs + 1e-9 * std::max(1.0, std::abs(drift_rhs));
            const bool quad_ok = qv <= quad_rhs + 1e-9 * std::max(1.0, std::abs(quad_rhs));

            if (!(forms_ok && drift_ok && quad_ok)) {
                cert.all_satisfied = false;
                cert.witness = s;
                return cert;
            }
        }
    }
    return cert;
}

double moment_bound(const NetworkParams& p, const std::array<double, 2>& nu) {
    if (!(nu[0] > 0.0)) throw std::invalid_argument("moment_bound: nu[0] must be > 0");
    if (nu[1] == 2.0 * nu[0]) {
        const double c2 = std::min(p.gamma1, p.gamma2);
        if (!(c2 > 0.0))
            throw std::invalid_argument("moment_bound: degradation rates must be > 0");
        return nu[0] * p.k1 / c2;
    }
    if (nu[1] == 0.0) {
        // Degenerate first-moment direction: positivity of nu is waived, the
        // monomer drift alone gives the bound.
        if (!(p.gamma1 > 0.0)) throw std::invalid_argument("moment_bound: gamma1 must be > 0");
        return nu[0] * p.k1 / p.gamma1;
    }
    throw std::invalid_argument("moment_bound: unsupported weight direction");
}

}  // namespace dimerctl
