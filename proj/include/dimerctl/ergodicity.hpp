#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "dimerctl/network.hpp"

namespace dimerctl {

/// Foster-Lyapunov drift certificate for V(x) = x1 + 2 x2. When
/// all_satisfied, both drift inequalities
///   L V(x)                   <= c1 - c2 V(x)
///   L V(x)^2 - 2 V(x) L V(x) <= c3 + c4 V(x)
/// held at every state of the checked grid, with c1 = c3 = k1,
/// c2 = min{gamma1, gamma2}, c4 = max{gamma1, 2 gamma2}.
struct DriftCertificate {
    std::array<double, 2> nu{1.0, 2.0};
    double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
    std::uint64_t checked_grid_bound = 0;
    bool all_satisfied = false;
    std::optional<CellState> witness;  ///< first violating state, if any
};

/// Checks the drift inequalities on [0, grid_bound]^2 via the brute-force
/// generator, and cross-checks the closed forms
///   L V = k1 - gamma1 x1 - 2 gamma2 x2
///   L V^2 - 2 V L V = k1 + gamma1 x1 + 4 gamma2 x2
/// at every grid state. A violation yields all_satisfied = false with the
/// witnessing state; since the inequalities hold for all parameter values,
/// that signals an implementation bug rather than a property of the inputs.
DriftCertificate certify_drift(const NetworkParams& params, std::uint64_t grid_bound);

/// Asymptotic bound c1/c2 on the stationary mean of nu^T x. Supported
/// weight directions: multiples of (1, 2) giving nu1 * k1 / min{gamma1,
/// gamma2}, and the degenerate direction (1, 0) giving nu1 * k1 / gamma1
/// (a first-moment bound; strict positivity of nu is waived for it). Any
/// other weight throws std::invalid_argument.
double moment_bound(const NetworkParams& params, const std::array<double, 2>& nu);

}  // namespace dimerctl
