#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace dimerctl {

/// Rate constants of the dimerization network.
///
/// Reactions:
///   R1:  0       -> S1    rate k1       (production)
///   R2:  S1 + S1 -> S2    rate b        (dimerization)
///   R3:  S1      -> 0     rate gamma1   (monomer degradation)
///   R4:  S2      -> 0     rate gamma2   (dimer degradation)
struct NetworkParams {
    double k1 = 0.0;
    double b = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;

    /// Enforces b, gamma1, gamma2 > 0 and k1 >= 0 (k1 = 0 is a legal
    /// boundary case). Config ingestion calls this; the math routines below
    /// stay total on nonnegative rates so degenerate sub-processes (pure
    /// birth, pure death) remain simulable in tests.
    void validate() const {
        if (!(k1 >= 0.0)) throw std::invalid_argument("network: k1 must be >= 0");
        if (!(b > 0.0)) throw std::invalid_argument("network: b must be > 0");
        if (!(gamma1 > 0.0)) throw std::invalid_argument("network: gamma1 must be > 0");
        if (!(gamma2 > 0.0)) throw std::invalid_argument("network: gamma2 must be > 0");
    }
};

/// Integer copy numbers of one cell. Both counts stay nonnegative; any
/// update that would break that is a logic error, not a recoverable state.
struct CellState {
    std::uint64_t x1 = 0;  ///< monomer S1
    std::uint64_t x2 = 0;  ///< dimer S2

    friend bool operator==(const CellState&, const CellState&) = default;
};

inline constexpr int kNumReactions = 4;
inline constexpr int kNumSpecies = 2;

enum class Reaction : int {
    kProduction = 0,
    kDimerization = 1,
    kMonomerDecay = 2,
    kDimerDecay = 3,
};

/// Stoichiometry matrix, species x reactions. Fixed for this network.
inline constexpr std::array<std::array<int, kNumReactions>, kNumSpecies> kStoichiometry{{
    {+1, -2, -1, 0},
    {0, +1, 0, -1},
}};

/// Propensity vector (w1..w4). The dimerization channel is zero for
/// x1 in {0, 1}.
[[nodiscard]] inline std::array<double, kNumReactions> propensities(const CellState& state,
                                                                    const NetworkParams& p) {
    const double x1 = static_cast<double>(state.x1);
    const double x2 = static_cast<double>(state.x2);
    return {
        p.k1,
        state.x1 < 2 ? 0.0 : 0.5 * p.b * x1 * (x1 - 1.0),
        p.gamma1 * x1,
        p.gamma2 * x2,
    };
}

/// Applies the stoichiometry column of one reaction. Throws std::logic_error
/// if the update would drive a copy number negative or overflow; the SSA
/// loop only fires channels with positive propensity, so reaching the throw
/// indicates a bug in the caller.
[[nodiscard]] inline CellState apply_reaction(const CellState& state, int reaction_index) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    CellState next = state;
    switch (static_cast<Reaction>(reaction_index)) {
        case Reaction::kProduction:
            if (next.x1 == kMax) throw std::logic_error("apply_reaction: monomer count overflow");
            next.x1 += 1;
            return next;
        case Reaction::kDimerization:
            if (next.x1 < 2) throw std::logic_error("apply_reaction: dimerization from x1 < 2");
            if (next.x2 == kMax) throw std::logic_error("apply_reaction: dimer count overflow");
            next.x1 -= 2;
            next.x2 += 1;
            return next;
        case Reaction::kMonomerDecay:
            if (next.x1 == 0) throw std::logic_error("apply_reaction: monomer decay from x1 = 0");
            next.x1 -= 1;
            return next;
        case Reaction::kDimerDecay:
            if (next.x2 == 0) throw std::logic_error("apply_reaction: dimer decay from x2 = 0");
            next.x2 -= 1;
            return next;
    }
    throw std::logic_error("apply_reaction: reaction index out of range");
}

/// Action of the Markov generator on a test function f:
///   sum_k w_k(x) * (f(x + s_k) - f(x)).
/// Zero-propensity channels are skipped, so f is only ever evaluated at
/// reachable (nonnegative) states.
template <class F>
[[nodiscard]] double generator_apply(F&& f, const CellState& state, const NetworkParams& p) {
    const auto w = propensities(state, p);
    const double f0 = f(state);
    double acc = 0.0;
    for (int k = 0; k < kNumReactions; ++k) {
        if (w[k] <= 0.0) continue;
        acc += w[k] * (f(apply_reaction(state, k)) - f0);
    }
    return acc;
}

}  // namespace dimerctl
