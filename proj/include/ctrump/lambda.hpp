#pragma once

#include "ctrump/dist.hpp"

#include <optional>

namespace ctrump {

/// A transition p ⊗ η₂^{⊗i} ⊗ x₂^{⊗(n-i)} ≻ q ⊗ η₂^{⊗j} ⊗ x₂^{⊗(n-j)} with
/// η₂ the uniform bit and x₂ = (1, 0) the pure bit.
struct LambdaTransition {
    int lambda = 0; // i - j
    unsigned i = 0;
    unsigned j = 0;
    unsigned n = 0;
};

/// Exact check of one transition.
bool lambda_transition_holds(const Dist& p, const Dist& q, unsigned i, unsigned j, unsigned n);

/// Largest i - j over 0 ≤ i, j ≤ n ≤ n_max for which the transition holds,
/// with the smallest (n, i) attaining it. Empty if none holds.
std::optional<LambdaTransition> lambda_max_transition(const Dist& p, const Dist& q,
                                                      unsigned n_max);
std::optional<int> lambda_max(const Dist& p, const Dist& q, unsigned n_max);

} // namespace ctrump
