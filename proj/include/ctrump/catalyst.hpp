#pragma once

#include "ctrump/dist.hpp"
#include "ctrump/spectrum.hpp"

#include <cstdint>
#include <optional>

namespace ctrump {

struct CatalystSearchOptions {
    std::size_t max_dim = 16;
    /// Total objective evaluations across all dimensions and restarts.
    std::uint64_t budget = 200000;
    std::uint64_t seed = 0;
    /// Denominator bound for rationalizing float candidates.
    long max_denominator = 1000000;
};

struct CatalystResult {
    /// Exactly verified: p ⊗ c ≻ q ⊗ c.
    std::optional<Dist> catalyst;
    std::uint64_t evaluations = 0;
    /// Smallest worst-prefix violation seen (negative means strict slack).
    double best_violation = 0.0;
    std::size_t best_dim = 0;
};

/// Looks for a catalyst c with p ⊗ c ≻ q ⊗ c. If p ≻ q the trivial catalyst
/// (1) is returned. Otherwise sweeps dimensions 2..max_dim with Nelder–Mead
/// restarts on the softmax-parameterized simplex, minimizing the worst
/// violated partial sum; candidates are rationalized and re-verified exactly.
CatalystResult search_catalyst(const Spectrum& p, const Spectrum& q,
                               const CatalystSearchOptions& options = {});

std::optional<Dist> search_catalyst(const Dist& p, const Dist& q, std::size_t max_dim,
                                    std::uint64_t budget, std::uint64_t seed = 0);

/// max_k (Σ_{i≤k} q↓_i - Σ_{i≤k} p↓_i) over proper prefixes, in long double.
/// Non-positive iff p ≻ q up to rounding.
long double majorization_violation(const Spectrum& p, const Spectrum& q);

} // namespace ctrump
