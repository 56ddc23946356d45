#pragma once

#include "ctrump/entropy.hpp"

#include <optional>
#include <vector>

namespace ctrump {

/// Finite set of Rényi orders standing in for "all α ∈ ℝ \ {0}". The Burg
/// check is always performed.
struct AlphaGrid {
    std::vector<double> finite_points;
    bool plus_infinity = true;
    bool minus_infinity = true;
    bool one = true;
    bool zero_plus = true;
    /// Gaps at or below this value (nats) do not count as strictly positive.
    double margin_tol = 1e-9;
    /// Golden-section steps spent around the smallest finite-order gap.
    int refine_depth = 30;

    /// ±{2^k : k = -20..6} ∪ {1 ± 2^-j : j = 1..20} and every limit tag.
    static AlphaGrid default_grid();

    /// Throws DomainError on an empty point set, zero, one or non-finite points.
    void validate() const;

    /// Every order checked (finite points, enabled limits, Burg), sorted.
    std::vector<Order> orders() const;
};

enum class TrumpStatus { holds, fails, inconclusive };

const char* to_string(TrumpStatus s);

struct GapCheck {
    Order order;
    Real gap; // H(q) - H(p)
};

struct TrumpingVerdict {
    TrumpStatus status = TrumpStatus::inconclusive;
    /// An order with non-positive gap, present iff status == fails.
    std::optional<Order> witness_alpha;
    /// Smallest gap over the strict checks.
    Real min_margin;
    std::optional<Order> min_margin_order;
    /// Every evaluated order, grid points first in sorted order, then
    /// refinement points.
    std::vector<GapCheck> checks;
};

/// Decides p ≻_T q by the entropy criterion on `grid`.
///
/// Requires equal dimensions, p↓ ≠ q↓, and at least one full-rank argument;
/// throws DomainError otherwise. The 0+ entry is the exact rank comparison
/// rank(p) ≤ rank(q), a necessary condition; it does not enter min_margin.
TrumpingVerdict trumps(const Spectrum& p, const Spectrum& q,
                       const AlphaGrid& grid = AlphaGrid::default_grid());
TrumpingVerdict trumps(const Dist& p, const Dist& q,
                       const AlphaGrid& grid = AlphaGrid::default_grid());

} // namespace ctrump
