#pragma once

#include "ctrump/entropy.hpp"
#include "ctrump/error.hpp"
#include "ctrump/trumping.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace ctrump {

// Closed-form entropy differences for the two extension families.
//
// With q_AB the extension of q and q_B its added marginal, both quantities
// below are H_α(q_AB) - H_α(q_B) - H_α(p). `n` may be any real ≥ 1.

/// Per-entry-δ family (a_i = q_i - δ), for α ∈ [1, +∞].
Real delta_lemma2(const Spectrum& p, const Spectrum& q, const Rational& delta, const Real& n,
                  const Order& alpha);
Real delta_lemma2(const Dist& p, const Dist& q, const Rational& delta, const Real& n,
                  const Order& alpha);

/// Uniform-a family (a_i = a/m), for every order except `burg`.
Real delta_tilde(const Spectrum& p, const Spectrum& q, const Rational& a, const Real& n,
                 const Order& alpha);
Real delta_tilde(const Dist& p, const Dist& q, const Rational& a, const Real& n,
                 const Order& alpha);

/// Same as delta_tilde; the name used by the CLI's lemma3 scan mode.
inline Real delta_lemma3(const Dist& p, const Dist& q, const Rational& a, const Real& n, const Order& alpha)
{
    return delta_tilde(p, q, a, n, alpha);
}

/// Rescaled (1-α)/|α| · delta_tilde, continuous through α = 0 where it is
/// the Burg difference H_Burg(q_AB) - H_Burg(p ⊗ q_B); pass Order::burg()
/// for that point.
Real delta_bar(const Spectrum& p, const Spectrum& q, const Rational& a, const Real& n,
               const Order& alpha);
Real delta_bar(const Dist& p, const Dist& q, const Rational& a, const Real& n,
               const Order& alpha);

/// n → ∞ limits: log m - H_α(p) for the δ family (α > 1), and the piecewise
/// limit of the uniform-a family.
Real delta_lemma2_limit(const Spectrum& p, const Spectrum& q, const Order& alpha);
Real delta_tilde_limit(const Spectrum& p, const Spectrum& q, const Rational& a,
                       const Order& alpha);

/// A required entropy inequality failed at `order()`.
class EntropyConditionError : public DomainError {
public:
    EntropyConditionError(Order order, const std::string& what)
        : DomainError(what), order_(order) {}
    const Order& order() const noexcept { return order_; }

private:
    Order order_;
};

/// Family n ↦ (α ↦ value).
using IndexedFamily = std::function<Real(std::uint64_t n, const Order& alpha)>;

struct DiniOptions {
    double margin_tol = 1e-9;
    std::uint64_t n_max = std::uint64_t{1} << 20;
    /// Number of equally spaced points in arctan-compactified coordinates.
    int samples = 64;
    /// Extra finite points inside the interval (e.g. grid points).
    std::vector<double> extra_points;
};

/// Sample orders covering [lo, hi] (±inf allowed): equally spaced in
/// y = arctan α, plus the infinite endpoints as limit tags, plus extras.
std::vector<Order> compactified_samples(double lo, double hi, int samples,
                                        const std::vector<double>& extra);

/// Smallest N ≤ n_max with f_N(α) > margin_tol at every sample of [lo, hi].
/// The family must be pointwise non-decreasing in n; a sampled decrease
/// throws DomainError. Throws SearchExhausted when n_max is reached.
std::uint64_t dini_search(const IndexedFamily& f, double lo, double hi,
                          const DiniOptions& options = {});

struct SearchOptions {
    AlphaGrid grid = AlphaGrid::default_grid();
    std::uint64_t n_max = std::uint64_t{1} << 20;
    int dini_samples = 64;
    /// Cap on halvings of δ, a and ε.
    int max_halvings = 60;
};

/// Outcome of the δ/N search for the per-entry-δ extension.
struct DeltaSearch {
    Rational delta;
    std::uint64_t n = 1;
    /// Width of the range [1, 1+ε] on which n = 1 already works.
    double epsilon = 0.0;
    /// delta_lemma2 at the returned n over the checked orders in [1, ∞].
    std::vector<GapCheck> checks;
};

/// Finds δ ∈ (0, min q) and N with delta_lemma2 > margin on [1, ∞] for all
/// n ≥ N. Requires q full rank, q not uniform, H(p) < H(q).
DeltaSearch find_delta_N(const Spectrum& p, const Spectrum& q, const SearchOptions& options = {});
DeltaSearch find_delta_N(const Dist& p, const Dist& q, const SearchOptions& options = {});

/// For a fixed δ: ε and the smallest N on the compactified [1+ε, ∞] grid.
DeltaSearch find_N_for_delta(const Spectrum& p, const Spectrum& q, const Rational& delta,
                             const SearchOptions& options = {});

/// Outcome of the a/N search for the uniform-a extension.
struct ASearch {
    Rational a;
    std::uint64_t n = 1;
    /// Offset j with 1/(j+1) < m min q, the Dini index along a = 1/(n+j),
    /// and the resulting upper bound a'.
    std::uint64_t j = 0;
    std::uint64_t n_a_prime = 0;
    Rational a_prime;
    double epsilon = 0.0;
    /// Per-range indices: Burg, (0, 1-ε], -∞ tail, [α_-, 0). Zero when the
    /// range is skipped (rank-deficient p).
    std::uint64_t n_burg = 0;
    std::uint64_t n_positive = 0;
    std::uint64_t n_minus_infinity = 0;
    std::uint64_t n_negative = 0;
    double alpha_minus = 0.0;
    bool full_rank_route = true;
    /// Entropy-criteria trumping check of p ⊗ q_C against the extension at the returned n.
    TrumpingVerdict verification;
};

/// Finds a ∈ (0, m min q) and N with p ⊗ q_B ≻_T q_AB for all n ≥ N, where
/// q_AB is the uniform-a extension. Requires q full rank and not uniform,
/// and H_α(p) < H_α(q) on [1, ∞]; throws EntropyConditionError with the
/// failing order otherwise.
ASearch find_a_N(const Spectrum& p, const Spectrum& q, const SearchOptions& options = {});
ASearch find_a_N(const Dist& p, const Dist& q, const SearchOptions& options = {});

} // namespace ctrump
