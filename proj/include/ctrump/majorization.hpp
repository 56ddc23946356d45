#pragma once

#include "ctrump/dist.hpp"
#include "ctrump/error.hpp"
#include "ctrump/spectrum.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ctrump {

/// Outcome of the partial-sum test Σ_{i≤k} p↓_i ≥ Σ_{i≤k} q↓_i.
struct MajorizationVerdict {
    bool holds = false;
    /// Smallest prefix length k (1-based) at which the inequality fails.
    std::optional<std::uint64_t> failing_k;
    /// Prefix lengths at which partial sums were recorded. For explicit
    /// distributions this is 1..m; for spectra it is the union of the block
    /// boundaries of both arguments, where the piecewise-linear difference of
    /// the two Lorenz curves attains its extrema.
    std::vector<std::uint64_t> prefix_lengths;
    std::vector<Rational> partial_p;
    std::vector<Rational> partial_q;
};

/// Exact majorization test. Requires dim(p) == dim(q); pad explicitly with
/// pad_zeros otherwise.
MajorizationVerdict majorizes(const Dist& p, const Dist& q);
MajorizationVerdict majorizes(const Spectrum& p, const Spectrum& q);

/// Mixes coordinates i and j: x_i' = t x_i + (1-t) x_j, x_j' = (1-t) x_i + t x_j.
struct TTransform {
    std::size_t i = 0;
    std::size_t j = 0;
    Rational t;
};

/// A product of T-transforms followed by a coordinate permutation. Applying
/// `steps` to p gives x; then q_k = x[permutation[k]].
struct BistochasticWitness {
    std::vector<TTransform> steps;
    std::vector<std::size_t> permutation;
};

class NotMajorized : public Error {
public:
    explicit NotMajorized(MajorizationVerdict verdict);
    const MajorizationVerdict& verdict() const noexcept { return verdict_; }

private:
    MajorizationVerdict verdict_;
};

/// Builds a witness mapping p to q exactly; throws NotMajorized if p ⊁ q.
/// At most dim-1 steps. Indices refer to positions in p (0-based).
BistochasticWitness witness(const Dist& p, const Dist& q);

/// Applies the witness to p exactly.
Dist replay(const BistochasticWitness& w, const Dist& p);

/// p followed by zeros up to `target_dim`.
Dist pad_zeros(const Dist& p, std::size_t target_dim);

/// Sorts both arguments and truncates them to rank(q) entries. Requires
/// equal dimensions and rank(p) ≤ rank(q).
std::pair<Dist, Dist> strip_common_zeros(const Dist& p, const Dist& q);

} // namespace ctrump
