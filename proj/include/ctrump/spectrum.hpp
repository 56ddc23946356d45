#pragma once

#include "ctrump/dist.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ctrump {

/// One distinct positive value together with how many entries carry it.
struct Level {
    Rational value;
    std::uint64_t count = 0;

    bool operator==(const Level&) const = default;
};

/// The multiset of entries of a distribution: distinct positive values in
/// strictly decreasing order with multiplicities, plus the number of zeros.
///
/// Every relation in this library is permutation invariant, so a Spectrum
/// carries all the information needed to decide it. Tensor products of
/// distributions with repeated entries stay small in this form even when the
/// expanded dimension is large.
class Spectrum {
public:
    /// The spectrum of the trivial distribution (1).
    Spectrum();

    static Spectrum of(const Dist& p);
    static Spectrum of(const JointDist& j);

    /// Sorts, merges equal values and validates the exact sum.
    static Spectrum from_levels(std::vector<Level> levels, std::uint64_t zeros = 0);

    std::span<const Level> levels() const noexcept { return levels_; }
    std::uint64_t zeros() const noexcept { return zeros_; }
    std::uint64_t dim() const noexcept { return rank_ + zeros_; }
    std::uint64_t rank() const noexcept { return rank_; }
    bool full_rank() const noexcept { return zeros_ == 0; }
    bool is_uniform() const noexcept { return zeros_ == 0 && levels_.size() == 1; }

    const Rational& max() const { return levels_.front().value; }
    /// Smallest positive entry.
    const Rational& min_positive() const { return levels_.back().value; }

    /// Expands to an explicit distribution (entries sorted descending).
    /// Throws DomainError if dim exceeds `max_dim`.
    Dist expand(std::uint64_t max_dim = std::uint64_t{1} << 24) const;

    /// Same spectrum with `extra` zeros appended.
    Spectrum padded(std::uint64_t extra) const;

    bool operator==(const Spectrum&) const = default;

private:
    std::vector<Level> levels_;
    std::uint64_t zeros_ = 0;
    std::uint64_t rank_ = 0;
};

/// Spectrum of the tensor product.
Spectrum kron(const Spectrum& a, const Spectrum& b);

} // namespace ctrump
