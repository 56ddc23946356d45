#pragma once

#include "ctrump/rational.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ctrump {

/// A finite probability vector with exact rational entries.
///
/// Construction validates that every entry is non-negative and that the
/// entries sum to exactly one; a Dist is immutable afterwards.
class Dist {
public:
    explicit Dist(std::vector<Rational> entries);

    /// The uniform distribution (1/m, ..., 1/m).
    static Dist uniform(std::size_t m);
    /// The point mass on `index` in dimension m.
    static Dist pure(std::size_t m, std::size_t index = 0);

    std::size_t dim() const noexcept { return entries_.size(); }
    const Rational& operator[](std::size_t i) const { return entries_[i]; }
    std::span<const Rational> entries() const noexcept { return entries_; }

    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    bool operator==(const Dist& other) const { return entries_ == other.entries_; }

private:
    std::vector<Rational> entries_;
};

/// Entries rearranged in non-increasing order.
Dist sort_desc(const Dist& p);

/// Number of entries that are exactly non-zero.
std::size_t rank(const Dist& p);

bool is_full_rank(const Dist& p);
bool is_uniform(const Dist& p);
/// Only zeros and a single one.
bool is_pure(const Dist& p);
/// p and q agree after sorting, i.e. p↓ = q↓.
bool same_up_to_permutation(const Dist& p, const Dist& q);

const Rational& max_entry(const Dist& p);
const Rational& min_entry(const Dist& p);

std::string to_string(const Dist& p);

/// Joint distribution of several labelled subsystems, stored as a row-major
/// tensor: the last subsystem varies fastest.
class JointDist {
public:
    JointDist(std::vector<Rational> tensor, std::vector<std::size_t> shape,
              std::vector<std::string> labels);

    /// A single-subsystem joint distribution.
    static JointDist from_dist(const Dist& p, std::string label);

    std::span<const Rational> tensor() const noexcept { return tensor_; }
    const std::vector<std::size_t>& shape() const noexcept { return shape_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return tensor_.size(); }
    std::size_t subsystems() const noexcept { return shape_.size(); }

    /// Position of `label` among the subsystems; throws DomainError if absent.
    std::size_t index_of(const std::string& label) const;

    const Rational& at(std::span<const std::size_t> index) const;

    bool operator==(const JointDist& other) const = default;

private:
    std::vector<Rational> tensor_;
    std::vector<std::size_t> shape_;
    std::vector<std::string> labels_;
};

/// p ⊗ q with labels (first, second); entry (i, j) is p_i q_j.
JointDist kron(const Dist& p, const Dist& q, std::string first = "A",
               std::string second = "B");

/// Tensor product of joint distributions. Labels must be distinct.
JointDist kron(const JointDist& a, const JointDist& b);

/// Marginal on `keep`, which must be a subset of the labels. The result lists
/// the kept subsystems in their original order.
JointDist marginal(const JointDist& j, const std::vector<std::string>& keep);

/// Marginal on a single subsystem, as a plain distribution.
Dist marginal_dist(const JointDist& j, const std::string& label);

/// All tensor entries in row-major order.
Dist flatten(const JointDist& j);

JointDist relabel(const JointDist& j, std::vector<std::string> labels);

/// Reorders subsystems: the result's k-th subsystem is j's `order[k]`-th.
JointDist permute_subsystems(const JointDist& j, const std::vector<std::size_t>& order);

/// Merges `count` adjacent subsystems starting at `first` into one subsystem
/// called `label`. Entries are unchanged (row-major layout is preserved).
JointDist merge_subsystems(const JointDist& j, std::size_t first, std::size_t count,
                           std::string label);

} // namespace ctrump
