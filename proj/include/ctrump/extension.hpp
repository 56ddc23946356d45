#pragma once

#include "ctrump/dist.hpp"
#include "ctrump/spectrum.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ctrump {

/// How the per-row masses a_i of the one-column-plus-uniform-tail extension
/// are chosen.
enum class ExtensionMode {
    per_entry_delta, ///< a_i = q_i - δ
    uniform_a,       ///< a_i = a / m
    explicit_list    ///< caller-supplied a_i
};

/// Parameters of the extension whose row i is (q_i - a_i, a_i/n, ..., a_i/n).
struct ExtensionParams {
    ExtensionMode mode = ExtensionMode::explicit_list;
    /// δ, a, or Σ a_i depending on the mode.
    Rational delta_or_a;
    std::uint64_t n = 1;
    std::vector<Rational> a_list;

    /// Requires δ ∈ (0, min_i q_i).
    static ExtensionParams per_entry_delta(const Dist& q, Rational delta, std::uint64_t n);
    /// Requires a ∈ (0, m min_i q_i).
    static ExtensionParams uniform_a(const Dist& q, Rational a, std::uint64_t n);
    /// Range a_i ∈ [0, q_i] is checked by extend().
    static ExtensionParams explicit_list(std::vector<Rational> a_list, std::uint64_t n);

    /// a = Σ a_i.
    Rational total() const;
};

/// The m × (n+1) extension of q. Its marginal on `base_label` is q and its
/// marginal on `new_label` is (1-a, a/n, ..., a/n). Throws DomainError if
/// some a_i ∉ [0, q_i] or the list length does not match.
JointDist extend(const Dist& q, const ExtensionParams& params,
                 std::string base_label = "A", std::string new_label = "B");

/// Extension of a joint distribution: rows are indexed by the flattened
/// entries of `q`, and the new subsystem is appended last.
JointDist extend(const JointDist& q, const ExtensionParams& params, std::string new_label);

/// The marginal (1-a, a/n, ..., a/n) on the added subsystem.
Dist extension_marginal(const Rational& a, std::uint64_t n);
Spectrum extension_marginal_spectrum(const Rational& a, std::uint64_t n);

/// Spectrum of the extension with a_i = q_i - δ, without materializing it.
Spectrum extend_spectrum_delta(const Spectrum& q, const Rational& delta, std::uint64_t n);
/// Spectrum of the extension with a_i = a / dim(q), without materializing it.
Spectrum extend_spectrum_uniform(const Spectrum& q, const Rational& a, std::uint64_t n);

} // namespace ctrump
