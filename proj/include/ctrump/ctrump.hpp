#pragma once

#include "ctrump/catalyst.hpp"
#include "ctrump/lemmas.hpp"
#include "ctrump/majorization.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ctrump {

enum class CTrumpDecision { holds, fails, boundary };

const char* to_string(CTrumpDecision d);

struct CTrumpReport {
    CTrumpDecision decision = CTrumpDecision::fails;
    std::size_t rank_p = 0;
    std::size_t rank_q = 0;
    /// H(q) - H(p).
    Real entropy_gap;
    /// p↓ = q↓, in which case the relation holds with no auxiliary system.
    bool identical = false;
    std::string reason;
};

/// Decides whether p c-trumps q: holds iff p↓ = q↓, or rank(p) ≤ rank(q) and
/// H(p) < H(q) - margin_tol. A Shannon gap within margin_tol of zero (and
/// p↓ ≠ q↓) is reported as boundary: the exact transition is impossible, but
/// q can be approached arbitrarily well. Requires dim(p) == dim(q).
CTrumpReport decide_ctrump(const Dist& p, const Dist& q, double margin_tol = 1e-9);

/// The correlated auxiliary state q_EBC ⊗ c_D on subsystems E, B and CD.
///
/// E carries a copy of `base`. The E–B part is the per-entry-δ extension
/// with n_b tail columns; the C column is the uniform-a extension of that
/// with n_c tail columns; D carries the catalyst. Held in factored form since
/// the product dimension grows quickly; marginals and the spectrum are
/// computed exactly without materializing the tensor.
struct StagedExtension {
    Dist base;
    Rational delta;
    std::uint64_t n_b = 1;
    Rational a;
    std::uint64_t n_c = 1;
    Dist catalyst = Dist(std::vector<Rational>{Rational(1)});

    std::uint64_t size() const;
    /// Marginal on "E", "B" or "CD".
    Dist marginal(const std::string& label) const;
    /// Spectrum of the full tensor.
    Spectrum spectrum() const;
    /// p ⊗ q_B ⊗ q_C and q_EBC as spectra (the pair the catalyst acts on),
    /// for a given p on E's place.
    Spectrum stage_source(const Dist& p) const;
    Spectrum stage_target() const;
    /// Explicit tensor with labels {E, B, CD}. Throws DomainError above
    /// max_size entries.
    JointDist materialize(std::uint64_t max_size = std::uint64_t{1} << 20) const;
};

struct ConstructionOptions {
    SearchOptions search;
    CatalystSearchOptions catalyst;
    double margin_tol = 1e-9;
    /// Explore admissible (δ, n_B, a, n_C) beyond the first ones found,
    /// preferring choices for which the staged pair needs no catalyst.
    bool explore = true;
};

/// Parameter candidate examined by the exploration stage.
struct StageCandidate {
    Rational delta;
    std::uint64_t n_b = 1;
    Rational a;
    std::uint64_t n_c = 1;
    double violation = 0.0;
};

/// Auxiliary systems enabling p ⊗ (r_1 ⊗ r_2 ⊗ r_3) ≻ q ⊗ r_123.
struct CTrumpWitness {
    Dist p = Dist::uniform(1);
    Dist q = Dist::uniform(1);
    /// Number of auxiliary systems: 0 for the trivial cases, 3 otherwise.
    std::size_t k = 0;
    /// r_1 = q_E, r_2 = q_B, r_3 = q_C ⊗ c_D.
    std::vector<Dist> r_marginals;
    std::optional<StagedExtension> joint;

    std::optional<DeltaSearch> stage_b;
    std::optional<ASearch> stage_c;
    /// The certified staged pair the catalyst was sought for.
    std::optional<TrumpingVerdict> stage_trumping;
    std::optional<StageCandidate> chosen;
    std::uint64_t candidates_examined = 0;
    std::uint64_t catalyst_evaluations = 0;
    std::uint64_t seed = 0;

    bool marginals_consistent = false;
    /// H(p) + Σ H(r_i) ≤ H(q) + H(r_123) ≤ H(q) + Σ H(r_i) within 1e-9.
    bool entropy_chain_ok = false;
    /// The exact final majorization check passed.
    bool verified = false;
    std::optional<MajorizationVerdict> final_check;
    std::string note;
};

/// Runs the construction for a pair with decide_ctrump == holds: strip
/// common zeros, extend with the per-entry-δ family on B, extend again with
/// the uniform-a family on C, find a trumping catalyst on D, and assemble
/// r_1 = q_E, r_2 = q_B, r_3 = q_C ⊗ c_D after swapping A and E. When no
/// catalyst is found within budget the witness is returned with
/// verified = false. Throws DomainError if the decision is not holds and
/// SearchExhausted if the δ or a stage runs out of budget.
CTrumpWitness build_ctrump_witness(const Dist& p, const Dist& q,
                                   const ConstructionOptions& options = {});

/// Re-checks a witness exactly: marginals and the final majorization on the
/// full product space.
MajorizationVerdict check_ctrump_witness(const CTrumpWitness& w);

/// Exact final majorization p ⊗ r_1 ⊗ r_2 ⊗ r_3 ≻ q ⊗ r_123 for a staged
/// extension.
MajorizationVerdict check_staged(const Dist& p, const Dist& q, const StagedExtension& joint);

/// Drops auxiliary distributions that are uniform or pure.
std::vector<Dist> prune_useless(const std::vector<Dist>& r);

} // namespace ctrump
