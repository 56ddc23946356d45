#pragma once

#include "ctrump/ctrump.hpp"
#include "ctrump/io.hpp"
#include "ctrump/lambda.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ctrump {

/// Knobs recorded in every certificate so that a run can be reproduced.
struct RunConfig {
    unsigned precision = kDefaultDigits;
    std::string grid_spec = "default";
    AlphaGrid grid = AlphaGrid::default_grid();
    double tol = 1e-9;
    std::uint64_t budget = 200000;
    std::uint64_t seed = 0;
    std::uint64_t n_max = std::uint64_t{1} << 20;
    bool pad = false;
};

/// "default", a comma-separated list of orders ("-2,0.5,2,inf,0+"), or
/// "default,<list>" to add points to the default grid. Tags not listed in a
/// custom list are disabled; the Burg check is always on.
AlphaGrid parse_grid(const std::string& spec);

const char* tool_version();

Json config_json(const RunConfig& config);

/// Decimal rendering used in certificates.
std::string real_text(const Real& x);

Json majorization_certificate(const Dist& p, const Dist& q, const MajorizationVerdict& verdict,
                              const std::optional<BistochasticWitness>& witness, const RunConfig& config);

Json trumping_certificate(const Dist& p, const Dist& q, const TrumpingVerdict& verdict,
                          const RunConfig& config);

/// `construction` is "not requested", "verified", "unverified" or
/// "exhausted"; `witness` is present for the middle two and `error` explains
/// the last.
Json ctrumping_certificate(const Dist& p, const Dist& q, const CTrumpReport& report,
                           const std::string& construction, const CTrumpWitness* witness,
                           const std::string& error, const RunConfig& config);

Json lambda_certificate(const Dist& p, const Dist& q, const std::optional<LambdaTransition>& best,
                        unsigned n_max, const RunConfig& config);

Json to_json(const TrumpingVerdict& v);
Json to_json(const CTrumpWitness& w);

struct VerifyOutcome {
    bool ok = true;
    std::vector<std::string> messages;
};

/// Re-checks a certificate against its recorded inputs without searching:
/// majorization witnesses are replayed exactly, trumping gaps recomputed at
/// the recorded orders, c-trumping witnesses rebuilt from their parameters
/// and the final majorization re-run, lambda transitions re-checked.
VerifyOutcome verify_certificate(const Json& cert);

} // namespace ctrump
