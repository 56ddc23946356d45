#include "ctrump/lambda.hpp"

#include "ctrump/error.hpp"
#include "ctrump/majorization.hpp"

namespace ctrump {

namespace {

// η₂^{⊗i} ⊗ x₂^{⊗(n-i)}: 2^i entries 2^-i, the rest zero.
Spectrum bits(unsigned i, unsigned n)
{
    const std::uint64_t ones = std::uint64_t{1} << i;
    const std::uint64_t all = std::uint64_t{1} << n;
    Rational v(1UL, static_cast<unsigned long>(ones));
    return Spectrum::from_levels({{v, ones}}, all - ones);
}

void require(const Dist& p, const Dist& q, unsigned n)
{
    if (p.dim() != q.dim())
        throw DomainError("lambda: p and q must have the same dimension");
    if (n > 40)
        throw DomainError("lambda: n is limited to 40 bits");
}

} // namespace

bool lambda_transition_holds(const Dist& p, const Dist& q, unsigned i, unsigned j, unsigned n)
{
    require(p, q, n);
    if (i > n || j > n)
        throw DomainError("lambda: need i, j <= n");
    return majorizes(kron(Spectrum::of(p), bits(i, n)), kron(Spectrum::of(q), bits(j, n))).holds;
}

std::optional<LambdaTransition> lambda_max_transition(const Dist& p, const Dist& q, unsigned n_max)
{
    require(p, q, n_max);
    const Spectrum sp = Spectrum::of(p), sq = Spectrum::of(q);
    std::optional<LambdaTransition> best;
    for (unsigned n = 0; n <= n_max; ++n) {
        std::vector<Spectrum> left, right;
        for (unsigned i = 0; i <= n; ++i) {
            left.push_back(kron(sp, bits(i, n)));
            right.push_back(kron(sq, bits(i, n)));
        }
        for (unsigned i = 0; i <= n; ++i) {
            for (unsigned j = 0; j <= n; ++j) {
                const int lambda = static_cast<int>(i) - static_cast<int>(j);
                if (best && lambda <= best->lambda)
                    continue;
                if (majorizes(left[i], right[j]).holds)
                    best = LambdaTransition{lambda, i, j, n};
            }
        }
    }
    return best;
}

std::optional<int> lambda_max(const Dist& p, const Dist& q, unsigned n_max)
{
    if (auto t = lambda_max_transition(p, q, n_max))
        return t->lambda;
    return std::nullopt;
}

} // namespace ctrump
