#include "ctrump/extension.hpp"

#include "ctrump/error.hpp"

namespace ctrump {

namespace {

Rational as_rational(std::uint64_t n)
{
    return Rational(static_cast<unsigned long>(n));
}

void require_n(std::uint64_t n)
{
    if (n == 0)
        throw DomainError("extension: n must be at least 1");
}

} // namespace

ExtensionParams ExtensionParams::per_entry_delta(const Dist& q, Rational delta, std::uint64_t n)
{
    require_n(n);
    if (sgn(delta) <= 0 || delta >= min_entry(q))
        throw DomainError("extension: need 0 < delta < min q, got delta = " + to_string(delta));
    ExtensionParams p;
    p.mode = ExtensionMode::per_entry_delta;
    p.delta_or_a = delta;
    p.n = n;
    for (const auto& qi : q)
        p.a_list.push_back(qi - delta);
    return p;
}

ExtensionParams ExtensionParams::uniform_a(const Dist& q, Rational a, std::uint64_t n)
{
    require_n(n);
    const Rational bound = min_entry(q) * as_rational(q.dim());
    if (sgn(a) <= 0 || a >= bound)
        throw DomainError("extension: need 0 < a < m min q = " + to_string(bound) + ", got a = " +
                          to_string(a));
    ExtensionParams p;
    p.mode = ExtensionMode::uniform_a;
    p.delta_or_a = a;
    p.n = n;
    const Rational share = a / as_rational(q.dim());
    p.a_list.assign(q.dim(), share);
    return p;
}

ExtensionParams ExtensionParams::explicit_list(std::vector<Rational> a_list, std::uint64_t n)
{
    require_n(n);
    ExtensionParams p;
    p.mode = ExtensionMode::explicit_list;
    p.n = n;
    p.a_list = std::move(a_list);
    p.delta_or_a = p.total();
    return p;
}

Rational ExtensionParams::total() const
{
    Rational s = 0;
    for (const auto& a : a_list)
        s += a;
    return s;
}

namespace {

std::vector<Rational> extend_rows(std::span<const Rational> q, const ExtensionParams& params)
{
    require_n(params.n);
    if (params.a_list.size() != q.size())
        throw DomainError("extension: " + std::to_string(params.a_list.size()) +
                          " masses given for " + std::to_string(q.size()) + " rows");
    const Rational n = as_rational(params.n);
    std::vector<Rational> t;
    t.reserve(q.size() * (params.n + 1));
    for (std::size_t i = 0; i < q.size(); ++i) {
        const Rational& a = params.a_list[i];
        if (sgn(a) < 0 || a > q[i])
            throw DomainError("extension: a_" + std::to_string(i) + " = " + to_string(a) +
                              " lies outside [0, " + to_string(q[i]) + "]");
        t.push_back(q[i] - a);
        const Rational tail = a / n;
        for (std::uint64_t k = 0; k < params.n; ++k)
            t.push_back(tail);
    }
    return t;
}

} // namespace

JointDist extend(const Dist& q, const ExtensionParams& params, std::string base_label,
                 std::string new_label)
{
    auto t = extend_rows(q.entries(), params);
    return JointDist(std::move(t), {q.dim(), static_cast<std::size_t>(params.n + 1)},
                     {std::move(base_label), std::move(new_label)});
}

JointDist extend(const JointDist& q, const ExtensionParams& params, std::string new_label)
{
    auto t = extend_rows(q.tensor(), params);
    auto shape = q.shape();
    shape.push_back(static_cast<std::size_t>(params.n + 1));
    auto labels = q.labels();
    labels.push_back(std::move(new_label));
    return JointDist(std::move(t), std::move(shape), std::move(labels));
}

Dist extension_marginal(const Rational& a, std::uint64_t n)
{
    require_n(n);
    if (sgn(a) < 0 || a > 1)
        throw DomainError("extension: total mass a must lie in [0, 1]");
    std::vector<Rational> e;
    e.reserve(n + 1);
    e.push_back(1 - a);
    const Rational tail = a / as_rational(n);
    for (std::uint64_t k = 0; k < n; ++k)
        e.push_back(tail);
    return Dist(std::move(e));
}

Spectrum extension_marginal_spectrum(const Rational& a, std::uint64_t n)
{
    require_n(n);
    if (sgn(a) < 0 || a > 1)
        throw DomainError("extension: total mass a must lie in [0, 1]");
    std::vector<Level> levels;
    std::uint64_t zeros = 0;
    if (sgn(1 - a) > 0)
        levels.push_back({1 - a, 1});
    else
        zeros += 1;
    if (sgn(a) > 0)
        levels.push_back({a / as_rational(n), n});
    else
        zeros += n;
    return Spectrum::from_levels(std::move(levels), zeros);
}

Spectrum extend_spectrum_delta(const Spectrum& q, const Rational& delta, std::uint64_t n)
{
    require_n(n);
    if (!q.full_rank())
        throw DomainError("extension: q must have full rank");
    if (sgn(delta) <= 0 || delta >= q.min_positive())
        throw DomainError("extension: need 0 < delta < min q");
    std::vector<Level> levels;
    const Rational nn = as_rational(n);
    for (const auto& l : q.levels()) {
        levels.push_back({delta, l.count});
        levels.push_back({(l.value - delta) / nn, l.count * n});
    }
    return Spectrum::from_levels(std::move(levels));
}

Spectrum extend_spectrum_uniform(const Spectrum& q, const Rational& a, std::uint64_t n)
{
    require_n(n);
    if (!q.full_rank())
        throw DomainError("extension: q must have full rank");
    const Rational m = as_rational(q.dim());
    const Rational share = a / m;
    if (sgn(a) <= 0 || share > q.min_positive())
        throw DomainError("extension: need 0 < a <= m min q");
    std::vector<Level> levels;
    std::uint64_t zeros = 0;
    for (const auto& l : q.levels()) {
        if (l.value == share)
            zeros += l.count;
        else
            levels.push_back({l.value - share, l.count});
    }
    levels.push_back({share / as_rational(n), q.dim() * n});
    return Spectrum::from_levels(std::move(levels), zeros);
}

} // namespace ctrump
