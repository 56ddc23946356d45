#include "ctrump/lemmas.hpp"

#include "ctrump/extension.hpp"

namespace ctrump {

namespace {

Real count_of(std::uint64_t c)
{
    return Real(static_cast<unsigned long long>(c));
}

void require_pair(const Spectrum& p, const Spectrum& q)
{
    if (p.dim() != q.dim())
        throw DomainError("extension gap: p and q must have the same dimension");
    if (!q.full_rank())
        throw DomainError("extension gap: q must have full rank");
    if (q.is_uniform())
        throw DomainError("extension gap: q must not be uniform");
}

void require_n(const Real& n)
{
    if (!(n >= 1))
        throw DomainError("extension gap: n must be at least 1");
}

void require_delta(const Spectrum& q, const Rational& delta)
{
    if (sgn(delta) <= 0 || delta >= q.min_positive())
        throw DomainError("extension gap: need 0 < delta < min q, got " + to_string(delta));
}

void require_a(const Spectrum& q, const Rational& a)
{
    const Rational bound = q.min_positive() * Rational(static_cast<unsigned long>(q.dim()));
    if (sgn(a) <= 0 || a >= bound)
        throw DomainError("extension gap: need 0 < a < m min q = " + to_string(bound) +
                          ", got " + to_string(a));
}

Real max_of(const Real& x, const Real& y)
{
    return x < y ? y : x;
}

Real min_of(const Real& x, const Real& y)
{
    return x < y ? x : y;
}

// Shared pieces of the uniform-a family.
struct UniformPieces {
    Real m;
    Real a;
    Rational share; // a / m
};

UniformPieces pieces(const Spectrum& q, const Rational& a)
{
    const Rational m(static_cast<unsigned long>(q.dim()));
    return {to_real(m), to_real(a), a / m};
}

Real burg_difference(const Spectrum& p, const Spectrum& q, const Rational& a, const Real& n)
{
    const auto u = pieces(q, a);
    const Real bp = burg(p);
    if (isinf(bp))
        return infinity();
    Real sum = 0;
    for (const auto& l : q.levels())
        sum += count_of(l.count) * log_of(l.value - u.share);
    const Real h_ab = sum / (u.m * (n + 1)) + n / (n + 1) * log(u.a / (u.m * n));
    const Real h_pb = bp + (log(1 - u.a) + n * log(u.a / n)) / (n + 1);
    return h_ab - h_pb;
}

} // namespace

Real delta_lemma2(const Spectrum& p, const Spectrum& q, const Rational& delta, const Real& n,
                  const Order& alpha)
{
    require_pair(p, q);
    require_delta(q, delta);
    require_n(n);
    const Real m = count_of(q.dim());
    const Real d = to_real(delta);
    const Rational md_exact = delta * Rational(static_cast<unsigned long>(q.dim()));
    const Real md = to_real(md_exact);
    const Real rest = to_real(1 - md_exact);

    switch (alpha.kind()) {
    case Order::Kind::one: {
        Real s = md * log(m);
        for (const auto& l : q.levels()) {
            const Real v = to_real(l.value - delta);
            s -= count_of(l.count) * v * log(v / rest);
        }
        return s - shannon(p);
    }
    case Order::Kind::plus_infinity: {
        const Real big_ab = max_of(d, to_real(q.max() - delta) / n);
        const Real big_b = max_of(md, rest / n);
        return log(big_b) - log(big_ab) + log_of(p.max());
    }
    case Order::Kind::finite:
        if (alpha.alpha() > 1)
            break;
        [[fallthrough]];
    default:
        throw DomainError("delta_lemma2 is defined for orders in [1, inf], got " + alpha.label());
    }
    const Real al(alpha.alpha());
    const Real tail = pow(n, 1 - al);
    Real s_ab = 0;
    for (const auto& l : q.levels())
        s_ab += count_of(l.count) * pow(to_real(l.value - delta), al);
    s_ab = m * pow(d, al) + tail * s_ab;
    const Real s_b = pow(md, al) + tail * pow(rest, al);
    return (log(s_ab) - log(s_b)) / (1 - al) - renyi(p, alpha);
}

Real delta_tilde(const Spectrum& p, const Spectrum& q, const Rational& a, const Real& n,
                 const Order& alpha)
{
    require_pair(p, q);
    require_a(q, a);
    require_n(n);
    const auto u = pieces(q, a);

    switch (alpha.kind()) {
    case Order::Kind::one: {
        Real s = u.a * log(u.m) + (1 - u.a) * log(1 - u.a);
        for (const auto& l : q.levels()) {
            const Real v = to_real(l.value - u.share);
            s -= count_of(l.count) * v * log(v);
        }
        return s - shannon(p);
    }
    case Order::Kind::plus_infinity: {
        const Real big_ab = max_of(to_real(q.max() - u.share), u.a / (u.m * n));
        const Real big_b = max_of(1 - u.a, u.a / n);
        return log(big_b) - log(big_ab) - renyi(p, alpha);
    }
    case Order::Kind::minus_infinity: {
        const Real small_ab = min_of(to_real(q.min_positive() - u.share), u.a / (u.m * n));
        const Real small_b = min_of(1 - u.a, u.a / n);
        return log(small_ab) - log(small_b) - renyi(p, alpha);
    }
    case Order::Kind::zero_plus:
        return log(u.m) - log(count_of(p.rank()));
    case Order::Kind::burg:
        throw DomainError("delta_tilde is not defined for the Burg tag; use delta_bar");
    case Order::Kind::finite:
        break;
    }
    const Real al(alpha.alpha());
    const Real sign = alpha.alpha() > 0 ? Real(1) : Real(-1);
    const Real tail = pow(n, 1 - al) * pow(u.a, al);
    Real s_ab = 0;
    for (const auto& l : q.levels())
        s_ab += count_of(l.count) * pow(to_real(l.value - u.share), al);
    s_ab += tail * pow(u.m, 1 - al);
    const Real s_b = pow(1 - u.a, al) + tail;
    return sign / (1 - al) * (log(s_ab) - log(s_b)) - renyi(p, alpha);
}

Real delta_bar(const Spectrum& p, const Spectrum& q, const Rational& a, const Real& n,
               const Order& alpha)
{
    switch (alpha.kind()) {
    case Order::Kind::burg:
    case Order::Kind::zero_plus:
        require_pair(p, q);
        require_a(q, a);
        require_n(n);
        return burg_difference(p, q, a, n);
    case Order::Kind::one:
        delta_tilde(p, q, a, n, alpha);
        return Real(0);
    case Order::Kind::plus_infinity:
        return -delta_tilde(p, q, a, n, alpha);
    case Order::Kind::minus_infinity:
        return delta_tilde(p, q, a, n, alpha);
    case Order::Kind::finite:
        break;
    }
    const Real al(alpha.alpha());
    return (1 - al) / abs(al) * delta_tilde(p, q, a, n, alpha);
}

Real delta_lemma2_limit(const Spectrum& p, const Spectrum& q, const Order& alpha)
{
    require_pair(p, q);
    const bool ok = alpha.kind() == Order::Kind::plus_infinity ||
                    (alpha.is_finite() && alpha.alpha() > 1);
    if (!ok)
        throw DomainError("the large-n limit is taken for orders in (1, inf], got " + alpha.label());
    return log(count_of(q.dim())) - renyi(p, alpha);
}

Real delta_tilde_limit(const Spectrum& p, const Spectrum& q, const Rational& a, const Order& alpha)
{
    require_pair(p, q);
    require_a(q, a);
    const auto u = pieces(q, a);
    auto rescaled = [&]() {
        std::vector<Level> levels;
        const Rational rest = 1 - a;
        for (const auto& l : q.levels())
            levels.push_back({(l.value - u.share) / rest, l.count});
        return Spectrum::from_levels(std::move(levels));
    };
    switch (alpha.kind()) {
    case Order::Kind::minus_infinity:
        return -log(u.m) - renyi(p, alpha);
    case Order::Kind::zero_plus:
        return log(u.m) - log(count_of(p.rank()));
    case Order::Kind::one:
        return delta_tilde(p, q, a, Real(1), alpha);
    case Order::Kind::plus_infinity:
        return renyi(rescaled(), alpha) - renyi(p, alpha);
    case Order::Kind::burg:
        throw DomainError("delta_tilde_limit is not defined for the Burg tag");
    case Order::Kind::finite:
        break;
    }
    if (alpha.alpha() < 0)
        return -log(u.m) - renyi(p, alpha);
    if (alpha.alpha() < 1)
        return log(u.m) - renyi(p, alpha);
    return renyi(rescaled(), alpha) - renyi(p, alpha);
}

Real delta_lemma2(const Dist& p, const Dist& q, const Rational& delta, const Real& n,
                  const Order& alpha)
{
    return delta_lemma2(Spectrum::of(p), Spectrum::of(q), delta, n, alpha);
}

Real delta_tilde(const Dist& p, const Dist& q, const Rational& a, const Real& n, const Order& alpha)
{
    return delta_tilde(Spectrum::of(p), Spectrum::of(q), a, n, alpha);
}

Real delta_bar(const Dist& p, const Dist& q, const Rational& a, const Real& n, const Order& alpha)
{
    return delta_bar(Spectrum::of(p), Spectrum::of(q), a, n, alpha);
}

} // namespace ctrump
