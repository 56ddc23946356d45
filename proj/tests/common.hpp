#pragma once

#include "ctrump/certificate.hpp"
#include "ctrump/extension.hpp"
#include "ctrump/lemmas.hpp"

#include <doctest.h>

#include <initializer_list>
#include <random>
#include <string>

namespace testing {

using namespace ctrump;

inline Dist dist(std::initializer_list<const char*> entries)
{
    std::vector<Rational> v;
    for (const char* e : entries)
        v.push_back(parse_rational(e));
    return Dist(std::move(v));
}

inline Rational q(const char* text)
{
    return parse_rational(text);
}

/// Canonical a/b; the two-argument gmpxx constructor does not reduce.
inline Rational frac(long a, long b)
{
    Rational x(a, b);
    x.canonicalize();
    return x;
}

inline Real r(const char* text)
{
    return Real(text);
}

inline Dist p_ex()
{
    return dist({"91/100", "1/20", "1/25"});
}

inline Dist q_ex()
{
    return dist({"17/20", "7/50", "1/100"});
}

/// Entries k_i / Σk with k_i uniform in [lo, hi].
inline Dist random_dist(std::mt19937_64& rng, std::size_t m, int lo = 1, int hi = 40)
{
    std::uniform_int_distribution<int> pick(lo, hi);
    std::vector<int> k(m);
    int total = 0;
    for (auto& x : k)
        total += x = pick(rng);
    if (total == 0) {
        k[0] = 1;
        total = 1;
    }
    std::vector<Rational> v;
    for (int x : k)
        v.push_back(frac(x, total));
    return Dist(std::move(v));
}

inline bool close(const Real& a, const Real& b, const Real& tol)
{
    if (isinf(a) || isinf(b))
        return a == b;
    return abs(a - b) <= tol;
}

/// Direct Rényi entropy of an explicit distribution, summing entry by entry.
inline Real direct_renyi(std::span<const Rational> p, const Order& o)
{
    switch (o.kind()) {
    case Order::Kind::plus_infinity: {
        Rational mx = 0;
        for (const auto& x : p)
            mx = std::max(mx, x);
        return -log_of(mx);
    }
    case Order::Kind::minus_infinity: {
        Rational mn = 1;
        for (const auto& x : p)
            if (x > 0)
                mn = std::min(mn, x);
        return log_of(mn);
    }
    case Order::Kind::one: {
        Real h = 0;
        for (const auto& x : p)
            if (x > 0)
                h -= to_real(x) * log_of(x);
        return h;
    }
    case Order::Kind::zero_plus: {
        std::size_t k = 0;
        for (const auto& x : p)
            k += x > 0;
        return log(Real(k));
    }
    case Order::Kind::burg: {
        Real s = 0;
        for (const auto& x : p)
            s += log_of(x);
        return s / Real(p.size());
    }
    case Order::Kind::finite:
        break;
    }
    const Real a = to_real(o.alpha());
    Real s = 0;
    for (const auto& x : p)
        if (x > 0)
            s += pow(to_real(x), a);
    return (a > 0 ? 1 : -1) / (1 - a) * log(s);
}

} // namespace testing
