#include "ctrump/spectrum.hpp"

#include "ctrump/error.hpp"

#include <algorithm>

namespace ctrump {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw DomainError("spectrum dimension overflows 64 bits");
    return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw DomainError("spectrum dimension overflows 64 bits");
    return r;
}

} // namespace

Spectrum::Spectrum() : levels_{Level{Rational(1), 1}}, zeros_(0), rank_(1) {}

Spectrum Spectrum::of(const Dist& p)
{
    std::vector<Level> levels;
    std::uint64_t zeros = 0;
    for (const auto& x : p) {
        if (sgn(x) == 0)
            ++zeros;
        else
            levels.push_back({x, 1});
    }
    return from_levels(std::move(levels), zeros);
}

Spectrum Spectrum::of(const JointDist& j)
{
    return of(flatten(j));
}

Spectrum Spectrum::from_levels(std::vector<Level> levels, std::uint64_t zeros)
{
    Spectrum s;
    s.levels_.clear();
    s.zeros_ = zeros;
    s.rank_ = 0;
    std::sort(levels.begin(), levels.end(),
              [](const Level& a, const Level& b) { return a.value > b.value; });
    Rational total = 0;
    for (auto& l : levels) {
        if (l.count == 0)
            continue;
        const int sign = sgn(l.value);
        if (sign < 0)
            throw DomainError("spectrum: negative value");
        if (sign == 0) {
            s.zeros_ = checked_add(s.zeros_, l.count);
            continue;
        }
        total += l.value * Rational(static_cast<unsigned long>(l.count));
        s.rank_ = checked_add(s.rank_, l.count);
        if (!s.levels_.empty() && s.levels_.back().value == l.value)
            s.levels_.back().count += l.count;
        else
            s.levels_.push_back(std::move(l));
    }
    if (total != 1)
        throw DomainError("spectrum: values sum to " + total.get_str() + ", not 1");
    return s;
}

Dist Spectrum::expand(std::uint64_t max_dim) const
{
    if (dim() > max_dim)
        throw DomainError("spectrum dimension " + std::to_string(dim()) +
                          " exceeds expansion limit " + std::to_string(max_dim));
    std::vector<Rational> e;
    e.reserve(dim());
    for (const auto& l : levels_)
        e.insert(e.end(), l.count, l.value);
    e.insert(e.end(), zeros_, Rational(0));
    return Dist(std::move(e));
}

Spectrum Spectrum::padded(std::uint64_t extra) const
{
    Spectrum s = *this;
    s.zeros_ = checked_add(s.zeros_, extra);
    return s;
}

Spectrum kron(const Spectrum& a, const Spectrum& b)
{
    std::vector<Level> levels;
    levels.reserve(a.levels().size() * b.levels().size());
    for (const auto& x : a.levels())
        for (const auto& y : b.levels())
            levels.push_back({x.value * y.value, checked_mul(x.count, y.count)});
    const std::uint64_t zeros =
        checked_add(checked_mul(a.zeros(), b.dim()), checked_mul(a.rank(), b.zeros()));
    return Spectrum::from_levels(std::move(levels), zeros);
}

} // namespace ctrump
