#include "ctrump/entropy.hpp"

#include "ctrump/error.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace ctrump {

Order Order::finite(double alpha)
{
    if (!std::isfinite(alpha))
        throw DomainError("finite order must be a finite number; use the infinity tags");
    if (alpha == 0.0)
        throw DomainError("order 0 is not a finite order; use zero_plus or burg");
    if (alpha == 1.0)
        throw DomainError("order 1 is not a finite order; use one");
    return Order(Kind::finite, alpha);
}

Order Order::parse(const std::string& text)
{
    if (text == "inf" || text == "+inf" || text == "infinity")
        return plus_infinity();
    if (text == "-inf" || text == "-infinity")
        return minus_infinity();
    if (text == "0+")
        return zero_plus();
    if (text == "burg")
        return burg();
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw DomainError("unrecognized order '" + text + "'");
    if (value == 1.0)
        return one();
    return finite(value);
}

double Order::sort_key() const noexcept
{
    switch (kind_) {
    case Kind::minus_infinity:
        return -std::numeric_limits<double>::infinity();
    case Kind::plus_infinity:
        return std::numeric_limits<double>::infinity();
    case Kind::one:
        return 1.0;
    case Kind::zero_plus:
    case Kind::burg:
        return 0.0;
    case Kind::finite:
        break;
    }
    return alpha_;
}

std::string Order::label() const
{
    switch (kind_) {
    case Kind::minus_infinity:
        return "-inf";
    case Kind::plus_infinity:
        return "inf";
    case Kind::one:
        return "1";
    case Kind::zero_plus:
        return "0+";
    case Kind::burg:
        return "burg";
    case Kind::finite:
        break;
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, alpha_);
    return std::string(buf, ptr);
}

bool order_less(const Order& a, const Order& b)
{
    if (a.sort_key() != b.sort_key())
        return a.sort_key() < b.sort_key();
    // burg sits just below 0+.
    auto rank = [](const Order& o) { return o.kind() == Order::Kind::burg ? 0 : 1; };
    return rank(a) < rank(b);
}

Real power_sum(const Spectrum& p, const Real& alpha)
{
    Real s = 0;
    for (const auto& l : p.levels())
        s += Real(static_cast<unsigned long long>(l.count)) * pow(to_real(l.value), alpha);
    return s;
}

Real shannon(const Spectrum& p)
{
    Real s = 0;
    for (const auto& l : p.levels()) {
        Real v = to_real(l.value);
        s -= Real(static_cast<unsigned long long>(l.count)) * v * log(v);
    }
    return s;
}

Real shannon(const Dist& p)
{
    return shannon(Spectrum::of(p));
}

Real burg(const Spectrum& p)
{
    if (!p.full_rank())
        return minus_infinity();
    Real s = 0;
    for (const auto& l : p.levels())
        s += Real(static_cast<unsigned long long>(l.count)) * log_of(l.value);
    return s / Real(static_cast<unsigned long long>(p.dim()));
}

Real burg(const Dist& p)
{
    return burg(Spectrum::of(p));
}

Real renyi(const Spectrum& p, const Order& order)
{
    switch (order.kind()) {
    case Order::Kind::one:
        return shannon(p);
    case Order::Kind::zero_plus:
        return log(Real(static_cast<unsigned long long>(p.rank())));
    case Order::Kind::plus_infinity:
        return -log_of(p.max());
    case Order::Kind::minus_infinity:
        return p.full_rank() ? log_of(p.min_positive()) : minus_infinity();
    case Order::Kind::burg:
        return burg(p);
    case Order::Kind::finite:
        break;
    }
    const double a = order.alpha();
    if (a < 0 && !p.full_rank())
        return minus_infinity();
    const Real alpha(a);
    const Real sign = a > 0 ? Real(1) : Real(-1);
    return sign / (Real(1) - alpha) * log(power_sum(p, alpha));
}

Real renyi(const Dist& p, const Order& order)
{
    return renyi(Spectrum::of(p), order);
}

Gap entropy_gap(const Spectrum& p, const Spectrum& q, const Order& order)
{
    Real hp = renyi(p, order);
    Real hq = renyi(q, order);
    if (isinf(hp) && isinf(hq) && hp < 0 && hq < 0)
        return Gap{Real(0), true};
    return Gap{hq - hp, false};
}

Gap entropy_gap(const Dist& p, const Dist& q, const Order& order)
{
    return entropy_gap(Spectrum::of(p), Spectrum::of(q), order);
}

} // namespace ctrump
