#pragma once

#include "ctrump/dist.hpp"
#include "ctrump/real.hpp"
#include "ctrump/spectrum.hpp"

#include <string>

namespace ctrump {

/// A Rényi order: a finite real α ∉ {0, 1}, or one of the limit cases.
/// `burg` stands for the Burg entropy, which plays the role of the order-0
/// quantity in the trumping criterion.
class Order {
public:
    enum class Kind { finite, plus_infinity, minus_infinity, one, zero_plus, burg };

    /// Throws DomainError for α ∈ {0, 1} or non-finite α; use the tags instead.
    static Order finite(double alpha);
    static Order plus_infinity() { return Order(Kind::plus_infinity, 0.0); }
    static Order minus_infinity() { return Order(Kind::minus_infinity, 0.0); }
    static Order one() { return Order(Kind::one, 1.0); }
    static Order zero_plus() { return Order(Kind::zero_plus, 0.0); }
    static Order burg() { return Order(Kind::burg, 0.0); }

    /// Parses "inf", "-inf", "1", "0+", "burg" or a finite number.
    static Order parse(const std::string& text);

    Kind kind() const noexcept { return kind_; }
    /// α for finite orders; 1 for `one`; 0 for `zero_plus` and `burg`.
    double alpha() const noexcept { return alpha_; }
    bool is_finite() const noexcept { return kind_ == Kind::finite; }

    /// Position on the extended real line, used to order checks
    /// deterministically: -inf < negative α < burg < 0+ < positive α < +inf,
    /// with `one` at 1.
    double sort_key() const noexcept;

    std::string label() const;

    bool operator==(const Order&) const = default;

private:
    Order(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {}
    Kind kind_;
    double alpha_;
};

bool order_less(const Order& a, const Order& b);

/// Σ_i p_i^α over the positive entries, weighted by multiplicity.
Real power_sum(const Spectrum& p, const Real& alpha);

/// Rényi entropy H_α in nats. Finite α uses sgn(α)/(1-α) log Σ p_i^α with
/// 0^α = +inf for α < 0; `one` is Shannon entropy (0 log 0 = 0); `zero_plus`
/// is log rank; `plus_infinity` is -log max p_i; `minus_infinity` is
/// log min p_i; `burg` returns the Burg entropy.
Real renyi(const Spectrum& p, const Order& order);
Real renyi(const Dist& p, const Order& order);

Real shannon(const Spectrum& p);
Real shannon(const Dist& p);

/// (1/m) Σ log p_i; -inf if any entry is zero.
Real burg(const Spectrum& p);
Real burg(const Dist& p);

struct Gap {
    Real value;
    /// Both entropies were -inf; `value` is then 0.
    bool degenerate = false;
};

/// H_order(q) - H_order(p).
Gap entropy_gap(const Spectrum& p, const Spectrum& q, const Order& order);
Gap entropy_gap(const Dist& p, const Dist& q, const Order& order);

} // namespace ctrump
