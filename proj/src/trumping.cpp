#include "ctrump/trumping.hpp"

#include "ctrump/error.hpp"

#include <algorithm>
#include <cmath>

namespace ctrump {

AlphaGrid AlphaGrid::default_grid()
{
    AlphaGrid g;
    for (int k = -20; k <= 6; ++k) {
        g.finite_points.push_back(std::ldexp(1.0, k));
        g.finite_points.push_back(-std::ldexp(1.0, k));
    }
    for (int j = 1; j <= 20; ++j) {
        g.finite_points.push_back(1.0 + std::ldexp(1.0, -j));
        g.finite_points.push_back(1.0 - std::ldexp(1.0, -j));
    }
    // α = 1 is the Shannon tag.
    std::erase(g.finite_points, 1.0);
    std::sort(g.finite_points.begin(), g.finite_points.end());
    g.finite_points.erase(std::unique(g.finite_points.begin(), g.finite_points.end()),
                          g.finite_points.end());
    return g;
}

void AlphaGrid::validate() const
{
    if (finite_points.empty())
        throw DomainError("alpha grid has no finite points");
    for (double a : finite_points) {
        if (!std::isfinite(a) || a == 0.0 || a == 1.0)
            throw DomainError("alpha grid point must be finite and differ from 0 and 1");
    }
    if (!(margin_tol > 0.0))
        throw DomainError("margin_tol must be positive");
    if (refine_depth < 0)
        throw DomainError("refine_depth must be non-negative");
}

std::vector<Order> AlphaGrid::orders() const
{
    std::vector<double> pts = finite_points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Order> out;
    for (double a : pts)
        out.push_back(Order::finite(a));
    if (plus_infinity)
        out.push_back(Order::plus_infinity());
    if (minus_infinity)
        out.push_back(Order::minus_infinity());
    if (one)
        out.push_back(Order::one());
    if (zero_plus)
        out.push_back(Order::zero_plus());
    out.push_back(Order::burg());
    std::stable_sort(out.begin(), out.end(), order_less);
    return out;
}

const char* to_string(TrumpStatus s)
{
    switch (s) {
    case TrumpStatus::holds:
        return "holds";
    case TrumpStatus::fails:
        return "fails";
    case TrumpStatus::inconclusive:
        return "inconclusive";
    }
    return "?";
}

namespace {

// -inf < α < 0 < α < 1 < α < inf
int region(double a)
{
    return a < 0 ? 0 : (a < 1 ? 1 : 2);
}

bool better(const Real& gap, const Order& o, const Real& best_gap, const std::optional<Order>& best)
{
    if (!best)
        return true;
    if (gap != best_gap)
        return gap < best_gap;
    return order_less(o, *best);
}

} // namespace

TrumpingVerdict trumps(const Spectrum& p, const Spectrum& q, const AlphaGrid& grid)
{
    if (p.dim() != q.dim())
        throw DomainError("trumps: dimensions differ; pad with zeros first");
    if (p == q)
        throw DomainError("trumps: p and q are identical up to permutation; the relation is trivial");
    if (!p.full_rank() && !q.full_rank())
        throw DomainError("trumps: neither argument has full rank; strip common zeros first");
    grid.validate();

    TrumpingVerdict v;
    std::optional<Order> worst;
    Real worst_gap;
    auto record = [&](const Order& o, const Real& gap) {
        v.checks.push_back({o, gap});
        if (o.kind() == Order::Kind::zero_plus)
            return;
        if (better(gap, o, worst_gap, worst)) {
            worst = o;
            worst_gap = gap;
        }
    };

    bool rank_ok = true;
    for (const Order& o : grid.orders()) {
        if (o.kind() == Order::Kind::zero_plus) {
            rank_ok = p.rank() <= q.rank();
            record(o, renyi(q, o) - renyi(p, o));
            continue;
        }
        record(o, entropy_gap(p, q, o).value);
    }

    auto finish = [&]() {
        v.min_margin = worst_gap;
        v.min_margin_order = worst;
        if (!rank_ok) {
            v.status = TrumpStatus::fails;
            v.witness_alpha = Order::zero_plus();
        } else if (worst_gap <= 0) {
            v.status = TrumpStatus::fails;
            v.witness_alpha = worst;
        } else if (worst_gap <= grid.margin_tol) {
            v.status = TrumpStatus::inconclusive;
        } else {
            v.status = TrumpStatus::holds;
        }
        return v;
    };

    if (!rank_ok || worst_gap <= 0 || grid.refine_depth == 0)
        return finish();

    // Golden-section search between the neighbours of the smallest finite
    // gap, staying inside one of the regions separated by 0 and 1.
    std::vector<double> pts = grid.finite_points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::optional<std::size_t> best_idx;
    Real best_finite;
    for (const auto& c : v.checks) {
        if (!c.order.is_finite())
            continue;
        if (!best_idx || c.gap < best_finite) {
            best_finite = c.gap;
            best_idx = static_cast<std::size_t>(
                std::lower_bound(pts.begin(), pts.end(), c.order.alpha()) - pts.begin());
        }
    }
    if (!best_idx)
        return finish();
    const std::size_t i = *best_idx;
    const double mid = pts[i];
    double lo = mid, hi = mid;
    if (i > 0 && region(pts[i - 1]) == region(mid))
        lo = pts[i - 1];
    if (i + 1 < pts.size() && region(pts[i + 1]) == region(mid))
        hi = pts[i + 1];
    if (lo == hi)
        return finish();

    auto eval = [&](double a) {
        const Order o = Order::finite(a);
        Real g = entropy_gap(p, q, o).value;
        record(o, g);
        return g;
    };
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    Real f1 = eval(x1), f2 = eval(x2);
    for (int step = 2; step < grid.refine_depth; ++step) {
        if (f1 <= 0 || f2 <= 0)
            break;
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            if (x1 == lo || x1 == x2 || region(x1) != region(mid))
                break;
            f1 = eval(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            if (x2 == hi || x2 == x1 || region(x2) != region(mid))
                break;
            f2 = eval(x2);
        }
    }
    return finish();
}

TrumpingVerdict trumps(const Dist& p, const Dist& q, const AlphaGrid& grid)
{
    if (p.dim() != q.dim())
        throw DomainError("trumps: dimensions differ (" + std::to_string(p.dim()) + " vs " +
                          std::to_string(q.dim()) + "); pad with zeros first");
    return trumps(Spectrum::of(p), Spectrum::of(q), grid);
}

} // namespace ctrump
