#include "ctrump/extension.hpp"
#include "ctrump/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace ctrump {

namespace {

Order order_at(double a)
{
    if (a == std::numeric_limits<double>::infinity())
        return Order::plus_infinity();
    if (a == -std::numeric_limits<double>::infinity())
        return Order::minus_infinity();
    if (a == 0.0)
        return Order::burg();
    if (a == 1.0)
        return Order::one();
    return Order::finite(a);
}

Real as_real(std::uint64_t n)
{
    return Real(static_cast<unsigned long long>(n));
}

// Limit tags and grid points of `grid` lying in [lo, hi].
std::vector<double> grid_points_in(const AlphaGrid& grid, double lo, double hi)
{
    std::vector<double> out;
    for (double a : grid.finite_points)
        if (a >= lo && a <= hi)
            out.push_back(a);
    return out;
}

bool all_above(const std::vector<Real>& v, double tol)
{
    return std::all_of(v.begin(), v.end(), [&](const Real& x) { return x > tol; });
}

std::string describe(double a)
{
    return order_at(a).label();
}

} // namespace

std::vector<Order> compactified_samples(double lo, double hi, int samples,
                                        const std::vector<double>& extra)
{
    if (std::isnan(lo) || std::isnan(hi) || lo > hi)
        throw DomainError("compactified_samples: invalid interval");
    std::vector<Order> out;
    if (lo == hi) {
        out.push_back(order_at(lo));
        return out;
    }
    samples = std::max(samples, 2);
    const double ylo = std::atan(lo);
    const double yhi = std::atan(hi);
    for (int k = 0; k < samples; ++k) {
        double a;
        if (k == 0)
            a = lo;
        else if (k == samples - 1)
            a = hi;
        else
            a = std::tan(ylo + (yhi - ylo) * k / (samples - 1));
        if (a > lo && a < hi)
            out.push_back(order_at(a));
        else if (k == 0 || k == samples - 1)
            out.push_back(order_at(a));
    }
    for (double a : extra)
        if (a >= lo && a <= hi)
            out.push_back(order_at(a));
    std::sort(out.begin(), out.end(), order_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t dini_search(const IndexedFamily& f, double lo, double hi, const DiniOptions& options)
{
    if (options.n_max < 1)
        throw DomainError("dini_search: n_max must be at least 1");
    const auto points = compactified_samples(lo, hi, options.samples, options.extra_points);
    auto eval = [&](std::uint64_t n) {
        std::vector<Real> v;
        v.reserve(points.size());
        for (const auto& o : points)
            v.push_back(f(n, o));
        return v;
    };
    auto check_increase = [&](const std::vector<Real>& before, const std::vector<Real>& after,
                              std::uint64_t n) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (isinf(before[i]) || isinf(after[i]))
                continue;
            const Real slack = Real("1e-30") * (1 + abs(before[i]));
            if (after[i] < before[i] - slack)
                throw DomainError("dini_search: family decreases in n at alpha = " +
                                  points[i].label() + " (n = " + std::to_string(n) + ")");
        }
    };

    std::vector<Real> prev = eval(1);
    if (all_above(prev, options.margin_tol))
        return 1;
    std::uint64_t below = 1;
    std::uint64_t above = 0;
    while (above == 0) {
        if (below >= options.n_max)
            throw SearchExhausted("dini", "no N found up to n_max = " + std::to_string(options.n_max) +
                                              " on [" + describe(lo) + ", " + describe(hi) + "]");
        const std::uint64_t n = std::min(below * 2, options.n_max);
        auto v = eval(n);
        check_increase(prev, v, n);
        if (all_above(v, options.margin_tol))
            above = n;
        else {
            below = n;
            prev = std::move(v);
        }
    }
    while (above - below > 1) {
        const std::uint64_t mid = below + (above - below) / 2;
        if (all_above(eval(mid), options.margin_tol))
            above = mid;
        else
            below = mid;
    }
    return above;
}

namespace {

void require_construction_pair(const Spectrum& p, const Spectrum& q)
{
    if (p.dim() != q.dim())
        throw DomainError("parameter search: p and q must have the same dimension");
    if (!q.full_rank())
        throw DomainError("parameter search: q must have full rank");
    if (q.is_uniform())
        throw DomainError("parameter search: q is uniform, which needs no extension");
}

std::vector<Order> upper_orders(const AlphaGrid& grid)
{
    std::vector<Order> out;
    for (const Order& o : grid.orders()) {
        if (o.kind() == Order::Kind::one || o.kind() == Order::Kind::plus_infinity ||
            (o.is_finite() && o.alpha() > 1))
            out.push_back(o);
    }
    if (std::none_of(out.begin(), out.end(), [](const Order& o) { return o.kind() == Order::Kind::one; }))
        out.insert(out.begin(), Order::one());
    return out;
}

double halve_epsilon(const std::function<bool(double)>& ok, int max_halvings, const std::string& stage)
{
    double eps = 0.5;
    for (int i = 0; i < max_halvings; ++i, eps /= 2)
        if (ok(eps))
            return eps;
    throw SearchExhausted(stage, "no epsilon found after " + std::to_string(max_halvings) +
                                     " halvings");
}

} // namespace

DeltaSearch find_N_for_delta(const Spectrum& p, const Spectrum& q, const Rational& delta,
                             const SearchOptions& options)
{
    require_construction_pair(p, q);
    const double tol = options.grid.margin_tol;
    auto family = [&](std::uint64_t n, const Order& o) { return delta_lemma2(p, q, delta, as_real(n), o); };
    if (!(family(1, Order::one()) > tol))
        throw EntropyConditionError(Order::one(), "lemma2: Shannon gap is not positive for delta = " +
                                                      to_string(delta));

    DeltaSearch out;
    out.delta = delta;
    out.epsilon = halve_epsilon(
        [&](double eps) {
            for (const auto& o : compactified_samples(1.0, 1.0 + eps, options.dini_samples / 4, {}))
                if (!(family(1, o) > tol))
                    return false;
            return true;
        },
        options.max_halvings, "lemma2 epsilon");

    DiniOptions dini;
    dini.margin_tol = tol;
    dini.n_max = options.n_max;
    dini.samples = options.dini_samples;
    const double inf = std::numeric_limits<double>::infinity();
    dini.extra_points = grid_points_in(options.grid, 1.0 + out.epsilon, inf);
    std::uint64_t n = dini_search(family, 1.0 + out.epsilon, inf, dini);

    const auto orders = upper_orders(options.grid);
    for (;;) {
        out.checks.clear();
        bool ok = true;
        for (const auto& o : orders) {
            Real g = family(n, o);
            ok = ok && g > tol;
            out.checks.push_back({o, g});
        }
        if (ok)
            break;
        if (n >= options.n_max)
            throw SearchExhausted("lemma2 grid", "grid gaps not positive up to n_max = " +
                                                     std::to_string(options.n_max));
        n = std::min(n * 2, options.n_max);
    }
    out.n = n;
    return out;
}

DeltaSearch find_delta_N(const Spectrum& p, const Spectrum& q, const SearchOptions& options)
{
    require_construction_pair(p, q);
    const double tol = options.grid.margin_tol;
    if (!(shannon(q) - shannon(p) > tol))
        throw EntropyConditionError(Order::one(), "lemma2: requires H(p) < H(q)");
    Rational delta = q.min_positive() / 2;
    for (int i = 0; i < options.max_halvings; ++i, delta /= 2) {
        if (delta_lemma2(p, q, delta, Real(1), Order::one()) > tol)
            return find_N_for_delta(p, q, delta, options);
    }
    throw SearchExhausted("lemma2 delta", "Shannon gap stayed non-positive after " +
                                              std::to_string(options.max_halvings) + " halvings");
}

DeltaSearch find_delta_N(const Dist& p, const Dist& q, const SearchOptions& options)
{
    if (p.dim() != q.dim())
        throw DomainError("find_delta_N: p and q must have the same dimension");
    return find_delta_N(Spectrum::of(p), Spectrum::of(q), options);
}

ASearch find_a_N(const Spectrum& p, const Spectrum& q, const SearchOptions& options)
{
    require_construction_pair(p, q);
    const double tol = options.grid.margin_tol;
    const double inf = std::numeric_limits<double>::infinity();
    for (const auto& o : upper_orders(options.grid)) {
        if (!(renyi(q, o) - renyi(p, o) > tol))
            throw EntropyConditionError(o, "lemma3: requires H_alpha(p) < H_alpha(q) at alpha = " +
                                               o.label());
    }

    const Rational m(static_cast<unsigned long>(q.dim()));
    const Rational bound = m * q.min_positive();
    ASearch out;
    Integer j;
    {
        const Rational inv = 1 / bound;
        mpz_fdiv_q(j.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
        out.j = j.get_ui();
    }

    DiniOptions dini;
    dini.margin_tol = tol;
    dini.n_max = options.n_max;
    dini.samples = options.dini_samples;

    auto rescaled = [&](const Rational& a) {
        std::vector<Level> levels;
        for (const auto& l : q.levels())
            levels.push_back({(l.value - a / m) / (1 - a), l.count});
        return Spectrum::from_levels(std::move(levels));
    };
    auto inv_a = [&](std::uint64_t k) -> Rational { return Rational(1) / Rational(static_cast<unsigned long>(k + out.j)); };
    auto f = [&](std::uint64_t k, const Order& o) -> Real { return renyi(rescaled(inv_a(k)), o) - renyi(p, o); };
    dini.extra_points = grid_points_in(options.grid, 1.0, inf);
    out.n_a_prime = dini_search(f, 1.0, inf, dini);
    out.a_prime = inv_a(out.n_a_prime);

    Rational a = out.a_prime;
    bool found = false;
    for (int i = 0; i < options.max_halvings; ++i, a /= 2) {
        if (delta_tilde(p, q, a, Real(1), Order::one()) > tol) {
            found = true;
            break;
        }
    }
    if (!found)
        throw SearchExhausted("lemma3 a", "Shannon gap stayed non-positive after " +
                                              std::to_string(options.max_halvings) + " halvings");
    out.a = a;

    auto tilde = [&](std::uint64_t n, const Order& o) { return delta_tilde(p, q, a, as_real(n), o); };
    auto bar = [&](std::uint64_t n, const Order& o) { return delta_bar(p, q, a, as_real(n), o); };
    out.epsilon = halve_epsilon(
        [&](double eps) {
            for (const auto& o : compactified_samples(1.0 - eps, 1.0, options.dini_samples / 4, {}))
                if (!(tilde(1, o) > tol))
                    return false;
            return true;
        },
        options.max_halvings, "lemma3 epsilon");

    const double upper = 1.0 - out.epsilon;
    out.full_rank_route = p.full_rank();
    if (out.full_rank_route) {
        dini.extra_points.clear();
        out.n_burg = dini_search(bar, 0.0, 0.0, dini);
        dini.extra_points = grid_points_in(options.grid, 0.0, upper);
        out.n_positive = dini_search(bar, 0.0, upper, dini);
        dini.extra_points.clear();
        out.n_minus_infinity = dini_search(tilde, -inf, -inf, dini);

        bool have_alpha_minus = false;
        for (int k = -4; k <= 40 && !have_alpha_minus; ++k) {
            const double cand = -std::ldexp(1.0, k);
            bool ok = true;
            for (const auto& o : compactified_samples(-inf, cand, options.dini_samples,
                                                      grid_points_in(options.grid, -inf, cand)))
                if (!(tilde(out.n_minus_infinity, o) > tol)) {
                    ok = false;
                    break;
                }
            if (ok) {
                out.alpha_minus = cand;
                have_alpha_minus = true;
            }
        }
        if (!have_alpha_minus)
            throw SearchExhausted("lemma3 alpha_minus", "no alpha_- found down to -2^40");
        dini.extra_points = grid_points_in(options.grid, out.alpha_minus, 0.0);
        out.n_negative = dini_search(bar, out.alpha_minus, 0.0, dini);
    } else {
        auto hartley = [&](std::uint64_t n, const Order& o) {
            return tilde(n, o.kind() == Order::Kind::burg ? Order::zero_plus() : o);
        };
        dini.extra_points = grid_points_in(options.grid, 0.0, upper);
        out.n_positive = dini_search(hartley, 0.0, upper, dini);
    }

    std::uint64_t n = std::max({std::uint64_t{1}, out.n_burg, out.n_positive, out.n_minus_infinity,
                                out.n_negative});
    for (;;) {
        const Spectrum source = kron(p, extension_marginal_spectrum(a, n));
        const Spectrum target = extend_spectrum_uniform(q, a, n);
        out.verification = trumps(source, target, options.grid);
        if (out.verification.status == TrumpStatus::holds)
            break;
        if (n >= options.n_max)
            throw SearchExhausted("lemma3 verification",
                                  "trumping check not passed up to n_max = " + std::to_string(options.n_max));
        n = std::min(n * 2, options.n_max);
    }
    out.n = n;
    return out;
}

ASearch find_a_N(const Dist& p, const Dist& q, const SearchOptions& options)
{
    if (p.dim() != q.dim())
        throw DomainError("find_a_N: p and q must have the same dimension");
    return find_a_N(Spectrum::of(p), Spectrum::of(q), options);
}

} // namespace ctrump
