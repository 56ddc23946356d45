#include "ctrump/catalyst.hpp"

#include "ctrump/error.hpp"
#include "ctrump/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace ctrump {

namespace {

using Real80 = long double;

struct FloatLevel {
    Real80 value;
    std::uint64_t count;
};

std::vector<FloatLevel> float_levels(const Spectrum& s)
{
    std::vector<FloatLevel> out;
    for (const auto& l : s.levels())
        out.push_back({static_cast<Real80>(l.value.get_d()), l.count});
    if (s.zeros() > 0)
        out.push_back({0.0L, s.zeros()});
    return out;
}

// max over proper prefixes k of L_b(k) - L_a(k), both lists sorted descending.
Real80 lorenz_gap(const std::vector<FloatLevel>& a, const std::vector<FloatLevel>& b)
{
    std::uint64_t total = 0;
    for (const auto& l : a)
        total += l.count;
    std::size_t i = 0, j = 0;
    std::uint64_t ra = a[0].count, rb = b[0].count, k = 0;
    Real80 sa = 0, sb = 0;
    Real80 worst = -std::numeric_limits<Real80>::infinity();
    while (k < total) {
        const std::uint64_t step = std::min(ra, rb);
        sa += static_cast<Real80>(step) * a[i].value;
        sb += static_cast<Real80>(step) * b[j].value;
        k += step;
        if (k < total)
            worst = std::max(worst, sb - sa);
        ra -= step;
        rb -= step;
        if (ra == 0 && ++i < a.size())
            ra = a[i].count;
        if (rb == 0 && ++j < b.size())
            rb = b[j].count;
    }
    return total <= 1 ? Real80(0) : worst;
}

std::vector<FloatLevel> times(const std::vector<FloatLevel>& a, const std::vector<Real80>& c)
{
    std::vector<FloatLevel> out;
    out.reserve(a.size() * c.size());
    for (const auto& l : a)
        for (Real80 x : c)
            out.push_back({l.value * x, l.count});
    std::sort(out.begin(), out.end(), [](const FloatLevel& x, const FloatLevel& y) { return x.value > y.value; });
    return out;
}

std::vector<Real80> softmax(const std::vector<double>& x)
{
    const double top = *std::max_element(x.begin(), x.end());
    std::vector<Real80> c(x.size());
    Real80 s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        c[i] = std::exp(static_cast<Real80>(x[i] - top));
        s += c[i];
    }
    for (auto& v : c)
        v /= s;
    return c;
}

std::optional<Dist> exact_candidate(const std::vector<Real80>& c, const Spectrum& p, const Spectrum& q,
                                    long max_den)
{
    std::vector<Rational> e;
    Rational total = 0;
    for (Real80 v : c) {
        e.push_back(rationalize(static_cast<double>(v), Integer(max_den)));
        total += e.back();
    }
    if (sgn(total) <= 0)
        return std::nullopt;
    for (auto& v : e) {
        v /= total;
        v.canonicalize();
    }
    Dist cat(std::move(e));
    const Spectrum sc = Spectrum::of(cat);
    if (majorizes(kron(p, sc), kron(q, sc)).holds)
        return cat;
    return std::nullopt;
}

} // namespace

long double majorization_violation(const Spectrum& p, const Spectrum& q)
{
    if (p.dim() != q.dim())
        throw DomainError("majorization_violation: dimensions differ");
    return lorenz_gap(float_levels(p), float_levels(q));
}

CatalystResult search_catalyst(const Spectrum& p, const Spectrum& q, const CatalystSearchOptions& options)
{
    if (p.dim() != q.dim())
        throw DomainError("search_catalyst: dimensions differ");
    CatalystResult out;
    out.best_violation = static_cast<double>(majorization_violation(p, q));
    out.best_dim = 1;
    if (majorizes(p, q).holds) {
        out.catalyst = Dist(std::vector<Rational>{Rational(1)});
        return out;
    }

    const auto fp = float_levels(p);
    const auto fq = float_levels(q);
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, 1.5);

    for (std::size_t d = 2; d <= options.max_dim; ++d) {
        const std::uint64_t dims_left = options.max_dim - d + 1;
        const std::uint64_t remaining = options.budget > out.evaluations ? options.budget - out.evaluations : 0;
        const std::uint64_t dim_budget = remaining / dims_left;
        const std::uint64_t restart_budget = std::max<std::uint64_t>(200 * d, 400);
        std::uint64_t used = 0;

        auto objective = [&](const std::vector<double>& x) {
            ++out.evaluations;
            ++used;
            const auto c = softmax(x);
            return static_cast<double>(lorenz_gap(times(fp, c), times(fq, c)));
        };

        while (used + d + 1 < dim_budget) {
            // Nelder–Mead on unconstrained softmax coordinates.
            std::vector<std::vector<double>> simplex(d + 1, std::vector<double>(d));
            for (auto& v : simplex[0])
                v = normal(rng);
            for (std::size_t i = 1; i <= d; ++i) {
                simplex[i] = simplex[0];
                simplex[i][i - 1] += 1.0;
            }
            std::vector<double> f(d + 1);
            for (std::size_t i = 0; i <= d; ++i)
                f[i] = objective(simplex[i]);
            const std::uint64_t stop = used + restart_budget;
            std::vector<std::size_t> idx(d + 1);

            while (used < stop && used < dim_budget) {
                std::iota(idx.begin(), idx.end(), std::size_t{0});
                std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
                const std::size_t best = idx.front(), worst = idx.back(), second = idx[d - 1];
                if (f[best] < -1e-13)
                    break;
                if (f[worst] - f[best] < 1e-16)
                    break;
                std::vector<double> centroid(d, 0.0);
                for (std::size_t i = 0; i <= d; ++i)
                    if (i != worst)
                        for (std::size_t k = 0; k < d; ++k)
                            centroid[k] += simplex[i][k] / static_cast<double>(d);
                auto along = [&](double t) {
                    std::vector<double> x(d);
                    for (std::size_t k = 0; k < d; ++k)
                        x[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
                    return x;
                };
                auto xr = along(-1.0);
                const double fr = objective(xr);
                if (fr < f[best]) {
                    auto xe = along(-2.0);
                    const double fe = objective(xe);
                    if (fe < fr) {
                        simplex[worst] = std::move(xe);
                        f[worst] = fe;
                    } else {
                        simplex[worst] = std::move(xr);
                        f[worst] = fr;
                    }
                    continue;
                }
                if (fr < f[second]) {
                    simplex[worst] = std::move(xr);
                    f[worst] = fr;
                    continue;
                }
                auto xc = fr < f[worst] ? along(-0.5) : along(0.5);
                const double fc = objective(xc);
                if (fc < std::min(fr, f[worst])) {
                    simplex[worst] = std::move(xc);
                    f[worst] = fc;
                    continue;
                }
                for (std::size_t i = 0; i <= d; ++i) {
                    if (i == best)
                        continue;
                    for (std::size_t k = 0; k < d; ++k)
                        simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
                    f[i] = objective(simplex[i]);
                }
            }

            const std::size_t best = static_cast<std::size_t>(std::min_element(f.begin(), f.end()) - f.begin());
            if (f[best] < out.best_violation) {
                out.best_violation = f[best];
                out.best_dim = d;
            }
            if (f[best] <= 1e-12) {
                if (auto cat = exact_candidate(softmax(simplex[best]), p, q, options.max_denominator)) {
                    out.catalyst = std::move(cat);
                    return out;
                }
            }
        }
    }
    return out;
}

std::optional<Dist> search_catalyst(const Dist& p, const Dist& q, std::size_t max_dim, std::uint64_t budget,
                                    std::uint64_t seed)
{
    if (p.dim() != q.dim())
        throw DomainError("search_catalyst: dimensions differ");
    CatalystSearchOptions o;
    o.max_dim = max_dim;
    o.budget = budget;
    o.seed = seed;
    return search_catalyst(Spectrum::of(p), Spectrum::of(q), o).catalyst;
}

} // namespace ctrump
