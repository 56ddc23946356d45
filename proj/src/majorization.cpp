#include "ctrump/majorization.hpp"

#include <algorithm>
#include <numeric>

namespace ctrump {

namespace {

Rational times(const Rational& v, std::uint64_t n)
{
    return v * Rational(static_cast<unsigned long>(n));
}

std::vector<std::size_t> descending_order(const Dist& p)
{
    std::vector<std::size_t> idx(p.dim());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });
    return idx;
}

std::string describe(const MajorizationVerdict& v)
{
    if (v.holds)
        return "majorization holds";
    return "majorization fails at prefix k = " + std::to_string(*v.failing_k);
}

} // namespace

NotMajorized::NotMajorized(MajorizationVerdict verdict)
    : Error("p does not majorize q: " + describe(verdict)), verdict_(std::move(verdict))
{
}

MajorizationVerdict majorizes(const Dist& p, const Dist& q)
{
    if (p.dim() != q.dim())
        throw DomainError("majorizes: dimensions differ (" + std::to_string(p.dim()) + " vs " +
                          std::to_string(q.dim()) + "); pad with zeros first");
    const Dist ps = sort_desc(p);
    const Dist qs = sort_desc(q);
    MajorizationVerdict v;
    v.holds = true;
    Rational sp = 0, sq = 0;
    for (std::size_t k = 0; k < ps.dim(); ++k) {
        sp += ps[k];
        sq += qs[k];
        v.prefix_lengths.push_back(k + 1);
        v.partial_p.push_back(sp);
        v.partial_q.push_back(sq);
        if (v.holds && sp < sq) {
            v.holds = false;
            v.failing_k = k + 1;
        }
    }
    return v;
}

MajorizationVerdict majorizes(const Spectrum& p, const Spectrum& q)
{
    if (p.dim() != q.dim())
        throw DomainError("majorizes: dimensions differ (" + std::to_string(p.dim()) + " vs " +
                          std::to_string(q.dim()) + "); pad with zeros first");
    auto with_zeros = [](const Spectrum& s) {
        std::vector<Level> l(s.levels().begin(), s.levels().end());
        if (s.zeros() > 0)
            l.push_back({Rational(0), s.zeros()});
        return l;
    };
    const auto lp = with_zeros(p);
    const auto lq = with_zeros(q);

    MajorizationVerdict v;
    v.holds = true;
    std::size_t i = 0, j = 0;
    std::uint64_t rem_p = lp[0].count, rem_q = lq[0].count;
    std::uint64_t k = 0;
    Rational sp = 0, sq = 0;
    const std::uint64_t dim = p.dim();
    while (k < dim) {
        const std::uint64_t step = std::min(rem_p, rem_q);
        const Rational& vp = lp[i].value;
        const Rational& vq = lq[j].value;
        if (v.holds && vp < vq) {
            // The difference sp - sq falls linearly along this segment.
            const Rational start = sp - sq;
            const Rational drop = vq - vp;
            if (start < times(drop, step)) {
                Rational ratio = start / drop;
                Integer t;
                mpz_fdiv_q(t.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
                v.holds = false;
                v.failing_k = k + t.get_ui() + 1;
            }
        }
        sp += times(vp, step);
        sq += times(vq, step);
        k += step;
        v.prefix_lengths.push_back(k);
        v.partial_p.push_back(sp);
        v.partial_q.push_back(sq);
        rem_p -= step;
        rem_q -= step;
        if (rem_p == 0 && ++i < lp.size())
            rem_p = lp[i].count;
        if (rem_q == 0 && ++j < lq.size())
            rem_q = lq[j].count;
    }
    return v;
}

BistochasticWitness witness(const Dist& p, const Dist& q)
{
    MajorizationVerdict v = majorizes(p, q);
    if (!v.holds)
        throw NotMajorized(std::move(v));

    const std::size_t m = p.dim();
    const auto pi = descending_order(p);
    const auto tau = descending_order(q);
    std::vector<Rational> x(m), y(m);
    for (std::size_t r = 0; r < m; ++r) {
        x[r] = p[pi[r]];
        y[r] = q[tau[r]];
    }

    BistochasticWitness w;
    for (;;) {
        std::size_t j = m;
        for (std::size_t r = m; r-- > 0;)
            if (x[r] > y[r]) {
                j = r;
                break;
            }
        if (j == m)
            break;
        std::size_t k = j + 1;
        while (k < m && !(x[k] < y[k]))
            ++k;
        // p ≻ q guarantees a deficit after every surplus.
        const Rational surplus = x[j] - y[j];
        const Rational deficit = y[k] - x[k];
        const Rational moved = std::min(surplus, deficit);
        Rational t = 1 - moved / (x[j] - x[k]);
        t.canonicalize();
        x[j] -= moved;
        x[k] += moved;
        w.steps.push_back({pi[j], pi[k], t});
    }
    w.permutation.assign(m, 0);
    for (std::size_t r = 0; r < m; ++r)
        w.permutation[tau[r]] = pi[r];
    return w;
}

Dist replay(const BistochasticWitness& w, const Dist& p)
{
    std::vector<Rational> x(p.begin(), p.end());
    for (const auto& s : w.steps) {
        if (s.i >= x.size() || s.j >= x.size() || s.i == s.j)
            throw DomainError("replay: step indices out of range");
        if (sgn(s.t) < 0 || s.t > 1)
            throw DomainError("replay: mixing weight outside [0, 1]");
        const Rational xi = x[s.i], xj = x[s.j];
        x[s.i] = s.t * xi + (1 - s.t) * xj;
        x[s.j] = (1 - s.t) * xi + s.t * xj;
    }
    if (w.permutation.size() != x.size())
        throw DomainError("replay: permutation has wrong length");
    std::vector<Rational> out(x.size());
    std::vector<bool> used(x.size(), false);
    for (std::size_t l = 0; l < x.size(); ++l) {
        const std::size_t src = w.permutation[l];
        if (src >= x.size() || used[src])
            throw DomainError("replay: invalid permutation");
        used[src] = true;
        out[l] = x[src];
    }
    return Dist(std::move(out));
}

Dist pad_zeros(const Dist& p, std::size_t target_dim)
{
    if (target_dim < p.dim())
        throw DomainError("pad_zeros: target dimension " + std::to_string(target_dim) +
                          " is below dim " + std::to_string(p.dim()));
    std::vector<Rational> e(p.begin(), p.end());
    e.resize(target_dim, Rational(0));
    return Dist(std::move(e));
}

std::pair<Dist, Dist> strip_common_zeros(const Dist& p, const Dist& q)
{
    if (p.dim() != q.dim())
        throw DomainError("strip_common_zeros: dimensions differ");
    const std::size_t rp = rank(p), rq = rank(q);
    if (rp > rq)
        throw DomainError("strip_common_zeros: rank(p) = " + std::to_string(rp) + " exceeds rank(q) = " +
                          std::to_string(rq));
    const Dist ps = sort_desc(p), qs = sort_desc(q);
    std::vector<Rational> a(ps.begin(), ps.begin() + static_cast<std::ptrdiff_t>(rq));
    std::vector<Rational> b(qs.begin(), qs.begin() + static_cast<std::ptrdiff_t>(rq));
    return {Dist(std::move(a)), Dist(std::move(b))};
}

} // namespace ctrump
