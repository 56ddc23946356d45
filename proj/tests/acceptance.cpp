#define DOCTEST_CONFIG_DISABLE
#include "common.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

using namespace testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            if (pass)
                detail << "first unmet requirement: " << what << "; ";
            pass = false;
        }
    }
};

const GapCheck* find_check(const TrumpingVerdict& v, const Order& o)
{
    for (const auto& c : v.checks)
        if (c.order == o)
            return &c;
    return nullptr;
}

// Random bistochastic matrix as a convex combination of permutations,
// applied to p exactly.
Dist bistochastic_image(std::mt19937_64& rng, const Dist& p)
{
    const std::size_t m = p.dim();
    std::vector<std::size_t> perm(m);
    std::vector<Rational> out(m, Rational(0));
    std::uniform_int_distribution<int> w(1, 9);
    std::vector<int> weights(3);
    int total = 0;
    for (auto& x : weights)
        total += x = w(rng);
    for (int x : weights) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t i = 0; i < m; ++i)
            out[i] += frac(x, total) * p[perm[i]];
    }
    return Dist(std::move(out));
}

std::vector<std::uint64_t> doubling_ns(std::uint64_t hi)
{
    std::vector<std::uint64_t> n;
    for (std::uint64_t k = 1; k <= hi; k *= 2)
        n.push_back(k);
    return n;
}

// 1. Exact majorization of the worked example.
void criterion1(Outcome& o)
{
    const Dist p = p_ex(), qq = q_ex();
    MajorizationVerdict v;
    double best = 1e9;
    for (int i = 0; i < 5; ++i) {
        const auto t0 = Clock::now();
        v = majorizes(p, qq);
        best = std::min(best, seconds_since(t0));
    }
    o.require(!v.holds, "verdict should be fails");
    o.require(v.failing_k && *v.failing_k == 2, "failing_k should be 2");
    o.require(v.partial_p.size() > 1 && v.partial_p[1] == Rational(24, 25), "prefix of p at k=2 is 24/25");
    o.require(v.partial_q.size() > 1 && v.partial_q[1] == Rational(99, 100), "prefix of q at k=2 is 99/100");
    o.require(best < 1e-3, "runtime below 1 ms");
    o.detail << "failing_k=" << (v.failing_k ? *v.failing_k : 0) << ", 24/25 < 99/100, " << best * 1e6 << " us";
}

// 2. Trumping of the worked example fails below alpha = 1 only.
void criterion2(Outcome& o)
{
    const auto v = trumps(p_ex(), q_ex());
    o.require(v.status == TrumpStatus::fails, "status should be fails");
    bool below = false;
    for (const auto& c : v.checks) {
        if (c.order.kind() == Order::Kind::burg || c.order.kind() == Order::Kind::zero_plus)
            continue;
        if (c.order.sort_key() < 1 && c.gap <= 0)
            below = true;
        if (c.order.sort_key() >= 1)
            o.require(c.gap > Real("1e-9"), "gap at " + c.order.label() + " should exceed 1e-9");
    }
    o.require(below, "some alpha < 1 with nonpositive gap");
    const GapCheck* mi = find_check(v, Order::minus_infinity());
    o.require(mi && abs(mi->gap + log(Real(4))) < Real("1e-48"), "-inf gap equals -log 4 to 50 digits");
    o.detail << "witness alpha " << (v.witness_alpha ? v.witness_alpha->label() : "none") << ", -inf gap "
             << (mi ? to_string(mi->gap, 30) : "missing");
}

// 3. The extended pair trumps on the default grid.
void criterion3(Outcome& o)
{
    const auto t0 = Clock::now();
    const Rational a(1, 120);
    const Dist src = flatten(kron(p_ex(), dist({"39/40", "1/40"})));
    const Dist tgt = flatten(extend(q_ex(), ExtensionParams::explicit_list({a, a, a}, 1)));
    const auto v = trumps(src, tgt);
    const double dt = seconds_since(t0);
    o.require(v.status == TrumpStatus::holds, "status should be holds");
    o.require(v.min_margin > Real("1e-9"), "min margin above 1e-9");
    const GapCheck* b = find_check(v, Order::burg());
    o.require(b && b->gap > Real("1e-9"), "Burg gap positive");
    o.require(dt < 5, "runtime below 5 s");
    o.detail << "min margin " << to_string(v.min_margin, 6) << " at "
             << (v.min_margin_order ? v.min_margin_order->label() : "?") << ", Burg gap "
             << (b ? to_string(b->gap, 6) : "missing") << ", " << dt << " s";
}

// 4. End-to-end constructions on random pairs, and decision correctness.
void criterion4(Outcome& o)
{
    std::mt19937_64 rng(2024);
    int verified = 0, pairs = 0, decisions_ok = 0, decisions = 0;
    double worst = 0;
    while (pairs < 20) {
        const std::size_t m = 2 + pairs % 3;
        const Dist p = random_dist(rng, m, 1, 30), qq = random_dist(rng, m, 1, 30);
        if (!(shannon(p) < shannon(qq) - Real("0.05")))
            continue;
        ++pairs;
        ++decisions;
        decisions_ok += decide_ctrump(p, qq).decision == CTrumpDecision::holds;
        ConstructionOptions options;
        options.catalyst.seed = static_cast<std::uint64_t>(pairs);
        const auto t0 = Clock::now();
        try {
            const CTrumpWitness w = build_ctrump_witness(p, qq, options);
            const double dt = seconds_since(t0);
            worst = std::max(worst, dt);
            o.require(w.marginals_consistent, "marginal consistency for pair " + std::to_string(pairs));
            if (w.verified) {
                o.require(check_ctrump_witness(w).holds, "exact final check for pair " + std::to_string(pairs));
                if (dt <= 60)
                    ++verified;
            }
        } catch (const Error& e) {
            o.detail << "pair " << pairs << " threw: " << e.what() << "; ";
        }
    }
    // Pairs that must fail: a rank increase or an entropy decrease.
    int bad = 0;
    while (bad < 20) {
        const std::size_t m = 2 + bad % 3;
        Dist p = random_dist(rng, m, 1, 30);
        Dist qq = random_dist(rng, m, bad % 2 ? 1 : 0, 30);
        if (bad % 2 == 0 && !(rank(p) > rank(qq)))
            continue;
        if (bad % 2 == 1 && !(shannon(p) > shannon(qq)))
            continue;
        ++bad;
        ++decisions;
        decisions_ok += decide_ctrump(p, qq).decision == CTrumpDecision::fails;
    }
    o.require(verified >= 15, "at least 15 of 20 verified");
    o.require(decisions_ok == decisions, "every decision correct");
    o.detail << verified << "/20 verified, " << decisions_ok << "/" << decisions
             << " decisions correct, slowest pair " << worst << " s";
}

// 5. Monotonicity in n of both extension families.
void criterion5(Outcome& o)
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(55);
    const Real slack("1e-15");
    const auto ns = doubling_ns(1024);
    const auto orders = AlphaGrid::default_grid().orders();
    std::uniform_int_distribution<int> u(1, 7);
    int instances = 0;
    while (instances < 100) {
        const std::size_t m = 2 + instances % 3;
        const Dist p = random_dist(rng, m, 1, 30), qq = random_dist(rng, m, 1, 30);
        if (is_uniform(qq))
            continue;
        ++instances;
        const Spectrum sp = Spectrum::of(p), sq = Spectrum::of(qq);
        const Rational delta = min_entry(qq) * frac(u(rng), 8);
        const Rational a = min_entry(qq) * static_cast<long>(m) * frac(u(rng), 8);
        for (const auto& ord : orders) {
            const bool upper = ord.kind() == Order::Kind::plus_infinity || (ord.is_finite() && ord.alpha() > 1);
            if (upper) {
                Real prev = delta_lemma2(sp, sq, delta, Real(1), ord);
                for (std::size_t i = 1; i < ns.size(); ++i) {
                    const Real v = delta_lemma2(sp, sq, delta, Real(ns[i]), ord);
                    if (ord.is_finite())
                        o.require(v >= prev - slack, "delta family non-decreasing at " + ord.label());
                    prev = v;
                }
            }
            if (ord.kind() == Order::Kind::burg || ord.kind() == Order::Kind::zero_plus)
                continue;
            std::vector<Real> vals;
            for (auto n : ns)
                vals.push_back(delta_tilde(sp, sq, a, Real(n), ord));
            for (std::size_t i = 1; i < vals.size(); ++i) {
                switch (ord.kind()) {
                case Order::Kind::one:
                    o.require(abs(vals[i] - vals[0]) <= slack, "constant at alpha = 1");
                    break;
                case Order::Kind::finite:
                    if (ord.alpha() < 1)
                        o.require(vals[i] >= vals[i - 1] - slack, "increasing at " + ord.label());
                    else
                        o.require(vals[i] <= vals[i - 1] + slack, "decreasing at " + ord.label());
                    break;
                default:
                    break;
                }
            }
            if (!ord.is_finite() && ord.kind() != Order::Kind::one) {
                // Eventually constant: the last doublings agree.
                o.require(abs(vals.back() - vals[vals.size() - 2]) <= slack, "eventually constant at " + ord.label());
            }
        }
    }
    const double dt = seconds_since(t0);
    o.require(dt < 60, "runtime below 60 s");
    o.detail << instances << " instances, " << orders.size() << " orders, n = 1..1024, " << dt << " s";
}

// 6. Large-n limits at n = 10^6 and the Burg limit at alpha = ±1e-7.
void criterion6(Outcome& o)
{
    std::mt19937_64 rng(66);
    const Real tol("1e-4");
    const Real big(1000000);
    std::map<std::string, double> worst2, worst3;
    double worst_burg = 0;
    std::uniform_int_distribution<int> u(1, 3);
    const auto orders = AlphaGrid::default_grid().orders();
    int instances = 0;
    while (instances < 50) {
        const std::size_t m = 2 + instances % 3;
        const Dist p = random_dist(rng, m, 1, 20), qq = random_dist(rng, m, 1, 20);
        if (is_uniform(qq))
            continue;
        ++instances;
        const Spectrum sp = Spectrum::of(p), sq = Spectrum::of(qq);
        const Rational delta = min_entry(qq) * frac(u(rng), 4);
        const Rational a = min_entry(qq) * static_cast<long>(m) * frac(u(rng), 4);
        const Real logm = log(Real(static_cast<unsigned long>(m)));
        Real scaled = 0;
        for (std::size_t i = 0; i < m; ++i)
            scaled += log_of(p[i]);
        scaled /= Real(static_cast<unsigned long>(m));
        const Real burg_target = scaled + logm;
        const Real e = Real("1e-7");
        const Real up = (1 - e) / e * (renyi(p, Order::finite(1e-7)) - logm);
        const Real down = (1 + e) / -e * (-renyi(p, Order::finite(-1e-7)) - logm);
        worst_burg = std::max({worst_burg, to_double(abs(up - burg_target)), to_double(abs(down - burg_target))});
        for (const auto& ord : orders) {
            if (ord.kind() == Order::Kind::burg || ord.kind() == Order::Kind::zero_plus)
                continue;
            const bool upper = ord.kind() == Order::Kind::plus_infinity || (ord.is_finite() && ord.alpha() > 1);
            if (upper) {
                // Closed form written out: log m - H_α(p).
                const Real limit = logm - renyi(sp, ord);
                const double err = to_double(abs(delta_lemma2(sp, sq, delta, big, ord) - limit));
                worst2[ord.label()] = std::max(worst2[ord.label()], err);
            }
            Real limit;
            if (ord.kind() == Order::Kind::minus_infinity || (ord.is_finite() && ord.alpha() < 0)) {
                limit = -logm - renyi(sp, ord);
            } else if (ord.is_finite() && ord.alpha() < 1) {
                limit = logm - renyi(sp, ord);
            } else if (ord.kind() == Order::Kind::one) {
                limit = delta_tilde(sp, sq, a, Real(1), ord);
            } else {
                std::vector<Rational> r;
                const Rational share = a / static_cast<long>(m);
                for (std::size_t i = 0; i < m; ++i)
                    r.push_back((qq[i] - share) / (1 - a));
                limit = renyi(Dist(r), ord) - renyi(sp, ord);
            }
            const double err = to_double(abs(delta_tilde(sp, sq, a, big, ord) - limit));
            worst3[ord.label()] = std::max(worst3[ord.label()], err);
        }
    }
    auto summarize = [&](const char* name, const std::map<std::string, double>& w) {
        int bad = 0;
        double mx = 0, lo = 0, hi = 0;
        std::string where;
        for (const auto& [label, err] : w) {
            if (err > 1e-4) {
                const double alpha = Order::parse(label).sort_key();
                lo = bad == 0 ? alpha : std::min(lo, alpha);
                hi = bad == 0 ? alpha : std::max(hi, alpha);
                ++bad;
            }
            if (err > mx) {
                mx = err;
                where = label;
            }
        }
        o.require(bad == 0, std::string(name) + " within 1e-4 at every order");
        o.detail << name << ": " << bad << "/" << w.size() << " orders above 1e-4";
        if (bad)
            o.detail << std::setprecision(8) << ", all with alpha in [" << lo << ", " << hi << "], worst " << mx << " at alpha " << where;
        o.detail << std::setprecision(6) << "; ";
    };
    summarize("delta family", worst2);
    summarize("uniform-a family", worst3);
    o.require(worst_burg <= 1e-4, "Burg limit within 1e-4");
    o.detail << "Burg limit worst " << worst_burg << ", " << instances << " instances";
}

// 7. Entropy properties.
void criterion7(Outcome& o)
{
    std::mt19937_64 rng(77);
    const Real tol("1e-12");
    const std::vector<Order> all = {Order::minus_infinity(), Order::finite(-2), Order::finite(-0.5),
                                    Order::zero_plus(),      Order::finite(0.5), Order::one(),
                                    Order::finite(2),        Order::plus_infinity(), Order::burg()};
    for (int t = 0; t < 50; ++t) {
        const Dist a = random_dist(rng, 2 + t % 3), b = random_dist(rng, 1 + t % 4);
        const Spectrum ab = kron(Spectrum::of(a), Spectrum::of(b));
        for (const auto& ord : all)
            o.require(abs(renyi(ab, ord) - renyi(a, ord) - renyi(b, ord)) <= tol, "additivity at " + ord.label());
    }
    // Range bounds, with the extreme value exactly at the uniform distribution.
    for (int t = 0; t < 50; ++t) {
        const std::size_t m = 2 + t % 4;
        const Dist p = random_dist(rng, m);
        const Real logm = log(Real(static_cast<unsigned long>(m)));
        for (const auto& ord : all) {
            if (ord.kind() == Order::Kind::zero_plus)
                continue;
            const bool negative = ord.kind() == Order::Kind::minus_infinity || ord.kind() == Order::Kind::burg ||
                                  (ord.is_finite() && ord.alpha() < 0);
            const Real h = renyi(p, ord);
            const Real top = negative ? -logm : logm;
            const Real hu = renyi(Dist::uniform(m), ord);
            o.require(abs(hu - top) <= Real("1e-40"), "uniform attains the bound at " + ord.label());
            if (is_uniform(p))
                continue;
            o.require(h < top, "non-uniform strictly below the bound at " + ord.label());
            if (!negative)
                o.require(h >= 0, "non-negative at " + ord.label());
        }
    }
    // Schur concavity.
    const std::vector<Order> schur = {Order::zero_plus(), Order::finite(0.5), Order::one(), Order::finite(2),
                                      Order::plus_infinity()};
    for (int t = 0; t < 100; ++t) {
        const Dist p = random_dist(rng, 2 + t % 4, 0, 20);
        const Dist image = bistochastic_image(rng, p);
        o.require(majorizes(p, image).holds, "bistochastic image is majorized");
        for (const auto& ord : schur)
            o.require(renyi(image, ord) >= renyi(p, ord) - tol, "Schur concavity at " + ord.label());
    }
    // Symmetry, subadditivity and additivity for Shannon on random joints.
    for (int t = 0; t < 50; ++t) {
        const std::size_t ma = 2 + t % 3, mb = 2 + (t / 3) % 3;
        const Dist flat = random_dist(rng, ma * mb);
        const JointDist j(std::vector<Rational>(flat.begin(), flat.end()), {ma, mb}, {"A", "B"});
        const Dist pa = marginal_dist(j, "A"), pb = marginal_dist(j, "B");
        std::vector<Rational> shuffled(flat.begin(), flat.end());
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        o.require(abs(shannon(Dist(shuffled)) - shannon(flat)) <= tol, "symmetry");
        o.require(shannon(flat) <= shannon(pa) + shannon(pb) + tol, "subadditivity");
        o.require(abs(shannon(flatten(kron(pa, pb))) - shannon(pa) - shannon(pb)) <= tol, "additivity");
    }
    o.detail << "additivity, range bounds, Schur concavity (100 maps), symmetry/subadditivity/additivity";
}

// 8. Closed-form gaps against materialized extensions.
void criterion8(Outcome& o)
{
    PrecisionScope scope(50);
    std::mt19937_64 rng(88);
    const Real tol("1e-20");
    double worst = 0;
    const auto orders = AlphaGrid::default_grid().orders();
    for (int t = 0; t < 50; ++t) {
        const std::size_t m = 2 + t % 3;
        const Dist p = random_dist(rng, m, 1, 12), qq = random_dist(rng, m, 1, 12);
        if (is_uniform(qq)) {
            --t;
            continue;
        }
        const std::uint64_t n = 1 + t % 8;
        const Rational delta = min_entry(qq) * frac(1 + t % 3, 4);
        const Rational a = min_entry(qq) * static_cast<long>(m) * frac(1 + t % 3, 4);
        const JointDist e2 = extend(qq, ExtensionParams::per_entry_delta(qq, delta, n));
        const JointDist e3 = extend(qq, ExtensionParams::uniform_a(qq, a, n));
        const Dist b2 = marginal_dist(e2, "B"), b3 = marginal_dist(e3, "B");
        for (const auto& ord : orders) {
            if (ord.kind() == Order::Kind::burg) {
                const Real direct = direct_renyi(e3.tensor(), ord) - direct_renyi(flatten(kron(p, b3)).entries(), ord);
                const Real err = abs(delta_bar(p, qq, a, Real(n), ord) - direct);
                worst = std::max(worst, to_double(err));
                o.require(err <= tol, "Burg gap");
                continue;
            }
            const bool upper = ord.kind() == Order::Kind::one || ord.kind() == Order::Kind::plus_infinity ||
                               (ord.is_finite() && ord.alpha() > 1);
            if (upper) {
                const Real direct = direct_renyi(e2.tensor(), ord) - direct_renyi(b2.entries(), ord) -
                                    direct_renyi(p.entries(), ord);
                const Real err = abs(delta_lemma2(p, qq, delta, Real(n), ord) - direct);
                worst = std::max(worst, to_double(err));
                o.require(err <= tol, "delta family at " + ord.label());
            }
            if (ord.kind() == Order::Kind::zero_plus)
                continue;
            const Real direct = direct_renyi(e3.tensor(), ord) - direct_renyi(b3.entries(), ord) -
                                direct_renyi(p.entries(), ord);
            const Real err = abs(delta_tilde(p, qq, a, Real(n), ord) - direct);
            worst = std::max(worst, to_double(err));
            o.require(err <= tol, "uniform-a family at " + ord.label());
        }
    }
    o.detail << "50 instances, worst deviation " << worst;
}

// 9. Lambda brute force.
void criterion9(Outcome& o)
{
    const auto up = lambda_max(Dist::pure(2), Dist::uniform(2), 4);
    const auto down = lambda_max(Dist::uniform(2), Dist::pure(2), 4);
    o.require(up && *up == 1, "lambda((1,0) -> eta_2) = 1");
    o.require(down && *down == -1, "lambda(eta_2 -> (1,0)) = -1");
    o.detail << "lambda = " << (up ? std::to_string(*up) : "none") << " and "
             << (down ? std::to_string(*down) : "none");
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::function<void(Outcome&)>> criteria = {criterion1, criterion2, criterion3,
                                                                 criterion4, criterion5, criterion6,
                                                                 criterion7, criterion8, criterion9};
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.push_back(std::atoi(argv[i]));
    if (selected.empty())
        for (int i = 1; i <= 9; ++i)
            selected.push_back(i);
    int failures = 0;
    for (int c : selected) {
        if (c < 1 || c > 9) {
            std::cerr << "unknown criterion " << c << '\n';
            return 2;
        }
        PrecisionScope scope(kDefaultDigits);
        Outcome o;
        const auto t0 = Clock::now();
        try {
            criteria[c - 1](o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        std::printf("criterion %d: %s (%.2f s) %s\n", c, o.pass ? "PASS" : "FAIL", seconds_since(t0),
                    o.detail.str().c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
