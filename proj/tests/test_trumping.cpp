#include "common.hpp"

using namespace testing;

namespace {

Dist p_ext()
{
    return flatten(kron(p_ex(), dist({"39/40", "1/40"})));
}

Dist q_ext()
{
    const Rational a(1, 120);
    return flatten(extend(q_ex(), ExtensionParams::explicit_list({a, a, a}, 1)));
}

const GapCheck& check_at(const TrumpingVerdict& v, const Order& o)
{
    for (const auto& c : v.checks)
        if (c.order == o)
            return c;
    throw DomainError("order missing from the checks");
}

} // namespace

TEST_SUITE("trumping")
{
    TEST_CASE("default grid")
    {
        const AlphaGrid g = AlphaGrid::default_grid();
        CHECK_NOTHROW(g.validate());
        CHECK(std::find(g.finite_points.begin(), g.finite_points.end(), 1.0) == g.finite_points.end());
        const auto orders = g.orders();
        CHECK(std::is_sorted(orders.begin(), orders.end(), order_less));
        CHECK(std::count(orders.begin(), orders.end(), Order::burg()) == 1);
        AlphaGrid bad = g;
        bad.finite_points.push_back(0.0);
        CHECK_THROWS_AS(bad.validate(), DomainError);
    }

    TEST_CASE("worked example fails below alpha = 1")
    {
        const auto v = trumps(p_ex(), q_ex());
        CHECK(v.status == TrumpStatus::fails);
        REQUIRE(v.witness_alpha);
        CHECK(v.witness_alpha->sort_key() < 1);
        CHECK(close(check_at(v, Order::minus_infinity()).gap, -log(Real(4)), Real("1e-45")));
        for (const auto& c : v.checks)
            if (c.order.sort_key() >= 1)
                CHECK(c.gap > Real("1e-9"));
    }

    TEST_CASE("extended pair holds")
    {
        const auto v = trumps(p_ext(), q_ext());
        CHECK(v.status == TrumpStatus::holds);
        CHECK(v.min_margin > Real("1e-9"));
        CHECK(check_at(v, Order::burg()).gap > 0);
        CHECK(close(check_at(v, Order::burg()).gap, burg(q_ext()) - burg(p_ext()), Real("1e-40")));
    }

    TEST_CASE("near-equal pair is inconclusive")
    {
        const Dist a = dist({"1/2", "3/10", "1/5"});
        // Every entry moves by about 1e-12, so every gap is positive but tiny.
        const Dist b = dist({"499999999998/1000000000000", "300000000001/1000000000000", "200000000001/1000000000000"});
        const auto v = trumps(a, b);
        CHECK(v.status == TrumpStatus::inconclusive);
        CHECK(v.min_margin > 0);
        // An entry shared by both minima makes the -inf gap exactly zero.
        CHECK(trumps(a, dist({"4999999999/10000000000", "3000000001/10000000000", "1/5"})).status == TrumpStatus::fails);
    }

    TEST_CASE("majorization implies trumping")
    {
        std::mt19937_64 rng(31);
        int seen = 0;
        for (int t = 0; t < 200 && seen < 30; ++t) {
            const std::size_t m = 2 + t % 4;
            const Dist a = random_dist(rng, m, 1, 30), b = random_dist(rng, m, 1, 30);
            if (same_up_to_permutation(a, b) || !majorizes(a, b).holds)
                continue;
            ++seen;
            const auto v = trumps(a, b);
            CHECK(v.status != TrumpStatus::fails);
        }
        CHECK(seen >= 10);
    }

    TEST_CASE("catalysis example trumps")
    {
        const Dist p = dist({"1/2", "1/4", "1/4", "0"});
        const Dist qq = dist({"2/5", "2/5", "1/10", "1/10"});
        CHECK(trumps(p, qq).status == TrumpStatus::holds);
        CHECK(trumps(qq, p).status == TrumpStatus::fails);
    }

    TEST_CASE("preconditions")
    {
        CHECK_THROWS_AS(trumps(Dist::uniform(2), Dist::uniform(3)), DomainError);
        CHECK_THROWS_AS(trumps(p_ex(), dist({"91/100", "1/25", "1/20"})), DomainError);
        CHECK_THROWS_AS(trumps(dist({"1/2", "1/2", "0"}), dist({"1/4", "3/4", "0"})), DomainError);
        // A rank increase is an exact failure at 0+.
        const auto v = trumps(dist({"1/3", "1/3", "1/3"}), dist({"1/2", "1/2", "0"}));
        CHECK(v.status == TrumpStatus::fails);
    }

    TEST_CASE("custom grid")
    {
        const AlphaGrid g = parse_grid("-2,0.5,2,inf");
        CHECK(g.finite_points == std::vector<double>{-2, 0.5, 2});
        CHECK(g.plus_infinity);
        CHECK_FALSE(g.minus_infinity);
        CHECK_FALSE(g.one);
        const AlphaGrid d = parse_grid("default,3.5");
        CHECK(std::find(d.finite_points.begin(), d.finite_points.end(), 3.5) != d.finite_points.end());
        CHECK_THROWS_AS(parse_grid("x"), DomainError);
    }
}
