#include "common.hpp"

using namespace testing;

TEST_SUITE("core")
{
    TEST_CASE("rational parsing")
    {
        CHECK(q("3/6") == Rational(1, 2));
        CHECK(q("0.25") == Rational(1, 4));
        CHECK(q("1e-2") == Rational(1, 100));
        CHECK(q(" 7 ") == Rational(7));
        CHECK(q("-2/4") == Rational(-1, 2));
        CHECK_THROWS_AS(q("1/0"), DomainError);
        CHECK_THROWS_AS(q("abc"), DomainError);
        CHECK_THROWS_AS(q(""), DomainError);
        CHECK(to_string(Rational(3, 4)) == "3/4");
        CHECK(to_string(Rational(2)) == "2");
    }

    TEST_CASE("rationalize")
    {
        CHECK(rationalize(0.5, 1000) == Rational(1, 2));
        CHECK(rationalize(1.0 / 3.0, 1000) == Rational(1, 3));
        const Rational pi = rationalize(3.14159265358979, 1000);
        CHECK(pi == Rational(355, 113));
    }

    TEST_CASE("dist validation")
    {
        CHECK_NOTHROW(p_ex());
        CHECK_THROWS_AS(dist({"1/2", "1/3"}), DomainError);
        CHECK_THROWS_AS(dist({"3/2", "-1/2"}), DomainError);
        CHECK_THROWS_AS(Dist(std::vector<Rational>{}), DomainError);
        CHECK(Dist::uniform(4)[3] == Rational(1, 4));
        CHECK(Dist::pure(3, 1)[1] == 1);
        CHECK(rank(dist({"1/2", "0", "1/2"})) == 2);
        CHECK(is_uniform(Dist::uniform(5)));
        CHECK_FALSE(is_uniform(p_ex()));
        CHECK(is_pure(Dist::pure(4, 2)));
        CHECK(sort_desc(dist({"1/5", "4/5"}))[0] == Rational(4, 5));
        CHECK(same_up_to_permutation(dist({"1/5", "4/5"}), dist({"4/5", "1/5"})));
        CHECK(max_entry(q_ex()) == Rational(17, 20));
        CHECK(min_entry(q_ex()) == Rational(1, 100));
    }

    TEST_CASE("kron and marginals")
    {
        const Dist qb = dist({"39/40", "1/40"});
        const JointDist j = kron(p_ex(), qb);
        CHECK(j.shape() == std::vector<std::size_t>{3, 2});
        const std::size_t idx[] = {0, 0};
        CHECK(j.at(idx) == Rational(3549, 4000));
        CHECK(marginal_dist(j, "A") == p_ex());
        CHECK(marginal_dist(j, "B") == qb);
        const JointDist s = permute_subsystems(j, {1, 0});
        CHECK(s.labels() == std::vector<std::string>{"B", "A"});
        CHECK(marginal_dist(s, "A") == p_ex());
        const JointDist k = kron(j, JointDist::from_dist(Dist::uniform(2), "C"));
        const JointDist merged = merge_subsystems(k, 1, 2, "BC");
        CHECK(merged.shape() == std::vector<std::size_t>{3, 4});
        CHECK(flatten(merged) == flatten(k));
        CHECK(marginal_dist(merged, "A") == p_ex());
        CHECK_THROWS_AS(kron(j, j), DomainError);
        CHECK_THROWS_AS(marginal_dist(j, "Z"), DomainError);
    }

    TEST_CASE("spectrum matches explicit distributions")
    {
        std::mt19937_64 rng(7);
        for (int t = 0; t < 50; ++t) {
            const Dist a = random_dist(rng, 1 + t % 4, 0, 5 + t);
            const Dist b = random_dist(rng, 1 + (t / 4) % 4, 0, 9);
            const Spectrum sa = Spectrum::of(a), sb = Spectrum::of(b);
            CHECK(sa.expand() == sort_desc(a));
            CHECK(sa.rank() == rank(a));
            CHECK(Spectrum::of(kron(a, b)) == kron(sa, sb));
        }
        const Spectrum s = Spectrum::from_levels({{Rational(1, 4), 2}, {Rational(1, 2), 1}}, 3);
        CHECK(s.dim() == 6);
        CHECK(s.rank() == 3);
        CHECK(s.max() == Rational(1, 2));
        CHECK(s.min_positive() == Rational(1, 4));
        CHECK(s.padded(2).zeros() == 5);
        CHECK_THROWS_AS(Spectrum::from_levels({{Rational(1, 3), 2}}), DomainError);
    }

    TEST_CASE("json input")
    {
        CHECK(parse_dist(Json::parse(R"({"p": ["1/2", "1/2"]})")) == Dist::uniform(2));
        CHECK(parse_dist(Json::parse(R"(["1/4", "3/4"])")) == dist({"1/4", "3/4"}));
        CHECK(parse_dist(Json::parse(R"([1, 0])")) == Dist::pure(2));
        CHECK_THROWS_AS(parse_dist(Json::parse(R"([0.5, 0.5])")), DomainError);
        CHECK(parse_dist(Json::parse(R"([0.5, 0.5])"), ParseOptions{true}) == Dist::uniform(2));
        CHECK(parse_dist(Json::parse(R"([0.1, 0.9])"), ParseOptions{true}) == dist({"1/10", "9/10"}));
        const Json t = Json::parse(R"({"labels": ["A", "B"], "tensor": [["1/4", "1/4"], ["1/2", "0"]]})");
        const JointDist j = parse_joint(t);
        CHECK(j.shape() == std::vector<std::size_t>{2, 2});
        CHECK(parse_dist(t) == dist({"1/4", "1/4", "1/2", "0"}));
        CHECK_THROWS_AS(parse_dist(Json::parse(R"(["1/2", "1/3"])")), DomainError);
        CHECK_THROWS_AS(parse_dist(Json::parse(R"({"p": [], "q": []})")), DomainError);
        const Json out = to_json(dist({"1/4", "3/4"}));
        CHECK(parse_dist(out) == dist({"1/4", "3/4"}));
    }
}
