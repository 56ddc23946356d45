#include "common.hpp"

using namespace testing;

namespace {

ConstructionOptions quick_options(std::uint64_t seed = 0)
{
    ConstructionOptions o;
    o.catalyst.budget = 40000;
    o.catalyst.seed = seed;
    return o;
}

} // namespace

TEST_SUITE("ctrump")
{
    TEST_CASE("decision rule")
    {
        const auto holds = decide_ctrump(p_ex(), q_ex());
        CHECK(holds.decision == CTrumpDecision::holds);
        CHECK(holds.rank_p == 3);
        CHECK(close(holds.entropy_gap, r("0.0950842268339289882820493652150900612383654193355"), Real("1e-40")));
        CHECK(decide_ctrump(q_ex(), p_ex()).decision == CTrumpDecision::fails);
        CHECK(decide_ctrump(Dist::uniform(3), dist({"1/2", "1/2", "0"})).decision == CTrumpDecision::fails);
        CHECK(decide_ctrump(p_ex(), dist({"1/20", "91/100", "1/25"})).decision == CTrumpDecision::holds);
        CHECK(decide_ctrump(p_ex(), dist({"1/20", "91/100", "1/25"})).identical);
        // Equal Shannon entropy without being a permutation.
        const Dist a = dist({"1/2", "1/4", "1/4", "0"});
        const Dist b = dist({"1/2", "1/2", "0", "0"});
        const Dist c = dist({"1/4", "1/4", "1/4", "1/4"});
        CHECK(decide_ctrump(flatten(kron(a, Dist::uniform(1))), flatten(kron(a, Dist::uniform(1)))).identical);
        const Dist x = flatten(kron(b, c));
        const Dist y = flatten(kron(a, a));
        CHECK(decide_ctrump(x, y).decision == CTrumpDecision::boundary);
        CHECK_THROWS_AS(decide_ctrump(Dist::uniform(2), Dist::uniform(3)), DomainError);
    }

    TEST_CASE("staged extension is consistent with its materialization")
    {
        const StagedExtension s{q_ex(), Rational(1, 200), 2, Rational(1, 100), 3, dist({"2/3", "1/3"})};
        const JointDist t = s.materialize();
        CHECK(t.labels() == std::vector<std::string>{"E", "B", "CD"});
        CHECK(t.size() == s.size());
        CHECK(Spectrum::of(t) == s.spectrum());
        for (const char* label : {"E", "B", "CD"})
            CHECK(marginal_dist(t, label) == s.marginal(label));
        CHECK(s.marginal("E") == q_ex());
        CHECK_THROWS_AS(s.marginal("X"), DomainError);
        CHECK_THROWS_AS(s.materialize(4), DomainError);
    }

    TEST_CASE("trivial constructions")
    {
        const CTrumpWitness same = build_ctrump_witness(p_ex(), dist({"1/25", "1/20", "91/100"}), quick_options());
        CHECK(same.k == 0);
        CHECK(same.verified);
        const CTrumpWitness to_uniform = build_ctrump_witness(p_ex(), Dist::uniform(3), quick_options());
        CHECK(to_uniform.k == 0);
        CHECK(to_uniform.verified);
        CHECK_THROWS_AS(build_ctrump_witness(q_ex(), p_ex(), quick_options()), DomainError);
    }

    TEST_CASE("constructions verify exactly on explicit tensors")
    {
        const std::vector<std::pair<Dist, Dist>> pairs = {
            {dist({"3/4", "1/4"}), dist({"3/5", "2/5"})},
            {dist({"1/2", "1/3", "1/6"}), dist({"2/5", "7/20", "1/4"})},
            {dist({"1/2", "1/2", "0"}), dist({"1/2", "3/10", "1/5"})},
        };
        for (const auto& [p, qq] : pairs) {
            const CTrumpWitness w = build_ctrump_witness(p, qq, quick_options());
            REQUIRE(w.verified);
            CHECK(w.marginals_consistent);
            CHECK(w.entropy_chain_ok);
            CHECK(check_ctrump_witness(w).holds);
            if (w.k == 0)
                continue;
            REQUIRE(w.joint);
            if (w.joint->size() > 4096)
                continue;
            // p ⊗ r_E ⊗ r_B ⊗ r_CD ≻ q ⊗ r_EBCD on the expanded vectors.
            const JointDist t = w.joint->materialize();
            Dist left = p;
            for (const auto& m : w.r_marginals)
                left = flatten(kron(left, m));
            const Dist right = flatten(kron(JointDist::from_dist(qq, "S"), t));
            CHECK(majorizes(left, right).holds);
            const Dist stripped = strip_common_zeros(p, qq).second;
            CHECK(marginal_dist(t, "E") == stripped);
        }
    }

    TEST_CASE("catalyst search")
    {
        const Dist p = dist({"1/2", "1/4", "1/4", "0"});
        const Dist qq = dist({"2/5", "2/5", "1/10", "1/10"});
        const auto c = search_catalyst(p, qq, 4, 100000, 3);
        REQUIRE(c);
        CHECK(majorizes(flatten(kron(p, *c)), flatten(kron(qq, *c))).holds);
        CHECK(majorization_violation(Spectrum::of(p), Spectrum::of(qq)) > 0);
        CHECK(majorization_violation(Spectrum::of(qq), Spectrum::of(Dist::uniform(4))) <= 0);
        // Majorized pairs take the trivial catalyst.
        const auto t = search_catalyst(Dist::pure(2), Dist::uniform(2), 4, 100, 0);
        REQUIRE(t);
        CHECK(t->dim() == 1);
        // Not trumped: nothing can be found.
        CHECK_FALSE(search_catalyst(qq, p, 3, 2000, 0));
    }

    TEST_CASE("catalyst search is deterministic for a seed")
    {
        const Dist p = dist({"1/2", "1/4", "1/4", "0"});
        const Dist qq = dist({"2/5", "2/5", "1/10", "1/10"});
        CHECK(search_catalyst(p, qq, 4, 20000, 9) == search_catalyst(p, qq, 4, 20000, 9));
    }

    TEST_CASE("lambda brute force")
    {
        CHECK(lambda_max(Dist::pure(2), Dist::uniform(2), 4) == 1);
        CHECK(lambda_max(Dist::uniform(2), Dist::pure(2), 4) == -1);
        CHECK(lambda_transition_holds(Dist::pure(2), Dist::uniform(2), 1, 0, 1));
        CHECK_FALSE(lambda_transition_holds(Dist::uniform(2), Dist::pure(2), 0, 0, 1));
        CHECK(lambda_max(p_ex(), p_ex(), 3) == 0);
        CHECK(lambda_max(Dist::uniform(4), Dist::pure(4), 4) == -2);
        CHECK_FALSE(lambda_max(Dist::uniform(4), Dist::pure(4), 1));
    }

    TEST_CASE("pruning")
    {
        const auto kept = prune_useless({Dist::uniform(3), Dist::pure(2), p_ex()});
        REQUIRE(kept.size() == 1);
        CHECK(kept[0] == p_ex());
    }
}

TEST_SUITE("certificate")
{
    TEST_CASE("majorization certificates replay")
    {
        RunConfig config;
        const Dist p = dist({"1/2", "1/3", "1/6"}), qq = dist({"2/5", "7/20", "1/4"});
        const Json cert = majorization_certificate(p, qq, majorizes(p, qq), witness(p, qq), config);
        CHECK(cert["relation"] == "majorization");
        CHECK(cert["verdict"] == "holds");
        CHECK(verify_certificate(cert).ok);
        Json bad = cert;
        bad["witness"]["steps"][0]["t"] = "1/7";
        CHECK_FALSE(verify_certificate(bad).ok);

        const Json fail = majorization_certificate(p_ex(), q_ex(), majorizes(p_ex(), q_ex()), std::nullopt, config);
        CHECK(fail["failing_k"] == 2);
        CHECK(fail["checks"][1]["p"] == "24/25");
        CHECK(fail["checks"][1]["q"] == "99/100");
        CHECK(verify_certificate(fail).ok);
        Json wrong = fail;
        wrong["verdict"] = "holds";
        CHECK_FALSE(verify_certificate(wrong).ok);
    }

    TEST_CASE("trumping certificates replay")
    {
        RunConfig config;
        const Json cert = trumping_certificate(p_ex(), q_ex(), trumps(p_ex(), q_ex()), config);
        CHECK(cert["verdict"] == "fails");
        CHECK(cert["witness"]["alpha"] == "-inf");
        CHECK(verify_certificate(cert).ok);
        Json tampered = cert;
        tampered["checks"][0]["gap"] = "0.5";
        CHECK_FALSE(verify_certificate(tampered).ok);
    }

    TEST_CASE("c-trumping certificates replay")
    {
        RunConfig config;
        const Dist p = dist({"1/2", "1/3", "1/6"}), qq = dist({"2/5", "7/20", "1/4"});
        const CTrumpWitness w = build_ctrump_witness(p, qq, quick_options());
        const Json cert = ctrumping_certificate(p, qq, decide_ctrump(p, qq), "verified", &w, "", config);
        CHECK(cert["verdict"] == "holds");
        CHECK(verify_certificate(cert).ok);
        CHECK(cert.dump() ==
              ctrumping_certificate(p, qq, decide_ctrump(p, qq), "verified", &w, "", config).dump());
    }

    TEST_CASE("lambda certificates replay")
    {
        RunConfig config;
        const auto best = lambda_max_transition(Dist::pure(2), Dist::uniform(2), 4);
        const Json cert = lambda_certificate(Dist::pure(2), Dist::uniform(2), best, 4, config);
        CHECK(cert["witness"]["lambda"] == 1);
        CHECK(verify_certificate(cert).ok);
    }

    TEST_CASE("unknown relation")
    {
        Json j = {{"relation", "other"}, {"inputs", {{"p", {"1"}}, {"q", {"1"}}}}};
        CHECK_THROWS_AS(verify_certificate(j), DomainError);
    }
}
