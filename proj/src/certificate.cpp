#include "ctrump/certificate.hpp"

#include "ctrump/extension.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#ifndef CTRUMP_VERSION
#define CTRUMP_VERSION "0.0.0"
#endif

namespace ctrump {

const char* tool_version()
{
    return "ctrump " CTRUMP_VERSION;
}

std::string real_text(const Real& x)
{
    return to_string(x, 30);
}

AlphaGrid parse_grid(const std::string& spec)
{
    if (spec.empty() || spec == "default")
        return AlphaGrid::default_grid();
    std::vector<std::string> items;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty())
            items.push_back(item);
    AlphaGrid g;
    bool extend = !items.empty() && items.front() == "default";
    if (extend) {
        g = AlphaGrid::default_grid();
        items.erase(items.begin());
    } else {
        g.plus_infinity = g.minus_infinity = g.one = g.zero_plus = false;
    }
    for (const auto& item : items) {
        const Order o = Order::parse(item);
        switch (o.kind()) {
        case Order::Kind::finite:
            g.finite_points.push_back(o.alpha());
            break;
        case Order::Kind::plus_infinity:
            g.plus_infinity = true;
            break;
        case Order::Kind::minus_infinity:
            g.minus_infinity = true;
            break;
        case Order::Kind::one:
            g.one = true;
            break;
        case Order::Kind::zero_plus:
            g.zero_plus = true;
            break;
        case Order::Kind::burg:
            break;
        }
    }
    std::sort(g.finite_points.begin(), g.finite_points.end());
    g.finite_points.erase(std::unique(g.finite_points.begin(), g.finite_points.end()), g.finite_points.end());
    g.validate();
    return g;
}

Json config_json(const RunConfig& c)
{
    Json j;
    j["precision_digits"] = c.precision;
    j["grid"] = c.grid_spec;
    j["grid_points"] = c.grid.orders().size();
    j["tol"] = c.tol;
    j["refine_depth"] = c.grid.refine_depth;
    j["budget"] = c.budget;
    j["seed"] = c.seed;
    j["n_max"] = c.n_max;
    j["pad"] = c.pad;
    return j;
}

namespace {

Json base_certificate(const char* relation, const std::string& verdict, const Dist& p, const Dist& q)
{
    Json j;
    j["relation"] = relation;
    j["verdict"] = verdict;
    j["inputs"] = {{"p", to_json(p)}, {"q", to_json(q)}};
    j["witness"] = nullptr;
    j["checks"] = Json::array();
    return j;
}

void finish(Json& j, const RunConfig& config)
{
    j["config"] = config_json(config);
    j["tool_version"] = tool_version();
}

Json to_json(const MajorizationVerdict& v, bool with_sums)
{
    Json j;
    j["holds"] = v.holds;
    j["failing_k"] = v.failing_k ? Json(*v.failing_k) : Json(nullptr);
    j["breakpoints"] = v.prefix_lengths.size();
    if (!v.partial_p.empty()) {
        Rational slack = v.partial_p[0] - v.partial_q[0];
        for (std::size_t i = 0; i < v.partial_p.size(); ++i)
            slack = std::min(slack, Rational(v.partial_p[i] - v.partial_q[i]));
        j["min_slack"] = to_string(slack);
    }
    if (with_sums) {
        Json sums = Json::array();
        for (std::size_t i = 0; i < v.prefix_lengths.size(); ++i)
            sums.push_back({{"k", v.prefix_lengths[i]},
                            {"p", to_string(v.partial_p[i])},
                            {"q", to_string(v.partial_q[i])},
                            {"ok", v.partial_p[i] >= v.partial_q[i]}});
        j["partial_sums"] = std::move(sums);
    }
    return j;
}

Json to_json(const BistochasticWitness& w)
{
    Json steps = Json::array();
    for (const auto& s : w.steps)
        steps.push_back({{"i", s.i}, {"j", s.j}, {"t", to_string(s.t)}});
    return {{"steps", std::move(steps)}, {"permutation", w.permutation}};
}

Json to_json(const std::vector<GapCheck>& checks)
{
    Json a = Json::array();
    for (const auto& c : checks)
        a.push_back({{"order", c.order.label()}, {"gap", real_text(c.gap)}});
    return a;
}

Json to_json(const DeltaSearch& s)
{
    return {{"delta", to_string(s.delta)}, {"n", s.n}, {"epsilon", s.epsilon}, {"checks", to_json(s.checks)}};
}

Json to_json(const ASearch& s)
{
    Json j;
    j["a"] = to_string(s.a);
    j["n"] = s.n;
    j["j"] = s.j;
    j["n_a_prime"] = s.n_a_prime;
    j["a_prime"] = to_string(s.a_prime);
    j["epsilon"] = s.epsilon;
    j["full_rank_route"] = s.full_rank_route;
    j["n_burg"] = s.n_burg;
    j["n_positive"] = s.n_positive;
    j["n_minus_infinity"] = s.n_minus_infinity;
    j["n_negative"] = s.n_negative;
    j["alpha_minus"] = s.alpha_minus;
    j["verification"] = to_json(s.verification);
    return j;
}

std::string required_string(const Json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_string())
        throw DomainError(std::string("certificate: missing string field '") + key + "'");
    return j[key].get<std::string>();
}

} // namespace

Json to_json(const TrumpingVerdict& v)
{
    Json j;
    j["status"] = to_string(v.status);
    j["witness_alpha"] = v.witness_alpha ? Json(v.witness_alpha->label()) : Json(nullptr);
    j["min_margin"] = real_text(v.min_margin);
    j["min_margin_order"] = v.min_margin_order ? Json(v.min_margin_order->label()) : Json(nullptr);
    j["checks"] = to_json(v.checks);
    return j;
}

Json to_json(const CTrumpWitness& w)
{
    Json j;
    j["k"] = w.k;
    Json rs = Json::array();
    for (const auto& r : w.r_marginals)
        rs.push_back(to_json(r));
    j["r_marginals"] = std::move(rs);
    if (w.joint) {
        const auto& s = *w.joint;
        j["joint"] = {{"labels", {"E", "B", "CD"}},
                      {"base", to_json(s.base)},
                      {"delta", to_string(s.delta)},
                      {"n_b", s.n_b},
                      {"a", to_string(s.a)},
                      {"n_c", s.n_c},
                      {"catalyst", to_json(s.catalyst)},
                      {"size", s.size()}};
    } else {
        j["joint"] = nullptr;
    }
    j["stage_b"] = w.stage_b ? to_json(*w.stage_b) : Json(nullptr);
    j["stage_c"] = w.stage_c ? to_json(*w.stage_c) : Json(nullptr);
    j["stage_trumping"] = w.stage_trumping ? to_json(*w.stage_trumping) : Json(nullptr);
    if (w.chosen)
        j["chosen"] = {{"delta", to_string(w.chosen->delta)},
                       {"n_b", w.chosen->n_b},
                       {"a", to_string(w.chosen->a)},
                       {"n_c", w.chosen->n_c},
                       {"violation", w.chosen->violation}};
    else
        j["chosen"] = nullptr;
    j["candidates_examined"] = w.candidates_examined;
    j["catalyst_evaluations"] = w.catalyst_evaluations;
    j["seed"] = w.seed;
    j["marginals_consistent"] = w.marginals_consistent;
    j["entropy_chain_ok"] = w.entropy_chain_ok;
    j["verified"] = w.verified;
    j["final_check"] = w.final_check ? to_json(*w.final_check, false) : Json(nullptr);
    j["note"] = w.note;
    return j;
}

Json majorization_certificate(const Dist& p, const Dist& q, const MajorizationVerdict& verdict,
                              const std::optional<BistochasticWitness>& witness, const RunConfig& config)
{
    Json j = base_certificate("majorization", verdict.holds ? "holds" : "fails", p, q);
    if (witness)
        j["witness"] = to_json(*witness);
    j["checks"] = to_json(verdict, true)["partial_sums"];
    j["failing_k"] = verdict.failing_k ? Json(*verdict.failing_k) : Json(nullptr);
    finish(j, config);
    return j;
}

Json trumping_certificate(const Dist& p, const Dist& q, const TrumpingVerdict& verdict, const RunConfig& config)
{
    Json j = base_certificate("trumping", to_string(verdict.status), p, q);
    if (verdict.witness_alpha)
        j["witness"] = {{"alpha", verdict.witness_alpha->label()}};
    j["checks"] = to_json(verdict.checks);
    j["min_margin"] = real_text(verdict.min_margin);
    j["min_margin_order"] = verdict.min_margin_order ? Json(verdict.min_margin_order->label()) : Json(nullptr);
    finish(j, config);
    return j;
}

Json ctrumping_certificate(const Dist& p, const Dist& q, const CTrumpReport& report, const std::string& construction,
                           const CTrumpWitness* witness, const std::string& error, const RunConfig& config)
{
    Json j = base_certificate("ctrumping", to_string(report.decision), p, q);
    j["checks"] = Json::array({
        {{"label", "rank(p)"}, {"value", report.rank_p}},
        {{"label", "rank(q)"}, {"value", report.rank_q}},
        {{"label", "H(q) - H(p)"}, {"value", real_text(report.entropy_gap)}},
        {{"label", "identical up to permutation"}, {"value", report.identical}},
    });
    j["reason"] = report.reason;
    j["construction"] = construction;
    if (witness)
        j["witness"] = to_json(*witness);
    if (!error.empty())
        j["error"] = error;
    finish(j, config);
    return j;
}

Json lambda_certificate(const Dist& p, const Dist& q, const std::optional<LambdaTransition>& best, unsigned n_max,
                        const RunConfig& config)
{
    Json j = base_certificate("lambda", best ? "found" : "none", p, q);
    if (best)
        j["witness"] = {{"lambda", best->lambda}, {"i", best->i}, {"j", best->j}, {"n", best->n}};
    j["checks"] = Json::array({{{"label", "n_max"}, {"value", n_max}}});
    finish(j, config);
    return j;
}

namespace {

void expect(VerifyOutcome& out, bool cond, const std::string& msg)
{
    if (!cond) {
        out.ok = false;
        out.messages.push_back(msg);
    }
}

Dist dist_field(const Json& j, const char* key)
{
    if (!j.contains(key))
        throw DomainError(std::string("certificate: missing field '") + key + "'");
    return parse_dist(j[key]);
}

void verify_majorization(const Json& cert, const Dist& p, const Dist& q, VerifyOutcome& out)
{
    const auto v = majorizes(p, q);
    const std::string verdict = required_string(cert, "verdict");
    expect(out, verdict == (v.holds ? "holds" : "fails"), "recorded verdict does not match the exact check");
    if (!v.holds) {
        const Json& fk = cert["failing_k"];
        expect(out, fk.is_number() && fk.get<std::uint64_t>() == *v.failing_k, "recorded failing_k is wrong");
        return;
    }
    const Json& w = cert["witness"];
    if (w.is_null()) {
        out.messages.push_back("no witness recorded; exact partial sums re-checked");
        return;
    }
    BistochasticWitness bw;
    for (const auto& s : w.at("steps"))
        bw.steps.push_back({s.at("i").get<std::size_t>(), s.at("j").get<std::size_t>(),
                            parse_rational(s.at("t").get<std::string>())});
    bw.permutation = w.at("permutation").get<std::vector<std::size_t>>();
    expect(out, bw.steps.size() + 1 <= std::max<std::size_t>(p.dim(), 1), "witness has more than dim-1 steps");
    expect(out, replay(bw, p) == q, "witness replay does not reproduce q");
}

void verify_trumping(const Json& cert, const Dist& p, const Dist& q, VerifyOutcome& out)
{
    const double tol = cert["config"].value("tol", 1e-9);
    const std::string verdict = required_string(cert, "verdict");
    Real min_gap;
    bool first = true, nonpositive = false;
    const Spectrum sp = Spectrum::of(p), sq = Spectrum::of(q);
    for (const auto& c : cert.at("checks")) {
        const Order o = Order::parse(c.at("order").get<std::string>());
        Real g = o.kind() == Order::Kind::zero_plus ? renyi(sq, o) - renyi(sp, o) : entropy_gap(sp, sq, o).value;
        const std::string rec = c.at("gap").get<std::string>();
        const std::string now = real_text(g);
        if (rec != now) {
            const Real r = (rec == "inf" || rec == "-inf") ? Real(rec == "inf" ? infinity() : minus_infinity())
                                                           : Real(rec);
            const bool close = (isinf(r) || isinf(g)) ? r == g : abs(r - g) <= Real("1e-25") * (1 + abs(g));
            expect(out, close, "gap at order " + o.label() + " differs: recorded " + rec + ", recomputed " + now);
        }
        if (o.kind() == Order::Kind::zero_plus) {
            nonpositive = nonpositive || sp.rank() > sq.rank();
            continue;
        }
        if (first || g < min_gap)
            min_gap = g;
        first = false;
        nonpositive = nonpositive || g <= 0;
    }
    if (verdict == "fails")
        expect(out, nonpositive, "verdict fails but no recorded order has a non-positive gap");
    else if (verdict == "holds")
        expect(out, !nonpositive && min_gap > tol, "verdict holds but some gap is at or below tol");
    else if (verdict == "inconclusive")
        expect(out, !nonpositive && !(min_gap > tol), "verdict inconclusive but gaps do not support it");
    else
        expect(out, false, "unknown trumping verdict '" + verdict + "'");
}

void verify_ctrumping(const Json& cert, const Dist& p, const Dist& q, VerifyOutcome& out)
{
    const double tol = cert["config"].value("tol", 1e-9);
    const auto report = decide_ctrump(p, q, tol);
    expect(out, required_string(cert, "verdict") == to_string(report.decision),
           "recorded decision does not match rank and entropy check");
    const Json& w = cert["witness"];
    if (w.is_null())
        return;
    const bool claimed = w.value("verified", false);
    if (w.at("k").get<std::size_t>() == 0) {
        if (claimed)
            expect(out, majorizes(p, q).holds, "k = 0 witness but p does not majorize q");
        return;
    }
    const Json& jt = w.at("joint");
    StagedExtension s{parse_dist(jt.at("base")),
                      parse_rational(jt.at("delta").get<std::string>()),
                      jt.at("n_b").get<std::uint64_t>(),
                      parse_rational(jt.at("a").get<std::string>()),
                      jt.at("n_c").get<std::uint64_t>(),
                      parse_dist(jt.at("catalyst"))};
    CTrumpWitness cw;
    cw.p = p;
    cw.q = q;
    cw.k = 3;
    for (const auto& r : w.at("r_marginals"))
        cw.r_marginals.push_back(parse_dist(r));
    cw.joint = s;
    try {
        const auto v = check_ctrump_witness(cw);
        if (claimed)
            expect(out, v.holds, "final majorization on the product space fails");
        else
            out.messages.push_back(std::string("witness not claimed verified; exact final check ") +
                                   (v.holds ? "holds" : "fails"));
    } catch (const DomainError& e) {
        expect(out, false, e.what());
    }
}

void verify_lambda(const Json& cert, const Dist& p, const Dist& q, VerifyOutcome& out)
{
    const Json& w = cert["witness"];
    if (w.is_null()) {
        expect(out, required_string(cert, "verdict") == "none", "verdict found without a recorded transition");
        return;
    }
    const unsigned i = w.at("i").get<unsigned>(), j = w.at("j").get<unsigned>(), n = w.at("n").get<unsigned>();
    expect(out, w.at("lambda").get<int>() == static_cast<int>(i) - static_cast<int>(j), "lambda is not i - j");
    expect(out, lambda_transition_holds(p, q, i, j, n), "recorded transition does not hold");
}

} // namespace

VerifyOutcome verify_certificate(const Json& cert)
{
    VerifyOutcome out;
    const std::string relation = required_string(cert, "relation");
    const unsigned digits = cert.contains("config") ? cert["config"].value("precision_digits", kDefaultDigits)
                                                    : kDefaultDigits;
    PrecisionScope scope(digits);
    const Json& inputs = cert.at("inputs");
    Dist p = dist_field(inputs, "p");
    Dist q = dist_field(inputs, "q");
    if (p.dim() != q.dim()) {
        const std::size_t d = std::max(p.dim(), q.dim());
        p = pad_zeros(p, d);
        q = pad_zeros(q, d);
    }
    if (relation == "majorization")
        verify_majorization(cert, p, q, out);
    else if (relation == "trumping")
        verify_trumping(cert, p, q, out);
    else if (relation == "ctrumping")
        verify_ctrumping(cert, p, q, out);
    else if (relation == "lambda")
        verify_lambda(cert, p, q, out);
    else
        throw DomainError("certificate: unknown relation '" + relation + "'");
    return out;
}

} // namespace ctrump
