#include "ctrump/ctrump.hpp"

#include "ctrump/extension.hpp"

#include <algorithm>
#include <set>

namespace ctrump {

const char* to_string(CTrumpDecision d)
{
    switch (d) {
    case CTrumpDecision::holds:
        return "holds";
    case CTrumpDecision::fails:
        return "fails";
    case CTrumpDecision::boundary:
        return "boundary";
    }
    return "?";
}

CTrumpReport decide_ctrump(const Dist& p, const Dist& q, double margin_tol)
{
    if (p.dim() != q.dim())
        throw DomainError("decide_ctrump: dimensions differ (" + std::to_string(p.dim()) + " vs " +
                          std::to_string(q.dim()) + "); pad with zeros first");
    CTrumpReport r;
    r.rank_p = rank(p);
    r.rank_q = rank(q);
    r.entropy_gap = shannon(q) - shannon(p);
    if (same_up_to_permutation(p, q)) {
        r.identical = true;
        r.decision = CTrumpDecision::holds;
        r.reason = "p and q agree up to permutation; no auxiliary system is needed";
        return r;
    }
    if (r.rank_p > r.rank_q) {
        r.decision = CTrumpDecision::fails;
        r.reason = "rank(p) = " + std::to_string(r.rank_p) + " exceeds rank(q) = " + std::to_string(r.rank_q);
        return r;
    }
    if (r.entropy_gap > margin_tol) {
        r.decision = CTrumpDecision::holds;
        r.reason = "rank(p) <= rank(q) and H(p) < H(q)";
    } else if (r.entropy_gap < -margin_tol) {
        r.decision = CTrumpDecision::fails;
        r.reason = "H(p) > H(q)";
    } else {
        r.decision = CTrumpDecision::boundary;
        r.reason = "H(p) = H(q) within tolerance: the exact transition is impossible, but q can be "
                   "reached to arbitrary accuracy";
    }
    return r;
}

namespace {

Rational as_rational(std::uint64_t n)
{
    return Rational(static_cast<unsigned long>(n));
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > UINT64_MAX / a)
        throw DomainError("staged extension: dimension overflows 64 bits");
    return a * b;
}

} // namespace

std::uint64_t StagedExtension::size() const
{
    std::uint64_t s = checked_mul(base.dim(), n_b + 1);
    s = checked_mul(s, n_c + 1);
    return checked_mul(s, catalyst.dim());
}

Dist StagedExtension::marginal(const std::string& label) const
{
    const Rational m = as_rational(base.dim());
    if (label == "E") {
        // Row sums of the stage-B rows (δ, (q_i-δ)/n_b, ...).
        std::vector<Rational> e;
        for (const auto& qi : base)
            e.push_back(delta + (qi - delta) / as_rational(n_b) * as_rational(n_b));
        return Dist(std::move(e));
    }
    if (label == "B")
        return extension_marginal(1 - m * delta, n_b);
    if (label == "CD") {
        const Dist qc = extension_marginal(a, n_c);
        std::vector<Rational> e;
        for (const auto& x : qc)
            for (const auto& c : catalyst)
                e.push_back(x * c);
        return Dist(std::move(e));
    }
    throw DomainError("staged extension has subsystems E, B and CD, not '" + label + "'");
}

Spectrum StagedExtension::stage_target() const
{
    return extend_spectrum_uniform(extend_spectrum_delta(Spectrum::of(base), delta, n_b), a, n_c);
}

Spectrum StagedExtension::spectrum() const
{
    return kron(stage_target(), Spectrum::of(catalyst));
}

Spectrum StagedExtension::stage_source(const Dist& p) const
{
    const Rational m = as_rational(base.dim());
    return kron(kron(Spectrum::of(p), extension_marginal_spectrum(1 - m * delta, n_b)),
                extension_marginal_spectrum(a, n_c));
}

JointDist StagedExtension::materialize(std::uint64_t max_size) const
{
    if (size() > max_size)
        throw DomainError("staged extension has " + std::to_string(size()) + " entries, above the limit " +
                          std::to_string(max_size));
    const JointDist eb = extend(base, ExtensionParams::per_entry_delta(base, delta, n_b), "E", "B");
    const Rational share = a / as_rational(eb.size());
    const JointDist ebc = extend(eb, ExtensionParams::explicit_list(std::vector<Rational>(eb.size(), share), n_c), "C");
    const JointDist full = kron(ebc, JointDist::from_dist(catalyst, "D"));
    return merge_subsystems(full, 2, 2, "CD");
}

MajorizationVerdict check_staged(const Dist& p, const Dist& q, const StagedExtension& joint)
{
    if (p.dim() != q.dim())
        throw DomainError("check_staged: dimensions differ");
    Spectrum left = Spectrum::of(p);
    for (const char* label : {"E", "B", "CD"})
        left = kron(left, Spectrum::of(joint.marginal(label)));
    const Spectrum right = kron(Spectrum::of(q), joint.spectrum());
    return majorizes(left, right);
}

namespace {

bool marginals_match(const StagedExtension& joint, const std::vector<Dist>& r)
{
    static const char* labels[] = {"E", "B", "CD"};
    if (r.size() != 3)
        return false;
    if (joint.size() <= (std::uint64_t{1} << 18)) {
        const JointDist t = joint.materialize();
        for (int i = 0; i < 3; ++i)
            if (!(marginal_dist(t, labels[i]) == r[i]))
                return false;
        return true;
    }
    for (int i = 0; i < 3; ++i)
        if (!(joint.marginal(labels[i]) == r[i]))
            return false;
    return true;
}

bool entropy_chain(const Dist& p, const Dist& q, const std::vector<Dist>& r, const Spectrum& joint)
{
    const Real tol("1e-9");
    Real sum_r = 0;
    for (const auto& ri : r)
        sum_r += shannon(ri);
    const Real left = shannon(p) + sum_r;
    const Real middle = shannon(q) + shannon(joint);
    const Real right = shannon(q) + sum_r;
    return left <= middle + tol && middle <= right + tol && rank(p) <= rank(q);
}

std::vector<Order> upper_orders(const AlphaGrid& grid)
{
    std::vector<Order> out;
    for (const Order& o : grid.orders())
        if (o.kind() == Order::Kind::one || o.kind() == Order::Kind::plus_infinity ||
            (o.is_finite() && o.alpha() > 1))
            out.push_back(o);
    return out;
}

struct Candidate {
    StageCandidate params;
    Spectrum source;
    Spectrum target;
};

} // namespace

MajorizationVerdict check_ctrump_witness(const CTrumpWitness& w)
{
    if (w.k == 0 || !w.joint)
        return majorizes(Spectrum::of(w.p), Spectrum::of(w.q));
    if (!marginals_match(*w.joint, w.r_marginals))
        throw DomainError("witness marginals do not match its joint distribution");
    return check_staged(w.p, w.q, *w.joint);
}

CTrumpWitness build_ctrump_witness(const Dist& p, const Dist& q, const ConstructionOptions& options)
{
    const CTrumpReport report = decide_ctrump(p, q, options.margin_tol);
    if (report.decision != CTrumpDecision::holds)
        throw DomainError(std::string("build_ctrump_witness: decision is ") + to_string(report.decision) +
                          " (" + report.reason + ")");
    CTrumpWitness w;
    w.p = p;
    w.q = q;
    w.seed = options.catalyst.seed;
    w.marginals_consistent = true;

    auto trivial_witness = [&](std::string note) {
        w.k = 0;
        w.final_check = majorizes(Spectrum::of(p), Spectrum::of(q));
        w.verified = w.final_check->holds;
        w.entropy_chain_ok = shannon(p) <= shannon(q) + Real("1e-9") && rank(p) <= rank(q);
        w.note = std::move(note);
        return w;
    };
    if (report.identical)
        return trivial_witness("p and q agree up to permutation");

    const auto [ps, qs] = strip_common_zeros(p, q);
    if (is_uniform(qs))
        return trivial_witness("q is uniform on its support, so p majorizes q");

    const Spectrum sp = Spectrum::of(ps), sq = Spectrum::of(qs);
    const Rational m = as_rational(qs.dim());
    const double tol = options.margin_tol;

    // The route of the existence proof: δ and n_B, then a and n_C.
    w.stage_b = find_delta_N(sp, sq, options.search);
    const Spectrum qb = extension_marginal_spectrum(1 - m * w.stage_b->delta, w.stage_b->n);
    const Spectrum q_eb = extend_spectrum_delta(sq, w.stage_b->delta, w.stage_b->n);
    w.stage_c = find_a_N(kron(sp, qb), q_eb, options.search);

    auto make_candidate = [&](const Rational& delta, std::uint64_t n_b, const Rational& a, std::uint64_t n_c) {
        Candidate c;
        c.params = StageCandidate{delta, n_b, a, n_c, 0.0};
        StagedExtension s{qs, delta, n_b, a, n_c};
        c.source = s.stage_source(ps);
        c.target = s.stage_target();
        c.params.violation = static_cast<double>(majorization_violation(c.source, c.target));
        return c;
    };

    const Candidate canonical = make_candidate(w.stage_b->delta, w.stage_b->n, w.stage_c->a, w.stage_c->n);
    std::vector<Candidate> ranked{canonical};

    if (options.explore) {
        const auto orders = upper_orders(options.search.grid);
        std::set<std::tuple<Rational, std::uint64_t, Rational, std::uint64_t>> seen;
        seen.insert({canonical.params.delta, canonical.params.n_b, canonical.params.a, canonical.params.n_c});
        for (int dshift = 0; dshift < 3; ++dshift) {
            Rational delta = w.stage_b->delta / Rational(1UL << dshift);
            std::uint64_t n_min;
            try {
                n_min = find_N_for_delta(sp, sq, delta, options.search).n;
            } catch (const Error&) {
                continue;
            }
            std::vector<std::uint64_t> nbs{n_min};
            for (std::uint64_t n = 1; n <= 64; n *= 2)
                if (n > n_min)
                    nbs.push_back(n);
            for (std::uint64_t n_b : nbs) {
                if (n_b > options.search.n_max)
                    continue;
                bool admissible = true;
                for (const auto& o : orders)
                    if (!(delta_lemma2(sp, sq, delta, Real(static_cast<unsigned long long>(n_b)), o) > tol)) {
                        admissible = false;
                        break;
                    }
                if (!admissible)
                    continue;
                const Spectrum target_b = extend_spectrum_delta(sq, delta, n_b);
                const Rational bound = as_rational(target_b.dim()) * target_b.min_positive();
                std::vector<Rational> as{w.stage_c->a};
                for (int i = 1; i <= 6; ++i)
                    as.push_back(bound / Rational(1UL << i));
                std::vector<std::uint64_t> ncs{1, 2, 3, 4, 6, 8, 16, 32, 64, w.stage_c->n};
                for (const auto& a : as) {
                    if (!(sgn(a) > 0 && a < bound))
                        continue;
                    for (std::uint64_t n_c : ncs) {
                        if (n_c > options.search.n_max)
                            continue;
                        if (!seen.insert({delta, n_b, a, n_c}).second)
                            continue;
                        ranked.push_back(make_candidate(delta, n_b, a, n_c));
                    }
                }
            }
        }
        std::stable_sort(ranked.begin(), ranked.end(), [](const Candidate& x, const Candidate& y) {
            return x.params.violation < y.params.violation;
        });
    }
    w.candidates_examined = ranked.size();

    // Certify the most promising candidates: trumping, then plain majorization.
    const std::size_t to_certify = options.explore ? std::min<std::size_t>(ranked.size(), 24) : 1;
    std::vector<std::pair<const Candidate*, TrumpingVerdict>> certified;
    const Candidate* chosen = nullptr;
    std::optional<TrumpingVerdict> chosen_verdict;
    Dist catalyst(std::vector<Rational>{Rational(1)});
    for (std::size_t i = 0; i < to_certify; ++i) {
        const Candidate& c = ranked[i];
        TrumpingVerdict v =
            options.explore ? trumps(c.source, c.target, options.search.grid) : w.stage_c->verification;
        if (v.status != TrumpStatus::holds)
            continue;
        if (majorizes(c.source, c.target).holds) {
            chosen = &c;
            chosen_verdict = std::move(v);
            break;
        }
        certified.emplace_back(&c, std::move(v));
    }
    if (!chosen && certified.empty()) {
        const auto it = std::find_if(ranked.begin(), ranked.end(), [&](const Candidate& c) {
            return c.params.delta == canonical.params.delta && c.params.n_b == canonical.params.n_b &&
                   c.params.a == canonical.params.a && c.params.n_c == canonical.params.n_c;
        });
        certified.emplace_back(&*it, w.stage_c->verification);
    }

    bool have_catalyst = chosen != nullptr;
    if (!chosen) {
        const std::size_t attempts = std::min<std::size_t>(certified.size(), 3);
        CatalystSearchOptions copt = options.catalyst;
        copt.budget = options.catalyst.budget / attempts;
        for (std::size_t i = 0; i < attempts; ++i) {
            const auto& [c, v] = certified[i];
            CatalystResult r = search_catalyst(c->source, c->target, copt);
            w.catalyst_evaluations += r.evaluations;
            if (r.catalyst) {
                chosen = c;
                chosen_verdict = v;
                catalyst = *r.catalyst;
                have_catalyst = true;
                break;
            }
        }
        if (!chosen) {
            chosen = certified.front().first;
            chosen_verdict = certified.front().second;
        }
    }

    w.chosen = chosen->params;
    w.stage_trumping = chosen_verdict;
    w.k = 3;
    w.joint = StagedExtension{qs, chosen->params.delta, chosen->params.n_b, chosen->params.a, chosen->params.n_c,
                              catalyst};
    w.r_marginals = {w.joint->marginal("E"), w.joint->marginal("B"), w.joint->marginal("CD")};
    w.marginals_consistent = marginals_match(*w.joint, w.r_marginals);
    w.entropy_chain_ok = entropy_chain(p, q, w.r_marginals, w.joint->spectrum());
    if (have_catalyst) {
        w.final_check = check_staged(p, q, *w.joint);
        w.verified = w.final_check->holds && w.marginals_consistent;
        w.note = catalyst.dim() == 1 ? "staged pair is majorized without a catalyst"
                                     : "catalyst of dimension " + std::to_string(catalyst.dim()) + " found";
    } else {
        w.note = "no catalyst found within budget; the trumping certificate of the staged pair is recorded";
    }
    return w;
}

std::vector<Dist> prune_useless(const std::vector<Dist>& r)
{
    std::vector<Dist> out;
    for (const auto& d : r)
        if (!is_uniform(d) && !is_pure(d))
            out.push_back(d);
    return out;
}

} // namespace ctrump
