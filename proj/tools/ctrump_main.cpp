#include "ctrump/certificate.hpp"
#include "ctrump/lemmas.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace ctrump;

namespace {

// Exit codes shared by every subcommand.
enum Exit : int { holds = 0, fails = 1, error = 2, inconclusive = 3, exhausted = 4, boundary = 5 };

struct Global {
    unsigned precision = kDefaultDigits;
    bool json = false;
    bool allow_floats = false;
    bool pad = false;
    std::string cert_path;
    std::string grid = "default";
    double tol = 1e-9;
    std::uint64_t budget = 200000;
    std::uint64_t seed = 0;
    std::uint64_t n_max = std::uint64_t{1} << 20;
};

RunConfig run_config(const Global& g)
{
    RunConfig c;
    c.precision = g.precision;
    c.grid_spec = g.grid;
    c.grid = parse_grid(g.grid);
    c.grid.margin_tol = g.tol;
    c.tol = g.tol;
    c.budget = g.budget;
    c.seed = g.seed;
    c.n_max = g.n_max;
    c.pad = g.pad;
    return c;
}

std::vector<std::string> split(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty())
            out.push_back(item);
    return out;
}

std::pair<Dist, Dist> load_pair(const Global& g, const std::string& fp, const std::string& fq)
{
    const ParseOptions po{g.allow_floats};
    Dist p = load_dist(fp, po), q = load_dist(fq, po);
    if (p.dim() != q.dim()) {
        if (!g.pad)
            throw DomainError("dimensions differ (" + std::to_string(p.dim()) + " vs " + std::to_string(q.dim()) +
                              "); pass --pad to append zeros");
        const std::size_t d = std::max(p.dim(), q.dim());
        p = pad_zeros(p, d);
        q = pad_zeros(q, d);
    }
    return {p, q};
}

void emit(const Global& g, const Json& cert, const std::string& summary)
{
    if (!g.cert_path.empty()) {
        std::ofstream out(g.cert_path);
        if (!out)
            throw DomainError("cannot write " + g.cert_path);
        out << cert.dump(2) << '\n';
    }
    if (g.json)
        std::cout << cert.dump(2) << '\n';
    else
        std::cout << summary;
}

std::string show(const Real& x)
{
    return to_string(x, 20);
}

int cmd_entropy(const Global& g, const std::string& file, const std::string& orders, bool bits)
{
    const Dist p = load_dist(file, ParseOptions{g.allow_floats});
    std::vector<Order> list;
    for (const auto& o : split(orders))
        list.push_back(Order::parse(o));
    if (std::none_of(list.begin(), list.end(), [](const Order& o) { return o.kind() == Order::Kind::burg; }))
        list.push_back(Order::burg());
    const Real scale = bits ? Real(1) / log(Real(2)) : Real(1);
    Json rows = Json::array();
    std::ostringstream text;
    for (const auto& o : list) {
        const Real h = o.kind() == Order::Kind::burg ? burg(p) : renyi(p, o);
        const Real v = isinf(h) ? h : Real(h * scale);
        rows.push_back({{"order", o.label()}, {"value", real_text(v)}});
        text << o.label() << '\t' << show(v) << '\n';
    }
    Json doc = {{"input", to_json(p)}, {"unit", bits ? "bits" : "nats"}, {"entropies", rows},
                {"tool_version", tool_version()}};
    emit(g, doc, text.str());
    return holds;
}

int cmd_majorize(const Global& g, const std::string& fp, const std::string& fq)
{
    const auto [p, q] = load_pair(g, fp, fq);
    const auto v = majorizes(p, q);
    std::optional<BistochasticWitness> w;
    if (v.holds)
        w = witness(p, q);
    const Json cert = majorization_certificate(p, q, v, w, run_config(g));
    std::ostringstream text;
    if (v.holds)
        text << "holds: p majorizes q (" << w->steps.size() << " T-transforms)\n";
    else
        text << "fails at k = " << *v.failing_k << '\n';
    emit(g, cert, text.str());
    return v.holds ? holds : fails;
}

int cmd_trump(const Global& g, const std::string& fp, const std::string& fq, bool strip)
{
    auto [p, q] = load_pair(g, fp, fq);
    if (strip)
        std::tie(p, q) = strip_common_zeros(p, q);
    const RunConfig config = run_config(g);
    const auto v = trumps(p, q, config.grid);
    std::ostringstream text;
    text << to_string(v.status);
    if (v.witness_alpha)
        text << " at alpha = " << v.witness_alpha->label();
    text << "; min margin " << show(v.min_margin);
    if (v.min_margin_order)
        text << " at alpha = " << v.min_margin_order->label();
    text << '\n';
    for (const auto& c : v.checks)
        text << "  " << c.order.label() << '\t' << show(c.gap) << '\n';
    emit(g, trumping_certificate(p, q, v, config), text.str());
    switch (v.status) {
    case TrumpStatus::holds:
        return holds;
    case TrumpStatus::fails:
        return fails;
    default:
        return inconclusive;
    }
}

int cmd_ctrump(const Global& g, const std::string& fp, const std::string& fq, bool construct)
{
    const auto [p, q] = load_pair(g, fp, fq);
    const RunConfig config = run_config(g);
    const auto report = decide_ctrump(p, q, g.tol);
    std::ostringstream text;
    text << to_string(report.decision) << ": " << report.reason << '\n';
    int code = report.decision == CTrumpDecision::holds ? holds
               : report.decision == CTrumpDecision::boundary ? boundary
                                                             : fails;
    if (!construct || report.decision != CTrumpDecision::holds) {
        emit(g, ctrumping_certificate(p, q, report, "not requested", nullptr, "", config), text.str());
        return code;
    }
    ConstructionOptions options;
    options.margin_tol = g.tol;
    options.search.grid = config.grid;
    options.search.n_max = g.n_max;
    options.catalyst.budget = g.budget;
    options.catalyst.seed = g.seed;
    try {
        const CTrumpWitness w = build_ctrump_witness(p, q, options);
        text << "construction " << (w.verified ? "verified" : "unverified") << ": " << w.note << '\n';
        if (w.joint)
            text << "  delta " << to_string(w.joint->delta) << ", n_B " << w.joint->n_b << ", a "
                 << to_string(w.joint->a) << ", n_C " << w.joint->n_c << ", catalyst dim "
                 << w.joint->catalyst.dim() << ", joint size " << w.joint->size() << '\n';
        emit(g, ctrumping_certificate(p, q, report, w.verified ? "verified" : "unverified", &w, "", config),
             text.str());
        return w.verified ? holds : exhausted;
    } catch (const SearchExhausted& e) {
        text << "construction exhausted: " << e.what() << '\n';
        emit(g, ctrumping_certificate(p, q, report, "exhausted", nullptr, e.what(), config), text.str());
        return exhausted;
    }
}

int cmd_scan(const Global& g, const std::string& fp, const std::string& fq, const std::string& mode,
             const std::string& param, const std::string& ns, const std::string& alphas, bool bar)
{
    const auto [p, q] = load_pair(g, fp, fq);
    const Rational x = parse_rational(param);
    const bool lemma2 = mode == "lemma2";
    if (!lemma2 && mode != "lemma3")
        throw DomainError("--mode must be lemma2 or lemma3");
    std::vector<Order> orders;
    if (alphas.empty()) {
        for (const auto& o : parse_grid(g.grid).orders()) {
            if (lemma2 && !(o.kind() == Order::Kind::one || o.kind() == Order::Kind::plus_infinity ||
                            (o.is_finite() && o.alpha() > 1)))
                continue;
            if (!lemma2 && !bar && o.kind() == Order::Kind::burg)
                continue;
            orders.push_back(o);
        }
    } else {
        for (const auto& a : split(alphas))
            orders.push_back(Order::parse(a));
    }
    std::sort(orders.begin(), orders.end(), order_less);
    std::vector<std::uint64_t> nlist;
    for (const auto& n : split(ns))
        nlist.push_back(std::stoull(n));
    std::sort(nlist.begin(), nlist.end());
    std::cout << "alpha,n,value\n";
    for (const auto& o : orders)
        for (const auto n : nlist) {
            const Real rn(n);
            const Real v = lemma2 ? delta_lemma2(p, q, x, rn, o)
                           : bar  ? delta_bar(p, q, x, rn, o)
                                  : delta_tilde(p, q, x, rn, o);
            std::cout << o.label() << ',' << n << ',' << to_string(v, 20) << '\n';
        }
    return holds;
}

int cmd_lambda(const Global& g, const std::string& fp, const std::string& fq, unsigned n_max)
{
    const auto [p, q] = load_pair(g, fp, fq);
    const auto best = lambda_max_transition(p, q, n_max);
    std::ostringstream text;
    if (best)
        text << "lambda = " << best->lambda << " (i = " << best->i << ", j = " << best->j << ", n = " << best->n
             << ")\n";
    else
        text << "none within n_max = " << n_max << '\n';
    emit(g, lambda_certificate(p, q, best, n_max, run_config(g)), text.str());
    return best ? holds : fails;
}

int cmd_verify(const Global& g, const std::string& file)
{
    std::ifstream in(file);
    if (!in)
        throw DomainError("cannot open " + file);
    Json cert;
    try {
        cert = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw DomainError(file + ": " + e.what());
    }
    const auto out = verify_certificate(cert);
    Json doc = {{"ok", out.ok}, {"messages", out.messages}};
    std::ostringstream text;
    text << (out.ok ? "ok" : "FAILED") << '\n';
    for (const auto& m : out.messages)
        text << "  " << m << '\n';
    if (g.json)
        std::cout << doc.dump(2) << '\n';
    else
        std::cout << text.str();
    return out.ok ? holds : fails;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Majorization, trumping and c-trumping between finite distributions"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", tool_version());
    Global g;
    app.add_option("--precision", g.precision, "Decimal digits for real arithmetic")->capture_default_str();
    app.add_flag("--json", g.json, "Print the JSON certificate instead of a summary");
    app.add_option("--cert", g.cert_path, "Also write the certificate to this file");
    app.add_flag("--allow-floats", g.allow_floats, "Accept JSON floats (converted via shortest decimal form)");
    app.add_flag("--pad", g.pad, "Append zeros so both inputs have the same dimension");
    app.add_option("--grid", g.grid, "Alpha grid: default, a list of orders, or default,<list>")
        ->capture_default_str();
    app.add_option("--tol", g.tol, "Strictness margin in nats")->capture_default_str();
    app.add_option("--budget", g.budget, "Catalyst search objective evaluations")->capture_default_str();
    app.add_option("--seed", g.seed, "Seed for the catalyst search")->capture_default_str();
    app.add_option("--n-max", g.n_max, "Upper bound on extension sizes in the construction")->capture_default_str();

    std::string fp, fq;
    auto pair_args = [&](CLI::App* sub) {
        sub->add_option("p", fp, "Source distribution (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("q", fq, "Target distribution (JSON)")->required()->check(CLI::ExistingFile);
    };

    auto* entropy = app.add_subcommand("entropy", "Renyi and Burg entropies of one distribution");
    std::string file, orders = "0+,0.5,1,2,inf";
    bool bits = false;
    entropy->add_option("file", file)->required()->check(CLI::ExistingFile);
    entropy->add_option("--orders", orders, "Comma-separated orders; burg is always added")->capture_default_str();
    entropy->add_flag("--bits", bits, "Display in bits");

    auto* majorize = app.add_subcommand("majorize", "Exact majorization check");
    pair_args(majorize);

    auto* trump = app.add_subcommand("trump", "Trumping via the entropy criteria on a grid");
    pair_args(trump);
    bool strip = false;
    trump->add_flag("--strip", strip, "Remove common zeros first");

    auto* ctrump = app.add_subcommand("ctrump", "Correlated-catalyst trumping");
    pair_args(ctrump);
    bool construct = false;
    ctrump->add_flag("--construct", construct, "Build and verify an explicit witness");

    auto* scan = app.add_subcommand("scan", "CSV of extension entropy gaps over alpha and n");
    pair_args(scan);
    std::string mode = "lemma2", param, ns = "1,2,4,8", alphas;
    bool bar = false;
    scan->add_option("--mode", mode, "lemma2 (delta family) or lemma3 (uniform-a family)")->capture_default_str();
    scan->add_option("--param", param, "delta for lemma2, a for lemma3 (exact rational)")->required();
    scan->add_option("--n", ns, "Comma-separated n values")->capture_default_str();
    scan->add_option("--alpha", alphas, "Comma-separated orders (default: the grid)");
    scan->add_flag("--bar", bar, "Rescaled gap for lemma3");

    auto* lambda = app.add_subcommand("lambda", "Maximal lambda by brute force");
    pair_args(lambda);
    unsigned lambda_n = 8;
    lambda->add_option("--n-max", lambda_n, "Largest n tried")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Re-check a certificate without searching");
    verify->add_option("certificate", file)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : error;
    }

    try {
        PrecisionScope scope(g.precision);
        if (*entropy)
            return cmd_entropy(g, file, orders, bits);
        if (*majorize)
            return cmd_majorize(g, fp, fq);
        if (*trump)
            return cmd_trump(g, fp, fq, strip);
        if (*ctrump)
            return cmd_ctrump(g, fp, fq, construct);
        if (*scan)
            return cmd_scan(g, fp, fq, mode, param, ns, alphas, bar);
        if (*lambda)
            return cmd_lambda(g, fp, fq, lambda_n);
        if (*verify)
            return cmd_verify(g, file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return error;
    }
    return error;
}
