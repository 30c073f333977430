#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "wzbc/binary.hpp"
#include "wzbc/cli.hpp"
#include "wzbc/dmc_regions.hpp"
#include "wzbc/gaussian.hpp"
#include "wzbc/infotheory.hpp"
#include "wzbc/mcsim.hpp"

namespace wzbc::cli {

namespace {

double tol_or(const ValidateOptions& o, double fallback)
{
    return o.tolerance ? *o.tolerance : fallback;
}

CheckResult check(std::string name, double deviation, double tolerance)
{
    return {std::move(name), deviation <= tolerance, deviation, tolerance};
}

std::vector<GaussianProblem> gaussian_instances(std::uint64_t seed)
{
    std::vector<GaussianProblem> out{{1.0, {1.0, 0.5}, {0.8, 0.4}, Rational(1)},
                                     {1.0, {2.0, 0.5}, {0.3, 0.9}, Rational(1)}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> p(0.5, 4.0), w(0.25, 4.0), n(0.1, 1.0);
    for (int i = 0; i < 3; ++i) {
        GaussianProblem g;
        g.power = p(rng);
        g.noise_vars = {w(rng), w(rng)};
        g.sideinfo_vars = {n(rng), n(rng)};
        out.push_back(g);
    }
    return out;
}

std::string instance_name(const char* what, std::size_t i)
{
    return std::string(what) + " [instance " + std::to_string(i + 1) + "]";
}

std::vector<CheckResult> gaussian_oracle(const ValidateOptions& o)
{
    const double tol = tol_or(o, 1e-4);
    std::vector<CheckResult> out;
    const auto insts = gaussian_instances(o.seed);
    for (std::size_t i = 0; i < insts.size(); ++i) {
        const GaussianProblem& g = insts[i];
        const RoleAssignment a = choose_refinement_receiver(g);
        LdsSweepOptions so;
        so.threads = o.threads;
        const TradeoffCurve env = gaussian_lds_sweep(g, a, so);
        std::vector<Point2> xy;
        for (const auto& p : env.points)
            xy.push_back({p.D[a.common], p.D[a.refinement]});
        std::sort(xy.begin(), xy.end(), [](const Point2& l, const Point2& r) { return l.x < r.x; });
        const Interval dom = gaussian_lds_domain(g, a);
        double worst = 0.0;
        for (int j = 0; j < 50; ++j) {
            const double dc = dom.lower + (dom.upper - dom.lower) * j / 49.0;
            const auto v = curve_value_at(xy, dc);
            worst = std::max(worst, v ? std::abs(*v - gaussian_lds_closed_form(g, a, dc)) : HUGE_VAL);
        }
        out.push_back(check(instance_name("layered sweep vs closed form", i), worst, tol));
    }
    return out;
}

std::vector<CheckResult> gaussian_ordering(const ValidateOptions& o)
{
    const double tol = tol_or(o, 1e-10);
    std::vector<CheckResult> out;
    const auto insts = gaussian_instances(o.seed);
    for (std::size_t i = 0; i < insts.size(); ++i) {
        const GaussianProblem& g = insts[i];
        const RoleAssignment a = choose_refinement_receiver(g);
        const SeparateRoles s = gaussian_separate_roles(g);
        const Interval sd = gaussian_separate_domain(g);
        const bool equal_case = g.noise_vars[a.common] >= g.noise_vars[a.refinement]
                                && g.sideinfo_vars[a.common] >= g.sideinfo_vars[a.refinement];
        double above_sep = 0.0, gap = 0.0, above_s3 = 0.0;
        for (int j = 0; j < 50; ++j) {
            const double db = sd.lower + (sd.upper - sd.lower) * j / 49.0;
            std::vector<double> d(2);
            d[s.bad] = db;
            d[s.good] = gaussian_separate_closed_form(g, db);
            const double lds = gaussian_lds_closed_form(g, a, d[a.common], true);
            above_sep = std::max(above_sep, lds - d[a.refinement]);
            gap = std::max(gap, std::abs(lds - d[a.refinement]));
        }
        const Interval ld = gaussian_lds_domain(g, a, true);
        for (int j = 0; j < 50; ++j) {
            const double dc = ld.lower + (ld.upper - ld.lower) * j / 49.0;
            above_s3 = std::max(above_s3,
                                gaussian_lds_closed_form(g, a, dc, true) - gaussian_scheme3_closed_form(g, a, dc));
        }
        out.push_back(check(instance_name("layered <= separate", i), above_sep, tol));
        out.push_back(check(instance_name("layered <= scheme 3", i), above_s3, tol));
        if (equal_case)
            out.push_back(check(instance_name("layered == separate", i), gap, tol));
    }
    return out;
}

std::vector<CheckResult> binary_oracle(const ValidateOptions& o)
{
    std::vector<CheckResult> out;
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    double wz = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double beta = 0.01 + 0.49 * u(rng);
        const double rate = binary_entropy(beta) * u(rng);
        auto objective = [&](double a) {
            const double r = wz_rate_kernel(a, beta);
            const double q = r > 0.0 ? std::min(1.0, rate / r) : 1.0;
            return layer_distortion(q, a, beta);
        };
        double brute = beta;
        int at = 0;
        for (int k = 0; k < 2000; ++k) {
            const double d = objective(beta * k / 1999.0);
            if (d < brute) {
                brute = d;
                at = k;
            }
        }
        const double lo = beta * std::max(at - 1, 0) / 1999.0, hi = beta * std::min(at + 1, 1999) / 1999.0;
        for (int k = 0; k < 2000; ++k)
            brute = std::min(brute, objective(lo + (hi - lo) * k / 1999.0));
        wz = std::max(wz, std::abs(binary_wz_distortion(beta, rate) - brute));
    }
    out.push_back(check("wyner-ziv distortion vs brute force", wz, tol_or(o, 1e-5)));

    const BinaryProblem b{{0.05, 0.1}, {0.2, 0.1}, Rational(1)};
    BinaryLdsGrid pinned = BinaryLdsGrid::uniform(41);
    pinned.tie_layers = true;
    pinned.gamma_values = {0.0};
    pinned.aux = {AuxChoice::t_equals_uc};
    pinned.assignments = {{0, 1}};
    std::set<std::pair<double, double>> lds, cds;
    for (const auto& s : binary_lds_points(b, pinned, o.threads))
        lds.insert({s.D[0], s.D[1]});
    for (const auto& p : binary_cds_points(b, 41))
        cds.insert({p.D[0], p.D[1]});
    out.push_back(check("pinned layered grid equals single description", lds == cds ? 0.0 : 1.0, 0.0));

    const auto lo = binary_trivial_converse(b);
    double below = 0.0;
    for (const auto& s : binary_lds_points(b, BinaryLdsGrid::uniform(21), o.threads))
        for (std::size_t k = 0; k < 2; ++k)
            below = std::max(below, lo[k] - s.D[k]);
    out.push_back(check("layered points above the converse", below, tol_or(o, 1e-9)));
    return out;
}

std::vector<CheckResult> dmc_consistency(const ValidateOptions& o)
{
    const double tol = tol_or(o, 1e-9);
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> h(0.0, 0.5);
    double lds_dev = 0.0, s3_dev = 0.0, s1_dev = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double pc = h(rng), pr = h(rng), gc = h(rng), gr = h(rng);
        for (AuxChoice aux : {AuxChoice::t_equals_uc, AuxChoice::t_equals_uc_xor_ur}) {
            const BinaryChannelParams ch{gc, gr, aux};
            const SchemeInputs in = binary_superposition_inputs(pc, pr, ch);
            const RateTriple e = lds_rate_triple(in);
            const RateTriple c = binary_lds_channel_rates_raw(pc, pr, ch, Rational(1));
            lds_dev = std::max({lds_dev, std::abs(e.cc - c.cc), std::abs(e.cr - c.cr), std::abs(e.rr - c.rr)});
            const RateTriple e3 = scheme3_rate_triple(in);
            const RateTriple c3 = binary_scheme3_channel_rates_raw(pc, pr, ch, Rational(1));
            s3_dev = std::max({s3_dev, std::abs(e3.cc - c3.cc), std::abs(e3.cr - c3.cr), std::abs(e3.rr - c3.rr)});
            if (aux == AuxChoice::t_equals_uc) {
                const RateTriple s1 = scheme1_rate_triple(in);
                s1_dev = std::max({s1_dev, std::abs(s1.cc - e.cc), std::abs(s1.cr - e.cr), std::abs(s1.rr - e.rr)});
            }
        }
    }
    return {check("layered engine vs closed form", lds_dev, tol), check("scheme 3 engine vs closed form", s3_dev, tol),
            check("scheme 1 equals layered with T = Uc", s1_dev, o.tolerance ? *o.tolerance : 0.0)};
}

std::vector<CheckResult> mc_uncoded(const ValidateOptions& o)
{
    const double sigmas = tol_or(o, acceptance_sigmas);
    SimConfig cfg;
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    std::vector<CheckResult> out;
    auto add = [&](const std::string& name, const Estimate& e, double target) {
        const double z = e.std_error > 0.0 ? std::abs(e.mean - target) / e.std_error
                                           : (e.mean == target ? 0.0 : HUGE_VAL);
        out.push_back(check(name, z, sigmas));
    };
    const GaussianProblem g{1.0, {1.0, 0.5}, {0.8, 0.4}, Rational(1)};
    const auto ge = simulate_uncoded_gaussian(g, cfg);
    const auto gt = gaussian_uncoded(g);
    add("gaussian uncoded receiver 1 (sigmas)", ge[0], gt.D[0]);
    add("gaussian uncoded receiver 2 (sigmas)", ge[1], gt.D[1]);
    const BinaryProblem b{{0.05, 0.1}, {0.2, 0.1}, Rational(1)};
    const auto be = simulate_uncoded_binary(b, cfg);
    const auto bt = binary_uncoded(b);
    add("binary uncoded receiver 1 (sigmas)", be[0], bt.D[0]);
    add("binary uncoded receiver 2 (sigmas)", be[1], bt.D[1]);
    return out;
}

} // namespace

const std::vector<std::string>& known_suites()
{
    static const std::vector<std::string> names{"gaussian-oracle", "gaussian-ordering", "binary-oracle",
                                                "dmc-consistency", "mc-uncoded"};
    return names;
}

std::vector<CheckResult> cmd_validate(const ValidateOptions& options)
{
    if (options.tolerance && !(*options.tolerance >= 0.0))
        throw UsageError("tolerance must be nonnegative");
    if (options.suite == "gaussian-oracle")
        return gaussian_oracle(options);
    if (options.suite == "gaussian-ordering")
        return gaussian_ordering(options);
    if (options.suite == "binary-oracle")
        return binary_oracle(options);
    if (options.suite == "dmc-consistency")
        return dmc_consistency(options);
    if (options.suite == "mc-uncoded")
        return mc_uncoded(options);
    throw UsageError("unknown suite \"" + options.suite + "\"");
}

} // namespace wzbc::cli
