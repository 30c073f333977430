#include "wzbc/binary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wzbc/infotheory.hpp"
#include "wzbc/parallel.hpp"

namespace wzbc {

namespace {

constexpr double rate_tol = 1e-12;

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void check_unit(double v, double upper, const char* what)
{
    if (!(v >= 0.0 && v <= upper))
        throw ProblemError(std::string(what) + " = " + fmt(v) + " is outside [0, " + fmt(upper) + "]");
}

std::vector<double> axis_values(double lower, double upper, std::size_t count)
{
    const GridAxis axis{"", lower, upper, count};
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = axis.value(i);
    return out;
}

double wz_objective(double alpha, double beta, double rate)
{
    const double r = wz_rate_kernel(alpha, beta);
    const double q = r > 0.0 ? std::min(1.0, rate / r) : 1.0;
    return layer_distortion(q, alpha, beta);
}

void require_nonempty(const std::vector<double>& v, const char* what)
{
    if (v.empty())
        throw ProblemError(std::string("grid axis ") + what + " is empty");
}

TradeoffCurve envelope_of_samples(const std::vector<RegionSample>& samples,
                                  const std::function<DistortionPoint(const RegionSample&)>& expand)
{
    TradeoffCurve curve;
    curve.envelope_applied = true;
    if (samples.empty())
        return curve;
    std::vector<Point2> xy;
    xy.reserve(samples.size());
    for (const auto& s : samples)
        xy.push_back({s.D[0], s.D[1]});
    for (std::size_t i : envelope_indices(xy))
        curve.points.push_back(expand(samples[i]));
    return curve;
}

} // namespace

double layer_distortion(double q, double alpha, double beta)
{
    return q * std::min(alpha, beta) + (1.0 - q) * beta;
}

double binary_wz_distortion(double beta, double rate, std::size_t grid_resolution)
{
    check_unit(beta, 0.5, "beta");
    if (!(rate >= 0.0))
        throw ProblemError("rate must be nonnegative (R = " + fmt(rate) + ")");
    if (grid_resolution < 2)
        throw ProblemError("binary_wz_distortion needs at least 2 grid points");
    if (beta == 0.0)
        return 0.0;
    if (rate >= binary_entropy(beta))
        return 0.0;
    const std::vector<double> alphas = axis_values(0.0, beta, grid_resolution);
    std::size_t best = 0;
    double best_d = wz_objective(alphas[0], beta, rate);
    for (std::size_t i = 1; i < alphas.size(); ++i) {
        const double d = wz_objective(alphas[i], beta, rate);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    double lo = alphas[best > 0 ? best - 1 : 0];
    double hi = alphas[std::min(best + 1, alphas.size() - 1)];
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = wz_objective(x1, beta, rate);
    double f2 = wz_objective(x2, beta, rate);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = wz_objective(x1, beta, rate);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = wz_objective(x2, beta, rate);
        }
    }
    return std::min({best_d, f1, f2});
}

double binary_channel_capacity(double crossover, const Rational& kappa)
{
    return kappa.value() * (1.0 - binary_entropy(crossover));
}

std::vector<double> binary_trivial_converse(const BinaryProblem& problem)
{
    std::vector<double> out;
    for (std::size_t k = 0; k < problem.receivers(); ++k)
        out.push_back(binary_wz_distortion(problem.sideinfo_crossovers[k],
                                           binary_channel_capacity(problem.crossovers[k], problem.kappa)));
    return out;
}

DistortionPoint binary_uncoded(const BinaryProblem& problem)
{
    require_matched_bandwidth(problem.kappa, "uncoded");
    DistortionPoint pt;
    pt.scheme = Scheme::uncoded;
    for (std::size_t k = 0; k < problem.receivers(); ++k)
        pt.D.push_back(std::min(problem.crossovers[k], problem.sideinfo_crossovers[k]));
    return pt;
}

std::vector<DistortionPoint> binary_cds_points(const BinaryProblem& problem, std::size_t resolution)
{
    if (resolution < 1)
        throw ProblemError("grid resolution must be positive");
    const std::size_t k_count = problem.receivers();
    std::vector<double> caps(k_count);
    for (std::size_t k = 0; k < k_count; ++k)
        caps[k] = binary_channel_capacity(problem.crossovers[k], problem.kappa);
    const auto qs = axis_values(0.0, 1.0, resolution);
    const auto alphas = axis_values(0.0, 0.5, resolution);
    std::vector<DistortionPoint> out;
    for (double q : qs) {
        for (double alpha : alphas) {
            bool ok = true;
            for (std::size_t k = 0; k < k_count && ok; ++k)
                ok = q * wz_rate_kernel(alpha, problem.sideinfo_crossovers[k]) <= caps[k] + rate_tol;
            if (!ok)
                continue;
            DistortionPoint pt;
            pt.scheme = Scheme::cds;
            for (std::size_t k = 0; k < k_count; ++k)
                pt.D.push_back(layer_distortion(q, alpha, problem.sideinfo_crossovers[k]));
            pt.params = {{"q", q}, {"alpha", alpha}};
            out.push_back(std::move(pt));
        }
    }
    return out;
}

TradeoffCurve binary_cds_region(const BinaryProblem& problem, std::size_t resolution)
{
    require_two_receivers(problem.receivers(), "binary_cds_region");
    return lower_convex_envelope(binary_cds_points(problem, resolution));
}

void validate_source_params(const BinarySourceParams& src)
{
    check_unit(src.q_c, 1.0, "q_c");
    check_unit(src.q_r, 1.0, "q_r");
    check_unit(src.alpha_c, 0.5, "alpha_c");
    check_unit(src.alpha_r, 0.5, "alpha_r");
    if (src.q_c > src.q_r)
        throw ProblemError("source layers must satisfy q_c <= q_r (q_c = " + fmt(src.q_c) + ", q_r = "
                           + fmt(src.q_r) + ")");
    if (src.alpha_c < src.alpha_r)
        throw ProblemError("source layers must satisfy alpha_c >= alpha_r (alpha_c = " + fmt(src.alpha_c)
                           + ", alpha_r = " + fmt(src.alpha_r) + ")");
}

RateTriple binary_lds_source_rates_raw(const BinarySourceParams& src, double beta_c, double beta_r)
{
    validate_source_params(src);
    check_unit(beta_c, 0.5, "beta_c");
    check_unit(beta_r, 0.5, "beta_r");
    const double cr = src.q_c * wz_rate_kernel(src.alpha_c, beta_r);
    return {src.q_c * wz_rate_kernel(src.alpha_c, beta_c), cr, src.q_r * wz_rate_kernel(src.alpha_r, beta_r) - cr};
}

ClampedRates binary_lds_source_rates(const BinarySourceParams& src, double beta_c, double beta_r)
{
    return clamp_rates(binary_lds_source_rates_raw(src, beta_c, beta_r));
}

const char* to_string(AuxChoice aux)
{
    return aux == AuxChoice::t_equals_uc ? "T=Uc" : "T=Uc^Ur";
}

RateTriple binary_lds_channel_rates_raw(double p_c, double p_r, const BinaryChannelParams& ch, const Rational& kappa)
{
    check_unit(p_c, 0.5, "p_c");
    check_unit(p_r, 0.5, "p_r");
    check_unit(ch.gamma_c, 0.5, "gamma_c");
    check_unit(ch.gamma_r, 0.5, "gamma_r");
    const double k = kappa.value();
    if (ch.t_choice == AuxChoice::t_equals_uc) {
        return {k * wz_rate_kernel(binary_convolution(ch.gamma_r, p_c), ch.gamma_c),
                k * wz_rate_kernel(binary_convolution(ch.gamma_r, p_r), ch.gamma_c),
                k * wz_rate_kernel(p_r, ch.gamma_r)};
    }
    const double g = binary_convolution(ch.gamma_c, ch.gamma_r);
    const double self = wz_rate_kernel(ch.gamma_c, ch.gamma_r);
    return {k * (wz_rate_kernel(p_c, g) - self), k * (wz_rate_kernel(p_r, g) - self), k * self};
}

ClampedRates binary_lds_channel_rates(double p_c, double p_r, const BinaryChannelParams& ch, const Rational& kappa)
{
    if (ch.t_choice == AuxChoice::t_equals_uc) {
        check_unit(p_c, 0.5, "p_c");
        check_unit(p_r, 0.5, "p_r");
        check_unit(ch.gamma_r, 0.5, "gamma_r");
        const double k = kappa.value();
        const RateTriple raw{k * (1.0 - binary_entropy(binary_convolution(ch.gamma_r, p_c))),
                             k * (1.0 - binary_entropy(binary_convolution(ch.gamma_r, p_r))),
                             k * wz_rate_kernel(p_r, ch.gamma_r)};
        return clamp_rates(raw);
    }
    return clamp_rates(binary_lds_channel_rates_raw(p_c, p_r, ch, kappa));
}

BinaryLdsGrid BinaryLdsGrid::uniform(std::size_t resolution)
{
    if (resolution < 3)
        throw ProblemError("grid too coarse: resolution " + std::to_string(resolution)
                           + " is below 3 points per axis");
    BinaryLdsGrid g;
    g.q_values = axis_values(0.0, 1.0, resolution);
    g.alpha_values = axis_values(0.0, 0.5, resolution);
    g.gamma_values = axis_values(0.0, 0.5, resolution);
    return g;
}

namespace {

struct ChannelEntry {
    BinaryChannelParams params;
    RateTriple rates;
};

/// With fixed_uc_gamma the T = U_c branch only visits gamma_c = 1/2.
std::vector<ChannelEntry> channel_list(const BinaryLdsGrid& grid, bool fixed_uc_gamma = true)
{
    std::vector<ChannelEntry> out;
    for (AuxChoice aux : grid.aux) {
        if (aux == AuxChoice::t_equals_uc && fixed_uc_gamma) {
            for (double gr : grid.gamma_values)
                out.push_back({{0.5, gr, aux}, {}});
        } else {
            for (double gc : grid.gamma_values)
                for (double gr : grid.gamma_values)
                    out.push_back({{gc, gr, aux}, {}});
        }
    }
    return out;
}

/// Indices (ascending) of channel triples not dominated by another triple.
/// Exact duplicates keep the lowest index.
std::vector<std::size_t> pareto_channels(const std::vector<ChannelEntry>& list)
{
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const RateTriple& a = list[i].rates;
        bool dominated = false;
        for (std::size_t j = 0; j < list.size() && !dominated; ++j) {
            if (i == j)
                continue;
            const RateTriple& b = list[j].rates;
            const bool weakly = a.cc <= b.cc && a.cr <= b.cr && a.rr <= b.rr;
            const bool equal = a.cc == b.cc && a.cr == b.cr && a.rr == b.rr;
            dominated = weakly && (!equal || j < i);
        }
        if (!dominated)
            keep.push_back(i);
    }
    return keep;
}

} // namespace

namespace {

using ChannelRateFn = ClampedRates (*)(double, double, const BinaryChannelParams&, const Rational&);

std::vector<RegionSample> layered_points(const BinaryProblem& problem, const BinaryLdsGrid& grid,
                                         bool fixed_uc_gamma, ChannelRateFn channel_rates, std::size_t threads)
{
    require_two_receivers(problem.receivers(), "binary layered region");
    require_nonempty(grid.q_values, "q");
    require_nonempty(grid.alpha_values, "alpha");
    require_nonempty(grid.gamma_values, "gamma");
    for (double q : grid.q_values)
        check_unit(q, 1.0, "q");
    for (double a : grid.alpha_values)
        check_unit(a, 0.5, "alpha");

    const std::size_t nq = grid.q_values.size();
    const std::size_t na = grid.alpha_values.size();
    std::vector<RegionSample> out;

    for (std::size_t ai = 0; ai < grid.assignments.size(); ++ai) {
        const RoleAssignment assign = grid.assignments[ai];
        RoleAssignment::make(assign.common, assign.refinement, 2);
        const double pc = problem.crossovers[assign.common];
        const double pr = problem.crossovers[assign.refinement];
        const double bc = problem.sideinfo_crossovers[assign.common];
        const double br = problem.sideinfo_crossovers[assign.refinement];

        auto channels = channel_list(grid, fixed_uc_gamma);
        const std::uint64_t nch = channels.size();
        std::vector<ChannelEntry> usable;
        std::vector<std::size_t> usable_index;
        for (std::size_t i = 0; i < channels.size(); ++i) {
            // A genuinely negative channel rate admits no source rate; skip it
            // rather than letting the clamped zero stand in for it.
            const ClampedRates cr = channel_rates(pc, pr, channels[i].params, problem.kappa);
            if (cr.clamped)
                continue;
            usable.push_back({channels[i].params, cr.rates});
            usable_index.push_back(i);
        }
        std::vector<RateTriple> frontier;
        std::vector<std::size_t> frontier_index;
        for (std::size_t i : pareto_channels(usable)) {
            frontier.push_back(usable[i].rates);
            frontier_index.push_back(usable_index[i]);
        }

        std::vector<double> r_cc(na), r_cr(na);
        for (std::size_t i = 0; i < na; ++i) {
            r_cc[i] = wz_rate_kernel(grid.alpha_values[i], bc);
            r_cr[i] = wz_rate_kernel(grid.alpha_values[i], br);
        }

        std::vector<std::vector<RegionSample>> slabs(nq);
        parallel_for(nq, threads, [&](std::size_t iqc) {
            const double qc = grid.q_values[iqc];
            for (std::size_t iqr = 0; iqr < nq; ++iqr) {
                const double qr = grid.q_values[iqr];
                if (grid.tie_layers ? iqr != iqc : qc > qr)
                    continue;
                for (std::size_t iac = 0; iac < na; ++iac) {
                    const double ac = grid.alpha_values[iac];
                    const double dc = layer_distortion(qc, ac, bc);
                    for (std::size_t iar = 0; iar < na; ++iar) {
                        const double ar = grid.alpha_values[iar];
                        if (grid.tie_layers ? iar != iac : ac < ar)
                            continue;
                        const double cr = qc * r_cr[iac];
                        RateTriple need{qc * r_cc[iac], cr, qr * r_cr[iar] - cr};
                        if (need.rr < 0.0)
                            need.rr = 0.0;
                        std::size_t hit = frontier.size();
                        for (std::size_t f = 0; f < frontier.size(); ++f) {
                            if (need.dominated_by(frontier[f], rate_tol)) {
                                hit = f;
                                break;
                            }
                        }
                        if (hit == frontier.size())
                            continue;
                        std::uint64_t cell = ai;
                        cell = cell * nq + iqc;
                        cell = cell * nq + iqr;
                        cell = cell * na + iac;
                        cell = cell * na + iar;
                        cell = cell * nch + frontier_index[hit];
                        RegionSample s;
                        s.D[assign.common] = dc;
                        s.D[assign.refinement] = layer_distortion(qr, ar, br);
                        s.cell = cell;
                        slabs[iqc].push_back(s);
                    }
                }
            }
        });
        for (auto& s : slabs)
            out.insert(out.end(), s.begin(), s.end());
    }
    return out;
}

BinaryLdsCell describe_cell(const BinaryLdsGrid& grid, std::uint64_t cell, bool fixed_uc_gamma)
{
    const auto channels = channel_list(grid, fixed_uc_gamma);
    const std::uint64_t nch = channels.size();
    const std::uint64_t nq = grid.q_values.size();
    const std::uint64_t na = grid.alpha_values.size();
    const std::size_t ich = cell % nch;
    cell /= nch;
    const std::size_t iar = cell % na;
    cell /= na;
    const std::size_t iac = cell % na;
    cell /= na;
    const std::size_t iqr = cell % nq;
    cell /= nq;
    const std::size_t iqc = cell % nq;
    cell /= nq;
    if (cell >= grid.assignments.size())
        throw ProblemError("cell index does not belong to this grid");
    BinaryLdsCell out;
    out.assign = grid.assignments[cell];
    out.source = {grid.q_values[iqc], grid.q_values[iqr], grid.alpha_values[iac], grid.alpha_values[iar]};
    out.channel = channels[ich].params;
    return out;
}

TradeoffCurve layered_region(const std::vector<RegionSample>& samples, const BinaryLdsGrid& grid, bool fixed_uc_gamma,
                             Scheme scheme)
{
    return envelope_of_samples(samples, [&](const RegionSample& s) {
        const BinaryLdsCell c = describe_cell(grid, s.cell, fixed_uc_gamma);
        DistortionPoint pt;
        pt.scheme = scheme;
        pt.D = {s.D[0], s.D[1]};
        pt.params = {{"common", static_cast<double>(c.assign.common + 1)},
                     {"q_c", c.source.q_c},
                     {"q_r", c.source.q_r},
                     {"alpha_c", c.source.alpha_c},
                     {"alpha_r", c.source.alpha_r},
                     {"gamma_c", c.channel.gamma_c},
                     {"gamma_r", c.channel.gamma_r},
                     {"t_xor", c.channel.t_choice == AuxChoice::t_equals_uc_xor_ur ? 1.0 : 0.0}};
        return pt;
    });
}

} // namespace

std::vector<RegionSample> binary_lds_points(const BinaryProblem& problem, const BinaryLdsGrid& grid, std::size_t threads)
{
    return layered_points(problem, grid, true, &binary_lds_channel_rates, threads);
}

BinaryLdsCell describe_lds_cell(const BinaryLdsGrid& grid, std::uint64_t cell)
{
    return describe_cell(grid, cell, true);
}

TradeoffCurve binary_lds_region(const BinaryProblem& problem, const BinaryLdsGrid& grid, std::size_t threads)
{
    return layered_region(binary_lds_points(problem, grid, threads), grid, true, Scheme::lds);
}

TradeoffCurve binary_lds_region(const BinaryProblem& problem, std::size_t resolution, std::size_t threads)
{
    return binary_lds_region(problem, BinaryLdsGrid::uniform(resolution), threads);
}

RateTriple binary_scheme3_channel_rates_raw(double p_c, double p_r, const BinaryChannelParams& ch,
                                            const Rational& kappa)
{
    const RateTriple lds = binary_lds_channel_rates_raw(p_c, p_r, ch, kappa);
    const double k = kappa.value();
    // Given U_r the channel to r is BSC(gamma_c * p_r) in both branches.
    return {lds.cc, k * wz_rate_kernel(p_r, ch.gamma_c),
            k * wz_rate_kernel(binary_convolution(ch.gamma_c, p_r), ch.gamma_r)};
}

ClampedRates binary_scheme3_channel_rates(double p_c, double p_r, const BinaryChannelParams& ch, const Rational& kappa)
{
    return clamp_rates(binary_scheme3_channel_rates_raw(p_c, p_r, ch, kappa));
}

std::vector<RegionSample> binary_scheme3_points(const BinaryProblem& problem, const BinaryLdsGrid& grid,
                                                std::size_t threads)
{
    return layered_points(problem, grid, false, &binary_scheme3_channel_rates, threads);
}

BinaryLdsCell describe_scheme3_cell(const BinaryLdsGrid& grid, std::uint64_t cell)
{
    return describe_cell(grid, cell, false);
}

TradeoffCurve binary_scheme3_region(const BinaryProblem& problem, const BinaryLdsGrid& grid, std::size_t threads)
{
    return layered_region(binary_scheme3_points(problem, grid, threads), grid, false, Scheme::scheme3);
}

TradeoffCurve binary_scheme3_region(const BinaryProblem& problem, std::size_t resolution, std::size_t threads)
{
    return binary_scheme3_region(problem, BinaryLdsGrid::uniform(resolution), threads);
}

BinarySeparateRoles binary_separate_roles(const BinaryProblem& problem)
{
    require_two_receivers(problem.receivers(), "binary separate coding");
    const auto& p = problem.crossovers;
    const auto& b = problem.sideinfo_crossovers;
    if (p[0] > p[1])
        return {0, 1};
    if (p[1] > p[0])
        return {1, 0};
    return b[0] <= b[1] ? BinarySeparateRoles{1, 0} : BinarySeparateRoles{0, 1};
}

std::pair<double, double> binary_broadcast_bounds(const BinaryProblem& problem, double theta)
{
    check_unit(theta, 0.5, "theta");
    const BinarySeparateRoles s = binary_separate_roles(problem);
    const double k = problem.kappa.value();
    const double pb = problem.crossovers[s.bad];
    const double pg = problem.crossovers[s.good];
    return {k * (1.0 - binary_entropy(binary_convolution(theta, pb))),
            k * (binary_entropy(binary_convolution(theta, pg)) - binary_entropy(pg))};
}

namespace {

bool nested(double q_b, double q_g, double a_b, double a_g)
{
    return (q_b <= q_g && a_b >= a_g) || (q_g <= q_b && a_g >= a_b);
}

/// Rate needed by the bad receiver and cumulative rate needed by the good one.
std::pair<double, double> separate_source_rates(double q_b, double a_b, double q_g, double a_g, double beta_b,
                                                double beta_g)
{
    const double bb = q_b * wz_rate_kernel(a_b, beta_b);
    if (beta_g <= beta_b) {
        const double extra = q_g * wz_rate_kernel(a_g, beta_g) - q_b * wz_rate_kernel(a_b, beta_g);
        return {bb, bb + std::max(0.0, extra)};
    }
    const double gg = q_g * wz_rate_kernel(a_g, beta_g);
    return {bb, gg + std::max(0.0, bb - q_g * wz_rate_kernel(a_g, beta_b))};
}

} // namespace

bool binary_separate_feasible(const BinaryProblem& problem, const BinarySeparateParams& prm)
{
    check_unit(prm.q_b, 1.0, "q_b");
    check_unit(prm.q_g, 1.0, "q_g");
    check_unit(prm.alpha_b, 0.5, "alpha_b");
    check_unit(prm.alpha_g, 0.5, "alpha_g");
    if (!nested(prm.q_b, prm.q_g, prm.alpha_b, prm.alpha_g))
        return false;
    const BinarySeparateRoles s = binary_separate_roles(problem);
    const auto [bound_b, bound_g] = binary_broadcast_bounds(problem, prm.theta);
    const auto [need_b, need_g] = separate_source_rates(prm.q_b, prm.alpha_b, prm.q_g, prm.alpha_g,
                                                        problem.sideinfo_crossovers[s.bad],
                                                        problem.sideinfo_crossovers[s.good]);
    return need_b <= bound_b + rate_tol && need_g <= bound_b + bound_g + rate_tol;
}

BinarySeparateGrid BinarySeparateGrid::uniform(std::size_t resolution)
{
    if (resolution < 3)
        throw ProblemError("grid too coarse: resolution " + std::to_string(resolution)
                           + " is below 3 points per axis");
    BinarySeparateGrid g;
    g.theta_values = axis_values(0.0, 0.5, resolution);
    g.q_values = axis_values(0.0, 1.0, resolution);
    g.alpha_values = axis_values(0.0, 0.5, resolution);
    return g;
}

std::vector<RegionSample> binary_separate_points(const BinaryProblem& problem, const BinarySeparateGrid& grid,
                                                 std::size_t threads)
{
    const BinarySeparateRoles s = binary_separate_roles(problem);
    require_nonempty(grid.theta_values, "theta");
    require_nonempty(grid.q_values, "q");
    require_nonempty(grid.alpha_values, "alpha");
    const double beta_b = problem.sideinfo_crossovers[s.bad];
    const double beta_g = problem.sideinfo_crossovers[s.good];
    const std::size_t nt = grid.theta_values.size();
    const std::size_t nq = grid.q_values.size();
    const std::size_t na = grid.alpha_values.size();

    std::vector<std::pair<double, double>> bounds(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        const auto [b, g] = binary_broadcast_bounds(problem, grid.theta_values[t]);
        bounds[t] = {b, b + g};
    }

    std::vector<std::vector<RegionSample>> slabs(nq);
    parallel_for(nq, threads, [&](std::size_t iqb) {
        const double qb = grid.q_values[iqb];
        for (std::size_t iqg = 0; iqg < nq; ++iqg) {
            const double qg = grid.q_values[iqg];
            for (std::size_t iab = 0; iab < na; ++iab) {
                const double ab = grid.alpha_values[iab];
                const double db = layer_distortion(qb, ab, beta_b);
                for (std::size_t iag = 0; iag < na; ++iag) {
                    const double ag = grid.alpha_values[iag];
                    if (!nested(qb, qg, ab, ag))
                        continue;
                    const auto [need_b, need_g] = separate_source_rates(qb, ab, qg, ag, beta_b, beta_g);
                    std::size_t hit = nt;
                    for (std::size_t t = 0; t < nt; ++t) {
                        if (need_b <= bounds[t].first + rate_tol && need_g <= bounds[t].second + rate_tol) {
                            hit = t;
                            break;
                        }
                    }
                    if (hit == nt)
                        continue;
                    RegionSample smp;
                    smp.D[s.bad] = db;
                    smp.D[s.good] = layer_distortion(qg, ag, beta_g);
                    std::uint64_t cell = iqb;
                    cell = cell * nq + iqg;
                    cell = cell * na + iab;
                    cell = cell * na + iag;
                    cell = cell * nt + hit;
                    smp.cell = cell;
                    slabs[iqb].push_back(smp);
                }
            }
        }
    });
    std::vector<RegionSample> out;
    for (auto& sl : slabs)
        out.insert(out.end(), sl.begin(), sl.end());
    return out;
}

BinarySeparateParams describe_separate_cell(const BinarySeparateGrid& grid, std::uint64_t cell)
{
    const std::uint64_t nt = grid.theta_values.size();
    const std::uint64_t nq = grid.q_values.size();
    const std::uint64_t na = grid.alpha_values.size();
    BinarySeparateParams p;
    p.theta = grid.theta_values[cell % nt];
    cell /= nt;
    p.alpha_g = grid.alpha_values[cell % na];
    cell /= na;
    p.alpha_b = grid.alpha_values[cell % na];
    cell /= na;
    p.q_g = grid.q_values[cell % nq];
    cell /= nq;
    if (cell >= nq)
        throw ProblemError("cell index does not belong to this grid");
    p.q_b = grid.q_values[cell];
    return p;
}

TradeoffCurve binary_separate_region(const BinaryProblem& problem, const BinarySeparateGrid& grid, std::size_t threads)
{
    const auto samples = binary_separate_points(problem, grid, threads);
    return envelope_of_samples(samples, [&](const RegionSample& s) {
        const BinarySeparateParams c = describe_separate_cell(grid, s.cell);
        DistortionPoint pt;
        pt.scheme = Scheme::separate;
        pt.D = {s.D[0], s.D[1]};
        pt.params = {{"theta", c.theta}, {"q_b", c.q_b}, {"q_g", c.q_g}, {"alpha_b", c.alpha_b}, {"alpha_g", c.alpha_g}};
        return pt;
    });
}

TradeoffCurve binary_separate_region(const BinaryProblem& problem, std::size_t resolution, std::size_t threads)
{
    return binary_separate_region(problem, BinarySeparateGrid::uniform(resolution), threads);
}

TradeoffCurve binary_converse_curve(const BinaryProblem& problem)
{
    require_two_receivers(problem.receivers(), "binary_converse_curve");
    const auto lo = binary_trivial_converse(problem);
    const auto& b = problem.sideinfo_crossovers;
    TradeoffCurve curve;
    for (const auto& d : {std::vector<double>{lo[0], b[1]}, std::vector<double>{lo[0], lo[1]},
                          std::vector<double>{b[0], lo[1]}}) {
        DistortionPoint pt;
        pt.scheme = Scheme::converse;
        pt.D = d;
        curve.points.push_back(std::move(pt));
    }
    return curve;
}

} // namespace wzbc
