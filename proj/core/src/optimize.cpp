#include "wzbc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wzbc/parallel.hpp"

namespace wzbc {

double GridAxis::value(std::size_t i) const
{
    if (count <= 1)
        return lower;
    if (i + 1 == count)
        return upper;
    return lower + (upper - lower) * static_cast<double>(i) / static_cast<double>(count - 1);
}

std::size_t GridSpec::cells() const
{
    std::size_t n = 1;
    for (const auto& a : axes) {
        if (a.count != 0 && n > cell_cap / a.count)
            return cell_cap + 1;
        n *= a.count;
    }
    return n;
}

void GridSpec::validate() const
{
    if (axes.empty())
        throw std::invalid_argument("grid has no axes");
    for (const auto& a : axes) {
        if (a.count == 0)
            throw std::invalid_argument("grid axis " + a.name + " has no points");
        if (!(a.lower <= a.upper))
            throw std::invalid_argument("grid axis " + a.name + " has lower > upper");
    }
    if (cells() > cell_cap)
        throw std::length_error("grid exceeds the cap of " + std::to_string(cell_cap) + " cells");
}

SweepResult sweep(const GridSpec& grid, const CellEvaluator& evaluator, std::size_t threads)
{
    grid.validate();
    const std::size_t total = grid.cells();
    const std::size_t outer = grid.axes.front().count;
    const std::size_t inner = total / outer;
    const std::size_t dims = grid.axes.size();

    std::vector<std::vector<DistortionPoint>> slabs(outer);
    parallel_for(outer, threads, [&](std::size_t i0) {
        std::vector<double> params(dims);
        std::vector<std::size_t> idx(dims, 0);
        idx[0] = i0;
        for (std::size_t cell = 0; cell < inner; ++cell) {
            for (std::size_t d = 0; d < dims; ++d)
                params[d] = grid.axes[d].value(idx[d]);
            if (auto p = evaluator(params))
                slabs[i0].push_back(std::move(*p));
            for (std::size_t d = dims; d-- > 1;) {
                if (++idx[d] < grid.axes[d].count)
                    break;
                idx[d] = 0;
            }
        }
    });

    SweepResult out;
    out.evaluated = total;
    for (auto& s : slabs)
        std::move(s.begin(), s.end(), std::back_inserter(out.points));
    out.rejected = total - out.points.size();
    if (out.points.empty())
        out.warnings.push_back("evaluator rejected all " + std::to_string(total) + " cells");
    return out;
}

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b)
{
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

} // namespace

std::vector<std::size_t> envelope_indices(std::span<const Point2> points)
{
    if (points.empty())
        throw std::invalid_argument("lower_convex_envelope needs at least one point");
    for (const auto& p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("lower_convex_envelope needs finite coordinates");

    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (points[a].x != points[b].x)
            return points[a].x < points[b].x;
        return points[a].y < points[b].y;
    });

    std::vector<std::size_t> hull;
    hull.reserve(64);
    for (std::size_t k = 0; k < order.size(); ++k) {
        const std::size_t i = order[k];
        if (k > 0 && points[order[k - 1]].x == points[i].x)
            continue;
        while (hull.size() >= 2
               && cross(points[hull[hull.size() - 2]], points[hull.back()], points[i]) <= 0.0)
            hull.pop_back();
        hull.push_back(i);
    }

    std::size_t keep = 1;
    while (keep < hull.size() && points[hull[keep]].y < points[hull[keep - 1]].y)
        ++keep;
    hull.resize(keep);
    return hull;
}

std::vector<Point2> lower_convex_envelope(std::span<const Point2> points)
{
    std::vector<Point2> out;
    for (std::size_t i : envelope_indices(points))
        out.push_back(points[i]);
    return out;
}

std::vector<Point2> to_points(const std::vector<DistortionPoint>& points)
{
    std::vector<Point2> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        if (p.D.size() != 2)
            throw ReceiverCountError("tradeoff curves are defined for exactly two receivers (K = "
                                     + std::to_string(p.D.size()) + ")");
        out.push_back({p.D[0], p.D[1]});
    }
    return out;
}

TradeoffCurve lower_convex_envelope(std::vector<DistortionPoint> points)
{
    const auto xy = to_points(points);
    TradeoffCurve curve;
    curve.envelope_applied = true;
    for (std::size_t i : envelope_indices(xy))
        curve.points.push_back(std::move(points[i]));
    return curve;
}

TradeoffCurve pareto_merge(const std::vector<TradeoffCurve>& curves)
{
    if (curves.empty())
        throw std::invalid_argument("pareto_merge needs at least one curve");
    std::vector<DistortionPoint> all;
    for (const auto& c : curves)
        all.insert(all.end(), c.points.begin(), c.points.end());
    return lower_convex_envelope(std::move(all));
}

std::optional<double> curve_value_at(std::span<const Point2> envelope, double x)
{
    if (envelope.empty() || x < envelope.front().x)
        return std::nullopt;
    if (x >= envelope.back().x)
        return envelope.back().y;
    const auto it = std::upper_bound(envelope.begin(), envelope.end(), x,
                                     [](double v, const Point2& p) { return v < p.x; });
    const Point2& b = *it;
    const Point2& a = *(it - 1);
    const double t = (x - a.x) / (b.x - a.x);
    return a.y + t * (b.y - a.y);
}

std::optional<double> curve_value_at(const TradeoffCurve& curve, double x)
{
    const auto xy = to_points(curve.points);
    return curve_value_at(std::span<const Point2>(xy), x);
}

} // namespace wzbc
