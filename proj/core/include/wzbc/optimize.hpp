#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wzbc/problem.hpp"

namespace wzbc {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

struct GridAxis {
    std::string name;
    double lower = 0.0;
    double upper = 0.0;
    std::size_t count = 1;

    /// Endpoints are exact: value(0) == lower and value(count-1) == upper.
    double value(std::size_t i) const;
};

struct GridSpec {
    std::vector<GridAxis> axes;
    std::size_t cell_cap = 10'000'000;

    std::size_t cells() const;
    /// Throws std::invalid_argument for an empty grid, lower > upper,
    /// count == 0, or a product of counts above cell_cap.
    void validate() const;
};

using CellEvaluator = std::function<std::optional<DistortionPoint>(std::span<const double>)>;

struct SweepResult {
    std::vector<DistortionPoint> points;
    std::size_t evaluated = 0;
    std::size_t rejected = 0;
    std::vector<std::string> warnings;
};

/// Evaluates every cell in row-major order (last axis fastest). Points come
/// back in cell order regardless of the thread count.
SweepResult sweep(const GridSpec& grid, const CellEvaluator& evaluator, std::size_t threads = 0);

/// Indices of the input points that form the lower-left convex boundary,
/// ordered by x. Ties in x keep the smallest y (first index on exact
/// duplicates); collinear interior points are dropped; the chain stops at
/// the first point of minimal y so that y is strictly decreasing.
std::vector<std::size_t> envelope_indices(std::span<const Point2> points);

std::vector<Point2> lower_convex_envelope(std::span<const Point2> points);
TradeoffCurve lower_convex_envelope(std::vector<DistortionPoint> points);

/// Union of all curve points followed by the envelope.
TradeoffCurve pareto_merge(const std::vector<TradeoffCurve>& curves);

/// Piecewise-linear value of an envelope at x. Left of the first vertex the
/// curve is undefined (nullopt); right of the last vertex it stays flat.
std::optional<double> curve_value_at(std::span<const Point2> envelope, double x);
std::optional<double> curve_value_at(const TradeoffCurve& curve, double x);

std::vector<Point2> to_points(const std::vector<DistortionPoint>& points);

} // namespace wzbc
