#pragma once

#include "ppd/diagram.hpp"
#include "ppd/matching.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace ppd {

enum class GroundMetric { Linf, L2 };

struct MetricParams {
    double p = 1.0;                // Wasserstein order, >= 1 (may be +infinity)
    std::size_t directions = 64;   // sliced approximation count
    GroundMetric ground = GroundMetric::Linf;
    /// Random directions drawn from this seed; midpoint rule (i + 1/2) pi / N otherwise.
    std::optional<std::uint64_t> direction_seed;

    void validate() const;
};

/// Ground distance between two off-diagonal points.
double ground_distance(const DiagramPoint& a, const DiagramPoint& b, GroundMetric ground);
/// Distance from a point to its diagonal projection.
double diagonal_distance(const DiagramPoint& a, GroundMetric ground);

MatchResult bottleneck_match(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                             GroundMetric ground = GroundMetric::Linf);
double bottleneck(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                  GroundMetric ground = GroundMetric::Linf);

MatchResult wasserstein_match(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                              const MetricParams& params);
double wasserstein(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                   const MetricParams& params);

/// Projection angles used by sliced_wasserstein for these parameters.
std::vector<double> slice_angles(const MetricParams& params);

/// 1D transport between equal-size multisets of reals: (sum |a_(i) - b_(i)|^p) over sorted order.
double transport_1d_pow(std::vector<double> a, std::vector<double> b, double p);

double sliced_wasserstein(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                          const MetricParams& params);
double sliced_wasserstein(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                          std::span<const double> angles, double p);

enum class Objective { Max, SumPow };

/// Exhaustive enumeration over every partial matching (diagonal allowed for every point).
/// Combined size must be at most 8. `point_cost(i, j)` and `diagonal_cost(side, i)` give
/// pair costs; the objective is max or the sum of costs raised to `p`.
MatchResult brute_force_match(std::size_t n_left, std::size_t n_right,
                              const std::function<double(std::size_t, std::size_t)>& point_cost,
                              const std::function<double(int, std::size_t)>& diagonal_cost,
                              Objective objective, double p = 1.0);

/// Brute-force bottleneck / Wasserstein with the classical ground metric.
MatchResult brute_force_match(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                              const MetricParams& params, Objective objective);

}  // namespace ppd
