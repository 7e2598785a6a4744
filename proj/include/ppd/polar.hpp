#pragma once

#include "ppd/diagram.hpp"
#include "ppd/matching.hpp"

#include <array>
#include <span>
#include <vector>

namespace ppd {

enum class DiagonalMode {
    Project,  // unmatched points pay the distance to their diagonal projection
    Exclude,  // only min(n, m) pairs are matched; surplus points are free
};

enum class Aggregate { Sum, Max };

struct PpdConfig {
    PolarParams polar;
    DiagonalMode diagonal_mode = DiagonalMode::Project;
    Aggregate aggregate = Aggregate::Sum;
};

/// sqrt((r1 - r2)^2 + alpha sin^2((theta1 - theta2) / 2)).
/// Throws DomainError("polar singularity") for points inside the exclusion radius.
double ppd_point(const DiagramPoint& p1, const DiagramPoint& p2, const PolarParams& params);

/// Squared distance; smooth everywhere except at the origin.
double ppd_squared(const DiagramPoint& p1, const DiagramPoint& p2, const PolarParams& params);

/// d/d(birth, death) of a scalar for each argument.
struct PairGradient {
    std::array<double, 2> first{};
    std::array<double, 2> second{};
};

/// Gradient of ppd_point. Throws DomainError at zero distance.
PairGradient ppd_gradient(const DiagramPoint& p1, const DiagramPoint& p2, const PolarParams& params);

/// Gradient of ppd_squared; defined at coincident points (where it is zero).
PairGradient ppd_squared_gradient(const DiagramPoint& p1, const DiagramPoint& p2, const PolarParams& params);

/// Points with radius >= exclusion_radius, in input order.
std::vector<DiagramPoint> mask_near_origin(std::span<const DiagramPoint> d, double exclusion_radius);

/// Optimal matching under ppd_point costs, after masking both diagrams.
MatchResult ppd_diagram(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2, const PpdConfig& cfg);

/// Exhaustive oracle for ppd_diagram in project mode (at most 8 points after masking).
MatchResult ppd_diagram_brute_force(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                                    const PpdConfig& cfg);

struct WeightedPair {
    DiagramPoint p;
    DiagramPoint q;
    double weight = 1.0;
};

struct LossResult {
    double value = 0.0;
    std::vector<PairGradient> gradients;  // one per input pair
};

/// sum_k w_k ppd(p_k, q_k)^2 with gradients with respect to every point.
LossResult ppd_loss(std::span<const WeightedPair> pairs, const PolarParams& params);

/// Pairs of a ppd_diagram matching, with diagonal partners replaced by mirror points.
std::vector<WeightedPair> loss_pairs(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                                     const Matching& matching, double weight = 1.0);

/// exp(-ppd^2 / (2 sigma^2)).
double polar_kernel(const DiagramPoint& p1, const DiagramPoint& p2, double sigma, const PolarParams& params);

/// (r cos theta, r sin theta, sqrt(alpha) theta).
std::array<double, 3> polar_embed(const DiagramPoint& p, const PolarParams& params);

}  // namespace ppd
