#include "ppd/polar.hpp"

#include "ppd/classical.hpp"
#include "ppd/error.hpp"

#include <cmath>
#include <numbers>

namespace ppd {

namespace {

PolarPoint checked_polar(const DiagramPoint& p, const PolarParams& params) {
    const auto pp = to_polar(p);
    if (pp.radius < params.exclusion_radius) throw DomainError("polar singularity");
    return pp;
}

double angle_difference(double a, double b) { return std::remainder(a - b, 2.0 * std::numbers::pi); }

double squared_from_polar(const PolarPoint& a, const PolarPoint& b, double alpha) {
    const double dr = a.radius - b.radius;
    const double s = std::sin(0.5 * angle_difference(a.angle, b.angle));
    return dr * dr + alpha * s * s;
}

PairGradient squared_gradient_from(const DiagramPoint& p1, const DiagramPoint& p2, const PolarPoint& a,
                                   const PolarPoint& b, double alpha) {
    const double dr = a.radius - b.radius;
    // d/dx sin^2(D/2) = (1/2) sin(D) dD/dx
    const double half_sin = 0.5 * alpha * std::sin(angle_difference(a.angle, b.angle));
    const double r1sq = a.radius * a.radius;
    const double r2sq = b.radius * b.radius;
    PairGradient g;
    g.first = {2.0 * dr * p1.birth / a.radius - half_sin * p1.death / r1sq,
               2.0 * dr * p1.death / a.radius + half_sin * p1.birth / r1sq};
    g.second = {-2.0 * dr * p2.birth / b.radius + half_sin * p2.death / r2sq,
                -2.0 * dr * p2.death / b.radius - half_sin * p2.birth / r2sq};
    return g;
}

}  // namespace

double ppd_squared(const DiagramPoint& p1, const DiagramPoint& p2, const PolarParams& params) {
    params.validate();
    return squared_from_polar(checked_polar(p1, params), checked_polar(p2, params), params.alpha);
}

double ppd_point(const DiagramPoint& p1, const DiagramPoint& p2, const PolarParams& params) {
    return std::sqrt(ppd_squared(p1, p2, params));
}

PairGradient ppd_squared_gradient(const DiagramPoint& p1, const DiagramPoint& p2, const PolarParams& params) {
    params.validate();
    return squared_gradient_from(p1, p2, checked_polar(p1, params), checked_polar(p2, params), params.alpha);
}

PairGradient ppd_gradient(const DiagramPoint& p1, const DiagramPoint& p2, const PolarParams& params) {
    params.validate();
    const auto a = checked_polar(p1, params);
    const auto b = checked_polar(p2, params);
    const double d = std::sqrt(squared_from_polar(a, b, params.alpha));
    if (d == 0.0) throw DomainError("gradient undefined at zero distance");
    auto g = squared_gradient_from(p1, p2, a, b, params.alpha);
    const double scale = 0.5 / d;
    for (auto* v : {&g.first, &g.second})
        for (auto& c : *v) c *= scale;
    return g;
}

namespace {

std::vector<std::size_t> kept_indices(std::span<const DiagramPoint> d, double exclusion_radius) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto& p = d[i];
        if (!std::isfinite(p.death)) throw DomainError("essential class has no polar form");
        if (p.birth == 0.0 && p.death == 0.0) continue;
        if (std::hypot(p.birth, p.death) >= exclusion_radius) out.push_back(i);
    }
    return out;
}

}  // namespace

std::vector<DiagramPoint> mask_near_origin(std::span<const DiagramPoint> d, double exclusion_radius) {
    std::vector<DiagramPoint> out;
    for (auto i : kept_indices(d, exclusion_radius)) out.push_back(d[i]);
    return out;
}

namespace {

// Diagonal cost: the mirror point only has to avoid the origin itself.
double diagonal_ppd(const DiagramPoint& p, const PolarParams& params) {
    const auto a = to_polar(p);
    const auto b = to_polar(mirror(p));
    return std::sqrt(squared_from_polar(a, b, params.alpha));
}

MatchResult exclude_mode(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b,
                         const PpdConfig& cfg) {
    const bool flip = a.size() > b.size();
    const auto& rows = flip ? b : a;
    const auto& cols = flip ? a : b;
    CostMatrix cost(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) cost(i, j) = ppd_point(rows[i], cols[j], cfg.polar);
    const auto sol = cfg.aggregate == Aggregate::Sum ? solve_min_sum(cost) : solve_min_max(cost);
    MatchResult out{sol.objective, {}};
    std::vector<bool> used(cols.size(), false);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::size_t j = sol.column_of[i];
        used[j] = true;
        MatchedPair pair{i, j, cost(i, j)};
        if (flip) std::swap(pair.left, pair.right);
        out.matching.pairs.push_back(pair);
    }
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (used[j]) continue;
        MatchedPair pair{std::nullopt, j, 0.0};
        if (flip) std::swap(pair.left, pair.right);
        out.matching.pairs.push_back(pair);
    }
    return out;
}

}  // namespace

MatchResult ppd_diagram(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2, const PpdConfig& cfg) {
    cfg.polar.validate();
    common_dimension(d1);
    common_dimension(d2);
    const auto keep_a = kept_indices(d1, cfg.polar.exclusion_radius);
    const auto keep_b = kept_indices(d2, cfg.polar.exclusion_radius);
    std::vector<DiagramPoint> a, b;
    for (auto i : keep_a) a.push_back(d1[i]);
    for (auto j : keep_b) b.push_back(d2[j]);
    if (a.empty() && b.empty()) return {};

    MatchResult out;
    if (cfg.diagonal_mode == DiagonalMode::Exclude) {
        out = exclude_mode(a, b, cfg);
    } else {
        const auto cost = augmented_costs(
            a.size(), b.size(), [&](std::size_t i, std::size_t j) { return ppd_point(a[i], b[j], cfg.polar); },
            [&](std::size_t i) { return diagonal_ppd(a[i], cfg.polar); },
            [&](std::size_t j) { return diagonal_ppd(b[j], cfg.polar); });
        const auto sol = cfg.aggregate == Aggregate::Sum ? solve_min_sum(cost) : solve_min_max(cost);
        out = {sol.objective, decode_augmented(a.size(), b.size(), cost, sol, [](double c) { return c; })};
    }
    // Report indices into the caller's (unmasked) diagrams.
    for (auto& pair : out.matching.pairs) {
        if (pair.left) pair.left = keep_a[*pair.left];
        if (pair.right) pair.right = keep_b[*pair.right];
    }
    return out;
}

MatchResult ppd_diagram_brute_force(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                                    const PpdConfig& cfg) {
    cfg.polar.validate();
    if (cfg.diagonal_mode != DiagonalMode::Project)
        throw ParameterError("brute-force PPD oracle covers the projection diagonal mode only");
    const auto a = mask_near_origin(d1, cfg.polar.exclusion_radius);
    const auto b = mask_near_origin(d2, cfg.polar.exclusion_radius);
    return brute_force_match(
        a.size(), b.size(), [&](std::size_t i, std::size_t j) { return ppd_point(a[i], b[j], cfg.polar); },
        [&](int side, std::size_t i) { return diagonal_ppd(side == 0 ? a[i] : b[i], cfg.polar); },
        cfg.aggregate == Aggregate::Sum ? Objective::SumPow : Objective::Max, 1.0);
}

LossResult ppd_loss(std::span<const WeightedPair> pairs, const PolarParams& params) {
    params.validate();
    LossResult out;
    out.gradients.reserve(pairs.size());
    for (const auto& pr : pairs)
        if (!(pr.weight >= 0.0)) throw ParameterError("loss weights must be non-negative");
    for (const auto& pr : pairs) {
        const auto a = checked_polar(pr.p, params);
        const auto b = checked_polar(pr.q, params);
        out.value += pr.weight * squared_from_polar(a, b, params.alpha);
        auto g = squared_gradient_from(pr.p, pr.q, a, b, params.alpha);
        for (auto* v : {&g.first, &g.second})
            for (auto& c : *v) c *= pr.weight;
        out.gradients.push_back(g);
    }
    return out;
}

std::vector<WeightedPair> loss_pairs(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                                     const Matching& matching, double weight) {
    std::vector<WeightedPair> out;
    for (const auto& m : matching.pairs) {
        if (m.left && m.right) {
            out.push_back({d1[*m.left], d2[*m.right], weight});
        } else if (m.left) {
            out.push_back({d1[*m.left], mirror(d1[*m.left]), weight});
        } else if (m.right) {
            out.push_back({mirror(d2[*m.right]), d2[*m.right], weight});
        }
    }
    return out;
}

double polar_kernel(const DiagramPoint& p1, const DiagramPoint& p2, double sigma, const PolarParams& params) {
    if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
    return std::exp(-ppd_squared(p1, p2, params) / (2.0 * sigma * sigma));
}

std::array<double, 3> polar_embed(const DiagramPoint& p, const PolarParams& params) {
    params.validate();
    const auto pp = to_polar(p);
    // The first two coordinates are the Cartesian inverse of (r, theta), i.e. (b, d).
    return {p.birth, p.death, std::sqrt(params.alpha) * pp.angle};
}

}  // namespace ppd
