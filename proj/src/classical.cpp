#include "ppd/classical.hpp"

#include "ppd/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace ppd {

void MetricParams::validate() const {
    if (!(p >= 1.0)) throw ParameterError("Wasserstein order p must be >= 1");
    if (directions < 1) throw ParameterError("sliced direction count must be >= 1");
}

double ground_distance(const DiagramPoint& a, const DiagramPoint& b, GroundMetric ground) {
    const double db = std::abs(a.birth - b.birth);
    const double dd = std::abs(a.death - b.death);
    return ground == GroundMetric::Linf ? std::max(db, dd) : std::hypot(db, dd);
}

double diagonal_distance(const DiagramPoint& a, GroundMetric ground) {
    return ground_distance(a, mirror(a), ground);
}

namespace {

void check_inputs(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2) {
    const int a = common_dimension(d1);
    const int b = common_dimension(d2);
    if (!d1.empty() && !d2.empty() && a != b)
        throw ValidationError("diagrams belong to different homology dimensions");
    for (auto s : {d1, d2})
        for (const auto& p : s)
            if (!std::isfinite(p.death)) throw ValidationError("matching metrics take finite points only");
}

double pow_p(double x, double p) { return p == 1.0 ? x : std::pow(x, p); }

}  // namespace

MatchResult bottleneck_match(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                             GroundMetric ground) {
    check_inputs(d1, d2);
    const auto cost = augmented_costs(
        d1.size(), d2.size(), [&](std::size_t i, std::size_t j) { return ground_distance(d1[i], d2[j], ground); },
        [&](std::size_t i) { return diagonal_distance(d1[i], ground); },
        [&](std::size_t j) { return diagonal_distance(d2[j], ground); });
    const auto a = solve_min_max(cost);
    return {a.objective, decode_augmented(d1.size(), d2.size(), cost, a, [](double c) { return c; })};
}

double bottleneck(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2, GroundMetric ground) {
    return bottleneck_match(d1, d2, ground).value;
}

MatchResult wasserstein_match(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                              const MetricParams& params) {
    params.validate();
    if (std::isinf(params.p)) return bottleneck_match(d1, d2, params.ground);
    check_inputs(d1, d2);
    const double p = params.p;
    const auto cost = augmented_costs(
        d1.size(), d2.size(),
        [&](std::size_t i, std::size_t j) { return pow_p(ground_distance(d1[i], d2[j], params.ground), p); },
        [&](std::size_t i) { return pow_p(diagonal_distance(d1[i], params.ground), p); },
        [&](std::size_t j) { return pow_p(diagonal_distance(d2[j], params.ground), p); });
    const auto a = solve_min_sum(cost);
    auto matching = decode_augmented(d1.size(), d2.size(), cost, a,
                                     [p](double c) { return p == 1.0 ? c : std::pow(c, 1.0 / p); });
    return {std::pow(a.objective, 1.0 / p), std::move(matching)};
}

double wasserstein(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                   const MetricParams& params) {
    return wasserstein_match(d1, d2, params).value;
}

std::vector<double> slice_angles(const MetricParams& params) {
    params.validate();
    std::vector<double> angles(params.directions);
    if (params.direction_seed) {
        std::mt19937_64 rng(*params.direction_seed);
        std::uniform_real_distribution<double> u(0.0, std::numbers::pi);
        for (auto& a : angles) a = u(rng);
    } else {
        for (std::size_t i = 0; i < angles.size(); ++i)
            angles[i] = (static_cast<double>(i) + 0.5) * std::numbers::pi / static_cast<double>(angles.size());
    }
    return angles;
}

double transport_1d_pow(std::vector<double> a, std::vector<double> b, double p) {
    if (a.size() != b.size()) throw ValidationError("1D transport needs equal-size multisets");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) total += pow_p(std::abs(a[i] - b[i]), p);
    return total;
}

double sliced_wasserstein(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                          std::span<const double> angles, double p) {
    check_inputs(d1, d2);
    if (!(p >= 1.0) || std::isinf(p)) throw ParameterError("sliced Wasserstein order must be finite and >= 1");
    if (angles.empty()) throw ParameterError("sliced direction count must be >= 1");
    std::vector<double> a, b;
    double total = 0.0;
    for (const double theta : angles) {
        const double c = std::cos(theta), s = std::sin(theta);
        auto project = [&](const DiagramPoint& q) { return q.birth * c + q.death * s; };
        a.clear();
        b.clear();
        for (const auto& q : d1) {
            a.push_back(project(q));
            b.push_back(project(mirror(q)));
        }
        for (const auto& q : d2) {
            b.push_back(project(q));
            a.push_back(project(mirror(q)));
        }
        total += transport_1d_pow(a, b, p);
    }
    return std::pow(total / static_cast<double>(angles.size()), 1.0 / p);
}

double sliced_wasserstein(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                          const MetricParams& params) {
    const auto angles = slice_angles(params);
    return sliced_wasserstein(d1, d2, angles, params.p);
}

MatchResult brute_force_match(std::size_t n_left, std::size_t n_right,
                              const std::function<double(std::size_t, std::size_t)>& point_cost,
                              const std::function<double(int, std::size_t)>& diagonal_cost,
                              Objective objective, double p) {
    if (n_left + n_right > 8) throw ParameterError("brute-force matching is limited to 8 points in total");

    auto combine = [&](double acc, double c) {
        return objective == Objective::Max ? std::max(acc, c) : acc + pow_p(c, p);
    };

    MatchResult best{std::numeric_limits<double>::infinity(), {}};
    std::vector<std::optional<std::size_t>> choice(n_left);
    std::vector<bool> used(n_right, false);

    auto finish = [&] {
        double acc = 0.0;
        Matching m;
        for (std::size_t i = 0; i < n_left; ++i) {
            const double c = choice[i] ? point_cost(i, *choice[i]) : diagonal_cost(0, i);
            acc = combine(acc, c);
            m.pairs.push_back({i, choice[i], c});
        }
        for (std::size_t j = 0; j < n_right; ++j) {
            if (used[j]) continue;
            const double c = diagonal_cost(1, j);
            acc = combine(acc, c);
            m.pairs.push_back({std::nullopt, j, c});
        }
        if (acc < best.value) best = {acc, std::move(m)};
    };

    auto recurse = [&](auto&& self, std::size_t i) -> void {
        if (i == n_left) {
            finish();
            return;
        }
        choice[i] = std::nullopt;
        self(self, i + 1);
        for (std::size_t j = 0; j < n_right; ++j) {
            if (used[j]) continue;
            used[j] = true;
            choice[i] = j;
            self(self, i + 1);
            used[j] = false;
        }
        choice[i] = std::nullopt;
    };
    recurse(recurse, 0);

    if (objective == Objective::SumPow && p != 1.0) best.value = std::pow(best.value, 1.0 / p);
    return best;
}

MatchResult brute_force_match(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                              const MetricParams& params, Objective objective) {
    check_inputs(d1, d2);
    return brute_force_match(
        d1.size(), d2.size(),
        [&](std::size_t i, std::size_t j) { return ground_distance(d1[i], d2[j], params.ground); },
        [&](int side, std::size_t i) { return diagonal_distance(side == 0 ? d1[i] : d2[i], params.ground); },
        objective, params.p);
}

}  // namespace ppd
