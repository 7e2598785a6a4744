// Shared helpers for the test binaries.
#pragma once

#include "oracles.hpp"
#include "ppd/diagram.hpp"

#include <random>
#include <vector>

namespace testing_support {

inline std::vector<ppd::DiagramPoint> to_diagram(const std::vector<oracle::Pt>& pts, int dim = 1) {
    std::vector<ppd::DiagramPoint> out;
    for (const auto& p : pts) out.push_back({p.b, p.d, dim});
    return out;
}

inline std::vector<oracle::Pt> to_pts(const std::vector<ppd::DiagramPoint>& d) {
    std::vector<oracle::Pt> out;
    for (const auto& p : d) out.push_back({p.birth, p.death});
    return out;
}

inline std::vector<ppd::DiagramPoint> random_diagram(std::mt19937_64& rng, std::size_t max_points, double lo = 0.0,
                                                     double hi = 5.0, double min_pers = 0.05, double max_pers = 3.0) {
    std::uniform_int_distribution<std::size_t> count(0, max_points);
    return to_diagram(oracle::random_points(rng, count(rng), lo, hi, min_pers, max_pers));
}

}  // namespace testing_support
