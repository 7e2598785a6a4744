#pragma once

#include "ppd/assignment.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace ppd {

/// One pair of a partial matching; an empty side means the diagonal.
struct MatchedPair {
    std::optional<std::size_t> left;
    std::optional<std::size_t> right;
    double cost = 0.0;
};

struct Matching {
    std::vector<MatchedPair> pairs;
};

struct MatchResult {
    double value = 0.0;
    Matching matching;
};

/// Square (n+m) x (n+m) problem over diagonal-augmented point sets.
///
/// Rows are the n left points followed by m diagonal slots (one per right point);
/// columns are the m right points followed by n diagonal slots (one per left point).
/// A point may only use its own diagonal slot; slot-to-slot cells cost zero.
CostMatrix augmented_costs(std::size_t n, std::size_t m,
                           const std::function<double(std::size_t, std::size_t)>& point_cost,
                           const std::function<double(std::size_t)>& left_diagonal,
                           const std::function<double(std::size_t)>& right_diagonal);

/// Reads the matching back out of an assignment on `augmented_costs`. Pair costs are
/// mapped through `report` (e.g. undoing a p-th power); slot-to-slot pairs are dropped.
Matching decode_augmented(std::size_t n, std::size_t m, const CostMatrix& cost,
                          const Assignment& assignment,
                          const std::function<double(double)>& report);

}  // namespace ppd
