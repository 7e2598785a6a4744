#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace ppd {

/// Dense row-major cost matrix; +infinity marks a forbidden cell.
class CostMatrix {
public:
    CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    static constexpr double forbidden = std::numeric_limits<double>::infinity();

private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
};

/// Row-to-column assignment. `column_of[r]` is the column given to row r.
struct Assignment {
    std::vector<std::size_t> column_of;
    double objective = 0.0;
};

/// Minimum-sum assignment (Hungarian algorithm, shortest augmenting paths with
/// potentials). Requires rows <= cols; every row is assigned.
Assignment solve_min_sum(const CostMatrix& cost);

/// Minimum-bottleneck assignment: smallest threshold among the matrix entries
/// admitting a complete row assignment, found by binary search over the sorted
/// distinct finite entries with augmenting-path feasibility checks.
Assignment solve_min_max(const CostMatrix& cost);

}  // namespace ppd
