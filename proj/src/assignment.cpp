#include "ppd/assignment.hpp"

#include "ppd/error.hpp"

#include <algorithm>
#include <cmath>

namespace ppd {

Assignment solve_min_sum(const CostMatrix& cost) {
    const std::size_t n = cost.rows();
    const std::size_t m = cost.cols();
    if (n > m) throw ParameterError("assignment requires rows <= cols");
    Assignment out;
    if (n == 0) return out;

    // 1-based arrays; index 0 is the virtual root of each augmenting search.
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<std::size_t> row_of(m + 1, 0), way(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        row_of[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(m + 1, inf);
        std::vector<bool> used(m + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = row_of[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double c = cost(i0 - 1, j - 1);
                if (std::isfinite(c)) {
                    const double cur = c - u[i0] - v[j];
                    if (cur < minv[j]) {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if (j1 == 0) throw ValidationError("assignment problem is infeasible");
            for (std::size_t j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (row_of[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    out.column_of.assign(n, 0);
    for (std::size_t j = 1; j <= m; ++j)
        if (row_of[j] != 0) out.column_of[row_of[j] - 1] = j - 1;
    for (std::size_t r = 0; r < n; ++r) out.objective += cost(r, out.column_of[r]);
    return out;
}

namespace {

// Kuhn's augmenting paths restricted to cells with cost <= threshold.
bool complete_matching(const CostMatrix& cost, double threshold, std::vector<std::size_t>& column_of) {
    const std::size_t n = cost.rows();
    const std::size_t m = cost.cols();
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> row_of(m, none);
    std::vector<char> visited(m);

    auto augment = [&](auto&& self, std::size_t r) -> bool {
        for (std::size_t c = 0; c < m; ++c) {
            if (visited[c] || !(cost(r, c) <= threshold)) continue;
            visited[c] = 1;
            if (row_of[c] == none || self(self, row_of[c])) {
                row_of[c] = r;
                return true;
            }
        }
        return false;
    };
    for (std::size_t r = 0; r < n; ++r) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!augment(augment, r)) return false;
    }
    column_of.assign(n, none);
    for (std::size_t c = 0; c < m; ++c)
        if (row_of[c] != none) column_of[row_of[c]] = c;
    return true;
}

}  // namespace

Assignment solve_min_max(const CostMatrix& cost) {
    const std::size_t n = cost.rows();
    if (n > cost.cols()) throw ParameterError("assignment requires rows <= cols");
    Assignment out;
    if (n == 0) return out;

    std::vector<double> candidates;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < cost.cols(); ++c)
            if (std::isfinite(cost(r, c))) candidates.push_back(cost(r, c));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (candidates.empty()) throw ValidationError("assignment problem is infeasible");

    std::vector<std::size_t> best;
    if (!complete_matching(cost, candidates.back(), best))
        throw ValidationError("assignment problem is infeasible");
    std::size_t lo = 0, hi = candidates.size() - 1;
    std::vector<std::size_t> trial;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (complete_matching(cost, candidates[mid], trial)) {
            hi = mid;
            best = trial;
        } else {
            lo = mid + 1;
        }
    }
    out.column_of = std::move(best);
    out.objective = candidates[lo];
    return out;
}

}  // namespace ppd
