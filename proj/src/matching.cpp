#include "ppd/matching.hpp"

namespace ppd {

CostMatrix augmented_costs(std::size_t n, std::size_t m,
                           const std::function<double(std::size_t, std::size_t)>& point_cost,
                           const std::function<double(std::size_t)>& left_diagonal,
                           const std::function<double(std::size_t)>& right_diagonal) {
    const std::size_t k = n + m;
    CostMatrix c(k, k, CostMatrix::forbidden);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) c(i, j) = point_cost(i, j);
        c(i, m + i) = left_diagonal(i);
    }
    for (std::size_t j = 0; j < m; ++j) {
        c(n + j, j) = right_diagonal(j);
        for (std::size_t i = 0; i < n; ++i) c(n + j, m + i) = 0.0;
    }
    return c;
}

Matching decode_augmented(std::size_t n, std::size_t m, const CostMatrix& cost,
                          const Assignment& assignment,
                          const std::function<double(double)>& report) {
    Matching out;
    for (std::size_t r = 0; r < assignment.column_of.size(); ++r) {
        const std::size_t c = assignment.column_of[r];
        MatchedPair pair;
        if (r < n) pair.left = r;
        if (c < m) pair.right = c;
        if (!pair.left && !pair.right) continue;
        pair.cost = report(cost(r, c));
        out.pairs.push_back(pair);
    }
    return out;
}

}  // namespace ppd
