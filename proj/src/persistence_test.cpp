#include "ppd/error.hpp"
#include "ppd/persistence.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <random>

using namespace ppd;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Edge = FilteredComplex::WeightedEdge;

std::vector<oracle::Bar> bars_of(const PersistenceDiagram& d) {
    std::vector<oracle::Bar> out;
    for (const auto& p : d.points()) out.push_back({p.dimension, p.birth, p.death});
    for (const auto& e : d.essential()) out.push_back({e.dimension, e.birth, kInf});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<oracle::Cell> cells_of(const FilteredComplex& c) {
    std::vector<oracle::Cell> out;
    for (const auto& s : c.simplices())
        out.push_back({std::vector<std::uint32_t>(s.vertices.begin(), s.vertices.begin() + s.dimension + 1), s.value});
    return out;
}

FilteredComplex random_flag(std::mt19937_64& rng, bool expand) {
    std::uniform_int_distribution<std::size_t> vertices(1, 8);
    std::uniform_int_distribution<int> level(1, 6);  // coarse values force ties
    std::bernoulli_distribution present(0.6);
    const std::size_t n = vertices(rng);
    std::vector<Edge> edges;
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v)
            if (present(rng)) edges.push_back({u, v, 0.1 * level(rng)});
    return FilteredComplex::flag(n, edges, expand);
}

}  // namespace

TEST(Persistence, PathGraph) {
    const auto c = FilteredComplex::flag(3, {{0, 1, 0.2}, {1, 2, 0.5}}, true);
    const auto d = compute_persistence(c);
    const auto h0 = d.finite_points(0);
    ASSERT_EQ(h0.size(), 2u);
    std::vector<double> deaths{h0[0].death, h0[1].death};
    std::sort(deaths.begin(), deaths.end());
    EXPECT_EQ(deaths, (std::vector<double>{0.2, 0.5}));
    EXPECT_EQ(d.in_dimension(0).essential().size(), 1u);
}

TEST(Persistence, FourCycleStaysOpen) {
    const auto c = FilteredComplex::flag(4, {{0, 1, 0.1}, {1, 2, 0.2}, {2, 3, 0.3}, {0, 3, 0.4}}, true);
    const auto d = compute_persistence(c);
    EXPECT_TRUE(d.finite_points(1).empty());
    ASSERT_EQ(d.in_dimension(1).essential().size(), 1u);
    EXPECT_EQ(d.in_dimension(1).essential()[0].birth, 0.4);
}

TEST(Persistence, FilledTriangleHasNoFinitePair) {
    const auto c = FilteredComplex::flag(3, {{0, 1, 0.1}, {1, 2, 0.2}, {0, 2, 0.3}}, true);
    const auto d = compute_persistence(c);
    EXPECT_TRUE(d.finite_points(1).empty());
    EXPECT_TRUE(d.in_dimension(1).essential().empty());
    // The reduction does pair the cycle with the triangle, at zero persistence.
    const auto r = reduce(c);
    const auto h1 = std::count_if(r.pairs.begin(), r.pairs.end(), [](auto& p) { return p.dimension == 1; });
    EXPECT_EQ(h1, 1);
}

TEST(Persistence, CapTurnsEssentialsIntoPoints) {
    const auto c = FilteredComplex::flag(4, {{0, 1, 0.1}, {1, 2, 0.2}, {2, 3, 0.3}, {0, 3, 0.4}}, true);
    const auto d = compute_persistence(c, 2.0);
    EXPECT_TRUE(d.essential().empty());
    EXPECT_EQ(d.finite_points(1).size(), 1u);
    EXPECT_EQ(d.finite_points(1)[0].death, 2.0);
}

TEST(Components, Examples) {
    EXPECT_EQ(connected_components(FilteredComplex::flag(4, {{0, 1, 0.1}, {2, 3, 0.1}}, true)), 2u);
    std::vector<Edge> k5;
    for (std::uint32_t u = 0; u < 5; ++u)
        for (std::uint32_t v = u + 1; v < 5; ++v) k5.push_back({u, v, 0.1 * (u + v)});
    EXPECT_EQ(connected_components(FilteredComplex::flag(5, k5, true)), 1u);
    EXPECT_EQ(connected_components(FilteredComplex::flag(0, {}, true)), 0u);
}

TEST(Persistence, BoundaryColumnsPointBackwards) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const auto c = random_flag(rng, true);
        const auto m = boundary_matrix(c);
        for (std::size_t j = 0; j < m.columns.size(); ++j)
            for (auto i : m.columns[j]) EXPECT_LT(i, j);
    }
}

TEST(Persistence, MatchesRankOracle) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = random_flag(rng, trial % 4 != 0);
        EXPECT_EQ(bars_of(compute_persistence(c)), oracle::persistence_by_rank(cells_of(c))) << "trial " << trial;
    }
}

TEST(Persistence, H0MatchesUnionFind) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = random_flag(rng, true);
        std::vector<std::tuple<double, std::uint32_t, std::uint32_t>> edges;
        for (const auto& s : c.simplices())
            if (s.dimension == 1) edges.emplace_back(s.value, s.vertices[0], s.vertices[1]);
        const auto expected = oracle::h0_union_find(c.vertex_count(), edges);
        EXPECT_EQ(bars_of(compute_persistence(c).in_dimension(0)), expected);
        EXPECT_EQ(bars_of(zero_dimensional_persistence(c)), expected);
        EXPECT_EQ(connected_components(c), compute_persistence(c).in_dimension(0).essential().size());
    }
}

TEST(Persistence, EveryCellCreatesOrDestroys) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = random_flag(rng, true);
        const auto r = reduce(c);
        std::vector<int> role(c.simplices().size(), 0);
        for (const auto& p : r.pairs) {
            ++role[p.creator];
            ++role[p.destroyer];
        }
        for (auto u : r.unpaired) ++role[u];
        for (int x : role) EXPECT_EQ(x, 1);

        // creators minus destroyers of dimension k equals the final Betti number
        const auto bars = oracle::persistence_by_rank(cells_of(c));
        for (int k = 0; k < 2; ++k) {
            long creators = 0, destroyers = 0;
            for (std::size_t i = 0; i < c.simplices().size(); ++i) {
                const int dim = c.simplices()[i].dimension;
                const bool destroys = std::any_of(r.pairs.begin(), r.pairs.end(), [&](auto& p) { return p.destroyer == i; });
                if (dim == k && !destroys) ++creators;
                if (dim == k + 1 && destroys) ++destroyers;
            }
            const long betti = std::count_if(bars.begin(), bars.end(), [&](auto& b) { return b.dim == k && b.death == kInf; });
            EXPECT_EQ(creators - destroyers, betti);
        }
        // Euler characteristic
        long chi = 0;
        for (const auto& s : c.simplices()) chi += s.dimension % 2 == 0 ? 1 : -1;
        long betti_alt = 0;
        for (const auto& b : bars)
            if (b.death == kInf) betti_alt += b.dim % 2 == 0 ? 1 : -1;
        const auto h2 = std::count_if(r.unpaired.begin(), r.unpaired.end(),
                                      [&](auto u) { return c.simplices()[u].dimension == 2; });
        EXPECT_EQ(chi, betti_alt + h2);
    }
}

TEST(Persistence, EdgePerturbationMovesPointsByAtMostDelta) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> value(0.1, 1.0), shift(-1.0, 1.0);
    std::bernoulli_distribution present(0.6);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 6;
        const double delta = 1e-3;
        std::vector<Edge> a, b;
        for (std::uint32_t u = 0; u < n; ++u)
            for (std::uint32_t v = u + 1; v < n; ++v)
                if (present(rng)) {
                    const double w = value(rng);
                    a.push_back({u, v, w});
                    b.push_back({u, v, w + delta * shift(rng)});
                }
        const auto da = compute_persistence(FilteredComplex::flag(n, a, false));
        const auto db = compute_persistence(FilteredComplex::flag(n, b, false));
        // H0 deaths (sorted) move by at most delta under the union-find sweep
        auto deaths = [](const PersistenceDiagram& d) {
            std::vector<double> x;
            for (const auto& p : d.finite_points(0)) x.push_back(p.death);
            std::sort(x.begin(), x.end());
            return x;
        };
        const auto xa = deaths(da), xb = deaths(db);
        ASSERT_EQ(xa.size(), xb.size());
        for (std::size_t i = 0; i < xa.size(); ++i) EXPECT_LE(std::abs(xa[i] - xb[i]), delta + 1e-15);
    }
}

TEST(Persistence, InvalidFiltrationRejected) {
    std::vector<Simplex> bad{{{0, 0, 0}, 0, 0.0}, {{1, 0, 0}, 0, 0.0}, {{0, 1, 0}, 1, -1.0}};
    EXPECT_THROW(FilteredComplex::from_simplices(2, bad), ValidationError);
}
