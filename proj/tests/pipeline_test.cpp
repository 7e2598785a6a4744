// Library-level pipeline: ballots -> dominance -> filtration -> diagram -> metrics,
// with every intermediate artifact passed through its on-disk format.
#include "ppd/distance.hpp"
#include "ppd/experiment.hpp"
#include "ppd/persistence.hpp"
#include "ppd/preflib.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

using namespace ppd;

namespace {

const std::filesystem::path kData = PPD_DATA_DIR;

PersistenceDiagram through_files(const PreferenceProfile& p) {
    std::stringstream complex;
    write_complex(complex, build_filtration(dominance(p), {}));
    std::stringstream diagram;
    write_diagram(diagram, compute_persistence(read_complex(complex)));
    return read_diagram(diagram);
}

}  // namespace

TEST(Pipeline, SerializedStagesAgreeWithDirectRun) {
    const auto p = parse_preflib_file((kData / "synthetic-irish.soc").string());
    const auto direct = profile_diagram(p, {});
    const auto stored = through_files(p);
    EXPECT_TRUE(same_multiset(direct, stored));
    for (const char* m : {"ppd", "wasserstein", "bottleneck"})
        EXPECT_EQ(evaluate_metric(parse_metric_spec(m), direct.finite_points(1), stored.finite_points(1)), 0.0);
}

TEST(Pipeline, SubsetDistancesAreSymmetric) {
    const auto p = parse_preflib_file((kData / "synthetic-sushi.soc").string());
    const auto a = profile_diagram(p.slice(0, 1000), {}).finite_points(1);
    const auto b = profile_diagram(p.slice(1000, 1000), {}).finite_points(1);
    ASSERT_FALSE(a.empty());
    ASSERT_FALSE(b.empty());
    for (const char* m : {"ppd(alpha=1.5)", "wasserstein", "bottleneck", "sliced", "landscape"}) {
        const auto spec = parse_metric_spec(m);
        const double ab = evaluate_metric(spec, a, b);
        EXPECT_NEAR(ab, evaluate_metric(spec, b, a), 1e-12 * ab) << m;  // summation order may differ
        EXPECT_GT(evaluate_metric(spec, a, b), 0.0) << m;
    }
}

TEST(Pipeline, CondorcetFixture) {
    const auto p = parse_preflib_file((kData / "condorcet.soc").string());
    EXPECT_EQ(p.voter_count, 12);
    const auto d = profile_diagram(p, {});
    // The 3-cycle is filled at the moment it closes, so no H1 point survives.
    EXPECT_TRUE(d.finite_points(1).empty());
    EXPECT_EQ(d.finite_points(0).size(), 2u);
    FiltrationConfig open;
    open.expand_triangles = false;
    const auto skeleton = profile_diagram(p, open);
    ASSERT_EQ(skeleton.in_dimension(1).essential().size(), 1u);
    EXPECT_NEAR(skeleton.in_dimension(1).essential()[0].birth, 1.0 / (2 + 1e-6), 1e-12);
}

TEST(Pipeline, SpecFilesParse) {
    for (const char* name : {"irish.spec", "sushi.spec", "synthetic-irish.spec", "synthetic-sushi.spec",
                             "ic-sweep.spec"}) {
        const auto spec = parse_experiment_file((kData / name).string());
        EXPECT_FALSE(spec.metrics.empty()) << name;
    }
    const auto sushi = parse_experiment_file((kData / "sushi.spec").string());
    EXPECT_EQ(sushi.preselect_voters, std::optional<std::size_t>(1000));
    EXPECT_EQ(sushi.top_items, std::optional<std::size_t>(10));
    EXPECT_EQ(sushi.metrics[0].ppd.polar.alpha, 1.5);
}

TEST(Pipeline, BundledSweepIsStable) {
    auto spec = parse_experiment_file((kData / "ic-sweep.spec").string());
    spec.noise->trials = 10;
    const auto a = stability_sweep(spec);
    const auto b = stability_sweep(spec);
    std::ostringstream sa, sb;
    write_sweep_csv(sa, a);
    write_sweep_csv(sb, b);
    EXPECT_EQ(sa.str(), sb.str());
    for (const auto& row : a.rows)
        if (row.rate == 0.0) {
            EXPECT_EQ(row.mean, 0.0);
        }
}
