#include "ppd/classical.hpp"
#include "ppd/distance.hpp"
#include "ppd/error.hpp"
#include "ppd/polar.hpp"
#include "ppd/summaries.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ppd;

TEST(MetricSpec, ParseDefaultsAndKeys) {
    const auto plain = parse_metric_spec("ppd");
    EXPECT_EQ(plain.kind, MetricKind::Ppd);
    EXPECT_EQ(plain.ppd.polar.alpha, 1.0);
    const auto s = parse_metric_spec("ppd(alpha=1.5, aggregate=max, diagonal=exclude)");
    EXPECT_EQ(s.ppd.polar.alpha, 1.5);
    EXPECT_EQ(s.ppd.aggregate, Aggregate::Max);
    EXPECT_EQ(s.ppd.diagonal_mode, DiagonalMode::Exclude);
    EXPECT_EQ(parse_metric_spec("w1").kind, MetricKind::Wasserstein);
    EXPECT_EQ(parse_metric_spec("wasserstein(p=2)").classical.p, 2.0);
    EXPECT_EQ(parse_metric_spec("landscape(p=inf,k_max=3)").k_max, 3u);
    EXPECT_THROW(parse_metric_spec("fisher"), ParameterError);
    EXPECT_THROW(parse_metric_spec("ppd(beta=2)"), ParameterError);
    EXPECT_THROW(parse_metric_spec("ppd(alpha=1"), ParameterError);
    EXPECT_THROW(parse_metric_spec("ppd(alpha=x)"), ParameterError);
}

TEST(MetricSpec, ParameterStringMentionsEveryTunable) {
    const auto s = parse_metric_spec("ppd(alpha=1.5)");
    EXPECT_NE(s.parameter_string().find("alpha=1.5"), std::string::npos);
    EXPECT_NE(s.parameter_string().find("aggregate=sum"), std::string::npos);
    EXPECT_NE(s.parameter_string().find("diagonal=project"), std::string::npos);
}

TEST(Evaluate, MatchesDirectCalls) {
    std::mt19937_64 rng(300);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = testing_support::random_diagram(rng, 6), b = testing_support::random_diagram(rng, 6);
        const auto ppd = parse_metric_spec("ppd(alpha=1.5)");
        EXPECT_EQ(evaluate_metric(ppd, a, b), ppd_diagram(a, b, ppd.ppd).value);
        EXPECT_EQ(evaluate_metric(parse_metric_spec("bottleneck"), a, b), bottleneck(a, b));
        EXPECT_EQ(evaluate_metric(parse_metric_spec("wasserstein"), a, b), wasserstein(a, b, MetricParams{}));
        EXPECT_EQ(evaluate_metric(parse_metric_spec("sliced"), a, b), sliced_wasserstein(a, b, MetricParams{}));
        const auto g = shared_grid(a, b, 512);
        EXPECT_EQ(evaluate_metric(parse_metric_spec("landscape"), a, b),
                  landscape_distance(landscape(a, 5, g), landscape(b, 5, g), 1.0));
        EXPECT_EQ(evaluate_metric(parse_metric_spec("silhouette"), a, b),
                  silhouette_distance(silhouette(a, 1.0, g), silhouette(b, 1.0, g), 1.0));
    }
}

TEST(Evaluate, IdenticalDiagramsGiveZero) {
    const std::vector<DiagramPoint> d{{0, 2, 1}, {1, 3, 1}};
    for (const char* m : {"ppd", "wasserstein", "bottleneck", "sliced", "landscape", "silhouette", "entropy"})
        EXPECT_EQ(evaluate_metric(parse_metric_spec(m), d, d), 0.0) << m;
}
