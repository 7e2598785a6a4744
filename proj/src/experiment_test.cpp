#include "ppd/error.hpp"
#include "ppd/experiment.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

using namespace ppd;

namespace {

ExperimentSpec parse(const std::string& text) {
    std::istringstream in(text);
    return parse_experiment_spec(in, ".");
}

std::string ic_spec(const std::string& extra) {
    return "name = test\n"
           "dataset = impartial_culture\n"
           "alternatives = 5\n"
           "voters = 400\n"
           "seed = 7\n"
           "dimension = 0\n"
           "metrics = ppd(alpha=1.5); wasserstein; bottleneck\n" +
           extra;
}

std::string provenance(const Provenance& p, const std::string& key) {
    for (const auto& [k, v] : p.fields)
        if (k == key) return v;
    return "<missing>";
}

}  // namespace

TEST(Spec, Parse) {
    const auto s = parse(
        "# comment\n"
        "name = irish\n"
        "dataset = impartial_culture\n"
        "subsets = first:100, last:100\n"
        "seed = 42\n"
        "epsilon = 1e-5\n"
        "expand_triangles = false\n"
        "metrics = ppd(alpha=1.5,aggregate=max); w1; bottleneck\n"
        "noise = gaussian_margin\n"
        "rates = 0, 0.1\n"
        "trials = 3\n");
    EXPECT_EQ(s.name, "irish");
    ASSERT_EQ(s.subsets.size(), 2u);
    EXPECT_EQ(s.subsets[1].kind, SubsetSpec::Kind::Last);
    EXPECT_EQ(s.subsets[1].text(), "last:100");
    EXPECT_EQ(s.seed, 42u);
    EXPECT_EQ(s.filtration.epsilon, 1e-5);
    EXPECT_FALSE(s.filtration.expand_triangles);
    ASSERT_EQ(s.metrics.size(), 3u);
    EXPECT_EQ(s.metrics[0].ppd.polar.alpha, 1.5);
    ASSERT_TRUE(s.noise);
    EXPECT_EQ(s.noise->model, NoiseModel::GaussianMargin);
    EXPECT_EQ(s.noise->trials, 3u);
}

TEST(Spec, Errors) {
    try {
        parse("dataset = x.soc\nbogus = 1\nmetrics = ppd\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(parse("dataset = impartial_culture\n"), ParseError);
    EXPECT_THROW(parse("dataset = impartial_culture\nmetrics = ppd\nrates = 1.5\ntrials = 2\n"), ParameterError);
    EXPECT_THROW(parse("dataset = impartial_culture\nmetrics = ppd\nsubsets = middle:4\n"), ParseError);
    EXPECT_THROW(parse("dataset = impartial_culture\nmetrics = ppd\ndimension = 2\n"), ParameterError);
}

TEST(Subsets, ParseForms) {
    EXPECT_EQ(parse_subset("all").kind, SubsetSpec::Kind::All);
    const auto r = parse_subset("range:10:20");
    EXPECT_EQ(r.begin, 10u);
    EXPECT_EQ(r.count, 20u);
    EXPECT_EQ(parse_subset("sample:500").text(), "sample:500");
    EXPECT_THROW(parse_subset("first:0"), ParameterError);
    EXPECT_THROW(parse_subset("first:-3"), ParameterError);
}

TEST(ImpartialCulture, LawOfLargeNumbers) {
    const auto p = generate_impartial_culture(2, 10000, 1);
    const auto d = dominance(p);
    EXPECT_NEAR(static_cast<double>(d.count(0, 1)) / 10000.0, 0.5, 0.02);
}

TEST(ImpartialCulture, DeterministicAndBounded) {
    const auto a = generate_impartial_culture(4, 50, 9), b = generate_impartial_culture(4, 50, 9);
    EXPECT_EQ(a.voters(), b.voters());
    EXPECT_NE(a.voters(), generate_impartial_culture(4, 50, 10).voters());
    EXPECT_THROW(generate_impartial_culture(1, 10, 0), ParameterError);
    EXPECT_THROW(generate_impartial_culture(3, 0, 0), ParameterError);
}

TEST(Perturb, SwapNoise) {
    const auto p = generate_impartial_culture(5, 200, 3);
    EXPECT_EQ(perturb_profile(p, 0.0, 1).voters(), p.voters());
    EXPECT_EQ(perturb_profile(p, 0.3, 5).voters(), perturb_profile(p, 0.3, 5).voters());
    const auto two = generate_impartial_culture(2, 100, 4);
    const auto flipped = perturb_profile(two, 1.0, 8);
    const auto before = two.voters(), after = flipped.voters();
    for (std::size_t v = 0; v < before.size(); ++v) {
        auto rev = before[v];
        std::reverse(rev.begin(), rev.end());
        EXPECT_EQ(after[v], rev);
    }
    EXPECT_THROW(perturb_profile(p, 1.5, 1), ParameterError);
}

TEST(Perturb, MarginNoiseKeepsAntisymmetry) {
    const auto d = dominance(generate_impartial_culture(6, 300, 2));
    const auto w = perturb_margins(d, 0.05, 300, 11);
    for (std::size_t i = 0; i < w.n; ++i)
        for (std::size_t j = 0; j < w.n; ++j) EXPECT_EQ(w.values[i * w.n + j], -w.values[j * w.n + i]);
    const auto same = perturb_margins(d, 0.0, 300, 11);
    const auto exact = margins(d);
    EXPECT_EQ(same.values, exact.values);
}

TEST(Popularity, TopItemsByMeanRank) {
    const auto p = profile_from_rankings({1, 2, 3, 4}, {{2, 0, 1, 3}, {2, 1, 0, 3}, {0, 2, 3, 1}});
    const auto top = most_popular(p, 2);
    EXPECT_EQ(top, (std::vector<std::size_t>{0, 2}));
    const auto r = restrict_alternatives(p, top);
    EXPECT_EQ(r.alternatives, (std::vector<int>{1, 3}));
    EXPECT_EQ(r.voters()[0], (std::vector<std::size_t>{1, 0}));
}

TEST(Subsets, SelectionRules) {
    auto spec = parse(ic_spec("subsets = first:100, last:100, range:50:10, sample:150, sample:150\n"));
    const auto base = load_profile(spec);
    const auto parts = select_subsets(base, spec);
    ASSERT_EQ(parts.size(), 5u);
    const auto all = base.voters();
    EXPECT_EQ(parts[0].voters(), std::vector(all.begin(), all.begin() + 100));
    EXPECT_EQ(parts[1].voters(), std::vector(all.end() - 100, all.end()));
    EXPECT_EQ(parts[2].voters(), std::vector(all.begin() + 50, all.begin() + 60));
    EXPECT_EQ(parts[3].voter_count, 150);
    spec.subsets = {parse_subset("sample:300"), parse_subset("sample:300")};
    EXPECT_THROW(select_subsets(base, spec), ValidationError);
    spec.subsets = {parse_subset("range:390:20")};
    EXPECT_THROW(select_subsets(base, spec), ValidationError);
}

TEST(Comparison, IdenticalSubsetsGiveZero) {
    const auto t = run_comparison(parse(ic_spec("subsets = first:200, first:200\n")));
    ASSERT_EQ(t.rows.size(), 3u);
    for (const auto& r : t.rows) EXPECT_EQ(r.value, 0.0) << r.metric;
}

TEST(Comparison, DisjointSubsetsAndProvenance) {
    const auto t = run_comparison(parse(ic_spec("subsets = first:200, last:200\n")));
    EXPECT_EQ(t.rows[0].metric, "ppd");
    EXPECT_EQ(t.rows[1].metric, "wasserstein");
    EXPECT_EQ(t.rows[2].metric, "bottleneck");
    for (const auto& r : t.rows) EXPECT_GT(r.value, 0.0) << r.metric;
    EXPECT_EQ(provenance(t.provenance, "seed"), "7");
    EXPECT_EQ(provenance(t.provenance, "dimension"), "0");
    EXPECT_NE(provenance(t.provenance, "epsilon"), "<missing>");
    EXPECT_NE(t.rows[0].parameters.find("alpha=1.5"), std::string::npos);
}

TEST(Comparison, ReproducibleTables) {
    const auto spec = parse(ic_spec("subsets = sample:150, sample:150\n"));
    std::ostringstream a, b;
    write_comparison_csv(a, run_comparison(spec));
    write_comparison_csv(b, run_comparison(spec));
    EXPECT_EQ(a.str(), b.str());
    std::ostringstream text;
    write_comparison_text(text, run_comparison(spec));
    EXPECT_NE(text.str().find("# seed: 7"), std::string::npos);
}

TEST(Comparison, EntropyOnEmptyDiagramIsReported) {
    // A single dominant order leaves H1 empty.
    auto spec = parse(ic_spec("subsets = first:1, first:1\ndimension = 1\nmetrics = entropy; wasserstein\n"));
    const auto t = run_comparison(spec);
    EXPECT_TRUE(std::isnan(t.rows[0].value));
    EXPECT_FALSE(t.rows[0].note.empty());
    EXPECT_EQ(t.rows[1].value, 0.0);
}

TEST(Comparison, NeedsTwoSubsets) {
    EXPECT_THROW(run_comparison(parse(ic_spec("subsets = first:10\n"))), ParameterError);
}

TEST(Sweep, RateZeroAndOrdering) {
    const auto t = stability_sweep(parse(ic_spec("noise = adjacent_swap\nrates = 0.5, 0, 0.2\ntrials = 4\n")));
    ASSERT_EQ(t.rows.size(), 9u);
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        EXPECT_LE(std::tie(t.rows[i - 1].metric, t.rows[i - 1].rate), std::tie(t.rows[i].metric, t.rows[i].rate));
    for (const auto& r : t.rows) {
        if (r.rate == 0.0) {
            EXPECT_EQ(r.mean, 0.0);
            EXPECT_EQ(r.stddev, 0.0);
        }
        EXPECT_EQ(r.trials, 4u);
    }
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
    auto spec = parse(ic_spec("noise = gaussian_margin\nrates = 0.01, 0.05\ntrials = 6\n"));
    spec.threads = 1;
    std::ostringstream a, b;
    write_sweep_csv(a, stability_sweep(spec));
    spec.threads = 3;
    write_sweep_csv(b, stability_sweep(spec));
    EXPECT_EQ(a.str(), b.str());
}

TEST(Sweep, WassersteinGrowsWithRate) {
    auto spec = parse(ic_spec("noise = adjacent_swap\nrates = 0, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0\ntrials = 50\n"
                              "metrics = wasserstein\nvoters = 200\n"));
    const auto t = stability_sweep(spec);
    int inversions = 0;
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        if (t.rows[i].mean < t.rows[i - 1].mean) ++inversions;
    EXPECT_LE(inversions, 1);
    EXPECT_GT(t.rows.back().mean, t.rows.front().mean);
}
