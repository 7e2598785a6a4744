#pragma once

#include "ppd/distance.hpp"
#include "ppd/preflib.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ppd {

enum class NoiseModel { AdjacentSwap, GaussianMargin };

struct NoiseSpec {
    NoiseModel model = NoiseModel::AdjacentSwap;
    std::vector<double> rates;
    std::size_t trials = 1;
};

/// Voter selection: "all", "first:K", "last:K", "range:B:K", "sample:K".
/// Sample subsets are disjoint: each takes the next K voters of one seeded permutation.
struct SubsetSpec {
    enum class Kind { All, First, Last, Range, Sample };
    Kind kind = Kind::All;
    std::size_t begin = 0;
    std::size_t count = 0;

    std::string text() const;
};

SubsetSpec parse_subset(const std::string& text);

struct ExperimentSpec {
    std::string name = "experiment";
    std::string dataset;            // SOC path, or "impartial_culture"
    std::string format = "preflib";
    std::size_t ic_alternatives = 5;
    std::size_t ic_voters = 1000;
    std::optional<std::size_t> preselect_voters;
    std::optional<std::size_t> top_items;
    std::vector<SubsetSpec> subsets;
    std::uint64_t seed = 0;
    int dimension = 1;
    FiltrationConfig filtration;
    std::vector<MetricSpec> metrics;
    std::optional<NoiseSpec> noise;
    std::size_t threads = 0;

    void validate() const;
};

/// "key = value" lines, '#' comments. Metrics are separated by ';'. Paths are
/// resolved relative to `base_dir` when not absolute.
ExperimentSpec parse_experiment_spec(std::istream& in, const std::string& base_dir = ".");
ExperimentSpec parse_experiment_file(const std::string& path);

PreferenceProfile generate_impartial_culture(std::size_t alternatives, std::size_t voters, std::uint64_t seed);

/// Each voter independently applies one uniformly chosen adjacent transposition with
/// probability `rate`. The result has one ballot per voter.
PreferenceProfile perturb_profile(const PreferenceProfile& profile, double rate, std::uint64_t seed);

/// Adds rate * N * z_ij (z standard normal) to each margin above the diagonal and
/// mirrors it below, keeping the matrix antisymmetric.
MarginMatrix perturb_margins(const DominanceMatrix& dom, double rate, std::int64_t voter_count,
                             std::uint64_t seed);

/// Keeps the listed alternatives (indices) in every ranking, preserving relative order.
PreferenceProfile restrict_alternatives(const PreferenceProfile& profile, const std::vector<std::size_t>& keep);

/// The k alternatives with the best (lowest) mean rank position, in index order.
std::vector<std::size_t> most_popular(const PreferenceProfile& profile, std::size_t k);

/// Profile -> dominance -> filtration -> persistence.
PersistenceDiagram profile_diagram(const PreferenceProfile& profile, const FiltrationConfig& cfg);

struct Provenance {
    std::vector<std::pair<std::string, std::string>> fields;

    void set(const std::string& key, const std::string& value);
};

struct ComparisonRow {
    std::string metric;
    std::string display;
    std::string parameters;
    double value = 0.0;
    std::string note;
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;
    Provenance provenance;
};

struct SweepRow {
    std::string metric;
    std::string parameters;
    double rate = 0.0;
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t trials = 0;
    std::size_t failures = 0;  // trials where the metric was undefined
};

struct SweepTable {
    std::vector<SweepRow> rows;  // sorted by (metric, rate)
    Provenance provenance;
};

/// Loads the dataset and applies preselection / item filtering.
PreferenceProfile load_profile(const ExperimentSpec& spec);

/// Voter subsets in the order listed by the spec.
std::vector<PreferenceProfile> select_subsets(const PreferenceProfile& base, const ExperimentSpec& spec);

ComparisonTable run_comparison(const ExperimentSpec& spec);
SweepTable stability_sweep(const ExperimentSpec& spec);

void write_comparison_csv(std::ostream& out, const ComparisonTable& t);
void write_comparison_text(std::ostream& out, const ComparisonTable& t);
void write_sweep_csv(std::ostream& out, const SweepTable& t);
void write_sweep_text(std::ostream& out, const SweepTable& t);

}  // namespace ppd
