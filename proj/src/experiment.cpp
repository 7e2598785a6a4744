#include "ppd/experiment.hpp"

#include "ppd/error.hpp"
#include "ppd/parallel.hpp"
#include "ppd/persistence.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace ppd {

namespace {

enum Stream : std::uint32_t { kDataset = 0, kPreselect = 1, kSample = 2 };

std::mt19937_64 derived_rng(std::uint64_t seed, Stream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

std::size_t parse_size(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty() || text.front() == '-')
        throw ParameterError(what + " expects a non-negative integer, got '" + text + "'");
    return static_cast<std::size_t>(v);
}

double parse_double(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) throw ParameterError(what + " expects a number, got '" + text + "'");
    return v;
}

bool parse_bool(const std::string& text, const std::string& what) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ParameterError(what + " expects true or false, got '" + text + "'");
}

}  // namespace

std::string SubsetSpec::text() const {
    switch (kind) {
        case Kind::All: return "all";
        case Kind::First: return fmt::format("first:{}", count);
        case Kind::Last: return fmt::format("last:{}", count);
        case Kind::Range: return fmt::format("range:{}:{}", begin, count);
        case Kind::Sample: return fmt::format("sample:{}", count);
    }
    return "";
}

SubsetSpec parse_subset(const std::string& raw) {
    const auto parts = split(trim(raw), ':');
    SubsetSpec s;
    if (parts.empty()) throw ParameterError("empty subset");
    const auto& kind = parts[0];
    if (kind == "all" && parts.size() == 1) return s;
    if ((kind == "first" || kind == "last" || kind == "sample") && parts.size() == 2) {
        s.kind = kind == "first" ? SubsetSpec::Kind::First
                 : kind == "last" ? SubsetSpec::Kind::Last
                                  : SubsetSpec::Kind::Sample;
        s.count = parse_size(parts[1], "subset size");
    } else if (kind == "range" && parts.size() == 3) {
        s.kind = SubsetSpec::Kind::Range;
        s.begin = parse_size(parts[1], "subset start");
        s.count = parse_size(parts[2], "subset size");
    } else {
        throw ParameterError("malformed subset '" + raw + "'");
    }
    if (s.count == 0) throw ParameterError("subset size must be positive");
    return s;
}

void ExperimentSpec::validate() const {
    if (dataset.empty()) throw ParameterError("experiment needs a dataset");
    if (format != "preflib") throw ParameterError("unsupported dataset format '" + format + "'");
    if (dimension != 0 && dimension != 1) throw ParameterError("dimension must be 0 or 1");
    if (metrics.empty()) throw ParameterError("experiment lists no metrics");
    filtration.validate();
    if (noise) {
        if (noise->rates.empty()) throw ParameterError("noise needs at least one rate");
        if (noise->trials == 0) throw ParameterError("noise trials must be positive");
        for (double r : noise->rates) {
            if (!(r >= 0.0)) throw ParameterError("noise rates must be non-negative");
            if (noise->model == NoiseModel::AdjacentSwap && r > 1.0)
                throw ParameterError("adjacent-swap rates must lie in [0, 1]");
        }
    }
}

ExperimentSpec parse_experiment_spec(std::istream& in, const std::string& base_dir) {
    ExperimentSpec spec;
    std::string text;
    std::size_t line_no = 0;
    bool have_metrics = false;
    while (std::getline(in, text)) {
        ++line_no;
        if (const auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
        text = trim(text);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        try {
            if (key == "name") spec.name = value;
            else if (key == "dataset") {
                spec.dataset = value;
                if (value != "impartial_culture" && std::filesystem::path(value).is_relative())
                    spec.dataset = (std::filesystem::path(base_dir) / value).lexically_normal().string();
            } else if (key == "format") spec.format = value;
            else if (key == "alternatives") spec.ic_alternatives = parse_size(value, key);
            else if (key == "voters") spec.ic_voters = parse_size(value, key);
            else if (key == "preselect_voters") spec.preselect_voters = parse_size(value, key);
            else if (key == "top_items") spec.top_items = parse_size(value, key);
            else if (key == "subsets") {
                spec.subsets.clear();
                for (const auto& s : split(value, ',')) spec.subsets.push_back(parse_subset(s));
            } else if (key == "seed") spec.seed = parse_size(value, key);
            else if (key == "dimension") spec.dimension = static_cast<int>(parse_size(value, key));
            else if (key == "epsilon") spec.filtration.epsilon = parse_double(value, key);
            else if (key == "expand_triangles") spec.filtration.expand_triangles = parse_bool(value, key);
            else if (key == "cap") spec.filtration.cap = parse_double(value, key);
            else if (key == "metrics") {
                have_metrics = true;
                spec.metrics.clear();
                for (const auto& m : split(value, ';'))
                    if (!m.empty()) spec.metrics.push_back(parse_metric_spec(m));
            } else if (key == "noise") {
                if (!spec.noise) spec.noise.emplace();
                if (value == "adjacent_swap") spec.noise->model = NoiseModel::AdjacentSwap;
                else if (value == "gaussian_margin") spec.noise->model = NoiseModel::GaussianMargin;
                else throw ParameterError("noise must be adjacent_swap or gaussian_margin");
            } else if (key == "rates") {
                if (!spec.noise) spec.noise.emplace();
                spec.noise->rates.clear();
                for (const auto& r : split(value, ',')) spec.noise->rates.push_back(parse_double(r, key));
            } else if (key == "trials") {
                if (!spec.noise) spec.noise.emplace();
                spec.noise->trials = parse_size(value, key);
            } else if (key == "threads") spec.threads = parse_size(value, key);
            else throw ParameterError("unknown key '" + key + "'");
        } catch (const ParameterError& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    if (!have_metrics) throw ParseError("experiment lists no metrics", 0);
    spec.validate();
    return spec;
}

ExperimentSpec parse_experiment_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return parse_experiment_spec(in, std::filesystem::path(path).parent_path().string());
}

PreferenceProfile generate_impartial_culture(std::size_t alternatives, std::size_t voters, std::uint64_t seed) {
    if (alternatives < 2) throw ParameterError("impartial culture needs at least two alternatives");
    if (voters < 1) throw ParameterError("impartial culture needs at least one voter");
    std::mt19937_64 rng(seed);
    std::vector<int> ids(alternatives);
    std::iota(ids.begin(), ids.end(), 1);
    std::vector<std::vector<std::size_t>> rankings(voters, std::vector<std::size_t>(alternatives));
    for (auto& r : rankings) {
        std::iota(r.begin(), r.end(), std::size_t{0});
        std::shuffle(r.begin(), r.end(), rng);
    }
    auto p = profile_from_rankings(ids, rankings);
    for (int id : ids) p.names.push_back(std::to_string(id));
    p.source_sha256 = fmt::format("impartial_culture:n={}:N={}:seed={}", alternatives, voters, seed);
    return p;
}

PreferenceProfile perturb_profile(const PreferenceProfile& profile, double rate, std::uint64_t seed) {
    if (!(rate >= 0.0 && rate <= 1.0)) throw ParameterError("swap rate must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution flip(rate);
    auto rankings = profile.voters();
    const std::size_t n = profile.size();
    if (n >= 2) {
        std::uniform_int_distribution<std::size_t> position(0, n - 2);
        for (auto& r : rankings) {
            if (!flip(rng)) continue;
            const std::size_t k = position(rng);
            std::swap(r[k], r[k + 1]);
        }
    }
    auto out = profile_from_rankings(profile.alternatives, rankings);
    out.names = profile.names;
    out.source_sha256 = profile.source_sha256;
    return out;
}

MarginMatrix perturb_margins(const DominanceMatrix& dom, double rate, std::int64_t voter_count, std::uint64_t seed) {
    if (!(rate >= 0.0)) throw ParameterError("margin noise rate must be non-negative");
    auto w = margins(dom);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 1.0);
    const double scale = rate * static_cast<double>(voter_count);
    for (std::size_t i = 0; i < w.n; ++i)
        for (std::size_t j = i + 1; j < w.n; ++j) {
            const double noise = scale * z(rng);
            w.values[i * w.n + j] += noise;
            w.values[j * w.n + i] -= noise;
        }
    return w;
}

PreferenceProfile restrict_alternatives(const PreferenceProfile& profile, const std::vector<std::size_t>& keep) {
    std::vector<std::size_t> new_index(profile.size(), static_cast<std::size_t>(-1));
    PreferenceProfile out;
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (keep[k] >= profile.size()) throw ValidationError("alternative index out of range");
        new_index[keep[k]] = k;
        out.alternatives.push_back(profile.alternatives[keep[k]]);
        if (keep[k] < profile.names.size()) out.names.push_back(profile.names[keep[k]]);
    }
    for (const auto& b : profile.ballots) {
        Ballot nb{b.multiplicity, {}};
        for (auto a : b.ranking)
            if (new_index[a] != static_cast<std::size_t>(-1)) nb.ranking.push_back(new_index[a]);
        out.ballots.push_back(std::move(nb));
    }
    out.voter_count = profile.voter_count;
    out.source_sha256 = profile.source_sha256;
    out.validate();
    return out;
}

std::vector<std::size_t> most_popular(const PreferenceProfile& profile, std::size_t k) {
    const std::size_t n = profile.size();
    std::vector<double> position_sum(n, 0.0);
    for (const auto& b : profile.ballots)
        for (std::size_t r = 0; r < b.ranking.size(); ++r)
            position_sum[b.ranking[r]] += static_cast<double>(r) * static_cast<double>(b.multiplicity);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return position_sum[a] < position_sum[b]; });
    order.resize(std::min(k, n));
    std::sort(order.begin(), order.end());
    return order;
}

PersistenceDiagram profile_diagram(const PreferenceProfile& profile, const FiltrationConfig& cfg) {
    return compute_persistence(build_filtration(dominance(profile), cfg), cfg.cap);
}

void Provenance::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : fields)
        if (k == key) {
            v = value;
            return;
        }
    fields.emplace_back(key, value);
}

PreferenceProfile load_profile(const ExperimentSpec& spec) {
    PreferenceProfile profile =
        spec.dataset == "impartial_culture"
            ? generate_impartial_culture(spec.ic_alternatives, spec.ic_voters,
                                         derived_rng(spec.seed, kDataset)())
            : parse_preflib_file(spec.dataset);
    if (spec.preselect_voters) {
        const auto total = static_cast<std::size_t>(profile.voter_count);
        if (*spec.preselect_voters > total)
            throw ValidationError(fmt::format("cannot preselect {} of {} voters", *spec.preselect_voters, total));
        std::vector<std::size_t> perm(total);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        auto rng = derived_rng(spec.seed, kPreselect);
        std::shuffle(perm.begin(), perm.end(), rng);
        perm.resize(*spec.preselect_voters);
        std::sort(perm.begin(), perm.end());
        profile = profile.select(perm);
    }
    if (spec.top_items && *spec.top_items < profile.size())
        profile = restrict_alternatives(profile, most_popular(profile, *spec.top_items));
    return profile;
}

std::vector<PreferenceProfile> select_subsets(const PreferenceProfile& base, const ExperimentSpec& spec) {
    const auto total = static_cast<std::size_t>(base.voter_count);
    std::vector<std::size_t> perm;
    std::size_t sample_cursor = 0;
    std::vector<PreferenceProfile> out;
    for (const auto& s : spec.subsets) {
        switch (s.kind) {
            case SubsetSpec::Kind::All: out.push_back(base); break;
            case SubsetSpec::Kind::First: out.push_back(base.slice(0, s.count)); break;
            case SubsetSpec::Kind::Last:
                if (s.count > total) throw ValidationError(fmt::format("subset {} out of range for {} voters", s.text(), total));
                out.push_back(base.slice(total - s.count, s.count));
                break;
            case SubsetSpec::Kind::Range: out.push_back(base.slice(s.begin, s.count)); break;
            case SubsetSpec::Kind::Sample: {
                if (perm.empty()) {
                    perm.resize(total);
                    std::iota(perm.begin(), perm.end(), std::size_t{0});
                    auto rng = derived_rng(spec.seed, kSample);
                    std::shuffle(perm.begin(), perm.end(), rng);
                }
                if (sample_cursor + s.count > total)
                    throw ValidationError(fmt::format("disjoint samples need {} voters, only {} available",
                                                      sample_cursor + s.count, total));
                std::vector<std::size_t> pick(perm.begin() + static_cast<std::ptrdiff_t>(sample_cursor),
                                              perm.begin() + static_cast<std::ptrdiff_t>(sample_cursor + s.count));
                sample_cursor += s.count;
                std::sort(pick.begin(), pick.end());
                out.push_back(base.select(pick));
                break;
            }
        }
    }
    return out;
}

namespace {

void common_provenance(Provenance& p, const ExperimentSpec& spec, const PreferenceProfile& base) {
    p.set("experiment", spec.name);
    p.set("dataset", spec.dataset);
    p.set("dataset_sha256", base.source_sha256);
    p.set("alternatives", std::to_string(base.size()));
    p.set("voters_total", std::to_string(base.voter_count));
    p.set("preselect_voters", spec.preselect_voters ? std::to_string(*spec.preselect_voters) : "none");
    p.set("top_items", spec.top_items ? std::to_string(*spec.top_items) : "none");
    p.set("seed", std::to_string(spec.seed));
    p.set("dimension", std::to_string(spec.dimension));
    p.set("epsilon", format_real(spec.filtration.epsilon));
    p.set("expand_triangles", spec.filtration.expand_triangles ? "true" : "false");
    p.set("cap", spec.filtration.cap ? format_real(*spec.filtration.cap) : "none");
}

struct MetricOutcome {
    double value = 0.0;
    std::string note;
};

MetricOutcome try_metric(const MetricSpec& m, std::span<const DiagramPoint> a, std::span<const DiagramPoint> b) {
    try {
        return {evaluate_metric(m, a, b), ""};
    } catch (const ValidationError& e) {
        return {std::nan(""), e.what()};
    }
}

}  // namespace

ComparisonTable run_comparison(const ExperimentSpec& spec) {
    spec.validate();
    if (spec.subsets.size() != 2) throw ParameterError("a comparison needs exactly two subsets");
    const auto base = load_profile(spec);
    const auto parts = select_subsets(base, spec);
    const auto pd_a = profile_diagram(parts[0], spec.filtration);
    const auto pd_b = profile_diagram(parts[1], spec.filtration);
    const auto a = pd_a.finite_points(spec.dimension);
    const auto b = pd_b.finite_points(spec.dimension);

    ComparisonTable t;
    common_provenance(t.provenance, spec, base);
    t.provenance.set("subset_a", spec.subsets[0].text());
    t.provenance.set("subset_b", spec.subsets[1].text());
    t.provenance.set("voters_a", std::to_string(parts[0].voter_count));
    t.provenance.set("voters_b", std::to_string(parts[1].voter_count));
    t.provenance.set("points_a", std::to_string(a.size()));
    t.provenance.set("points_b", std::to_string(b.size()));
    t.provenance.set("essential_a", std::to_string(pd_a.in_dimension(spec.dimension).essential().size()));
    t.provenance.set("essential_b", std::to_string(pd_b.in_dimension(spec.dimension).essential().size()));
    for (const auto& m : spec.metrics) {
        const auto r = try_metric(m, a, b);
        t.rows.push_back({m.name(), m.display_name(), m.parameter_string(), r.value, r.note});
    }
    return t;
}

SweepTable stability_sweep(const ExperimentSpec& spec) {
    spec.validate();
    if (!spec.noise) throw ParameterError("a stability sweep needs a noise model");
    const auto base_all = load_profile(spec);
    const auto base = spec.subsets.empty() ? base_all : select_subsets(base_all, spec).front();
    const auto original = profile_diagram(base, spec.filtration).finite_points(spec.dimension);
    const auto dom = dominance(base);
    const auto& noise = *spec.noise;
    const std::size_t n_rates = noise.rates.size();
    const std::size_t n_metrics = spec.metrics.size();

    // results[(rate * trials + trial) * metrics + metric]
    std::vector<MetricOutcome> results(n_rates * noise.trials * n_metrics);
    parallel_for(n_rates * noise.trials, spec.threads, [&](std::size_t job) {
        const std::size_t r = job / noise.trials;
        const std::size_t trial = job % noise.trials;
        const double rate = noise.rates[r];
        const std::uint64_t trial_seed = spec.seed + trial;
        PersistenceDiagram perturbed;
        if (noise.model == NoiseModel::AdjacentSwap) {
            perturbed = profile_diagram(perturb_profile(base, rate, trial_seed), spec.filtration);
        } else {
            perturbed = compute_persistence(
                build_filtration(perturb_margins(dom, rate, base.voter_count, trial_seed), spec.filtration),
                spec.filtration.cap);
        }
        const auto pts = perturbed.finite_points(spec.dimension);
        for (std::size_t m = 0; m < n_metrics; ++m)
            results[job * n_metrics + m] = try_metric(spec.metrics[m], original, pts);
    });

    SweepTable t;
    common_provenance(t.provenance, spec, base_all);
    t.provenance.set("subset", spec.subsets.empty() ? "all" : spec.subsets.front().text());
    t.provenance.set("voters", std::to_string(base.voter_count));
    t.provenance.set("noise", noise.model == NoiseModel::AdjacentSwap ? "adjacent_swap" : "gaussian_margin");
    t.provenance.set("trial_seeds", fmt::format("{}..{}", spec.seed, spec.seed + noise.trials - 1));
    for (std::size_t m = 0; m < n_metrics; ++m) {
        for (std::size_t r = 0; r < n_rates; ++r) {
            SweepRow row{spec.metrics[m].name(), spec.metrics[m].parameter_string(), noise.rates[r], 0.0, 0.0, 0, 0};
            std::vector<double> values;
            for (std::size_t trial = 0; trial < noise.trials; ++trial) {
                const auto& o = results[(r * noise.trials + trial) * n_metrics + m];
                if (std::isnan(o.value)) ++row.failures;
                else values.push_back(o.value);
            }
            row.trials = values.size();
            if (!values.empty()) {
                row.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
                if (values.size() > 1) {
                    double ss = 0.0;
                    for (double v : values) ss += (v - row.mean) * (v - row.mean);
                    row.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
                }
            } else {
                row.mean = row.stddev = std::nan("");
            }
            t.rows.push_back(row);
        }
    }
    std::stable_sort(t.rows.begin(), t.rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tie(a.metric, a.rate) < std::tie(b.metric, b.rate);
    });
    return t;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    return out + "\"";
}

}  // namespace

void write_comparison_csv(std::ostream& out, const ComparisonTable& t) {
    out << "metric,display,value,parameters,note";
    for (const auto& [k, v] : t.provenance.fields) out << ',' << k;
    out << '\n';
    for (const auto& r : t.rows) {
        out << r.metric << ',' << csv_field(r.display) << ',' << format_real(r.value) << ',' << csv_field(r.parameters)
            << ',' << csv_field(r.note);
        for (const auto& [k, v] : t.provenance.fields) out << ',' << csv_field(v);
        out << '\n';
    }
}

void write_comparison_text(std::ostream& out, const ComparisonTable& t) {
    std::size_t width = 6;
    for (const auto& r : t.rows) width = std::max(width, r.display.size());
    out << fmt::format("{:<{}}  {:>12}\n", "Metric", width, "Value");
    out << std::string(width + 14, '-') << '\n';
    for (const auto& r : t.rows)
        out << fmt::format("{:<{}}  {:>12.6f}{}\n", r.display, width, r.value, r.note.empty() ? "" : "  (" + r.note + ")");
    for (const auto& [k, v] : t.provenance.fields) out << "# " << k << ": " << v << '\n';
}

void write_sweep_csv(std::ostream& out, const SweepTable& t) {
    out << "metric,rate,mean,std,trials,failures,parameters";
    for (const auto& [k, v] : t.provenance.fields) out << ',' << k;
    out << '\n';
    for (const auto& r : t.rows) {
        out << r.metric << ',' << format_real(r.rate) << ',' << format_real(r.mean) << ',' << format_real(r.stddev)
            << ',' << r.trials << ',' << r.failures << ',' << csv_field(r.parameters);
        for (const auto& [k, v] : t.provenance.fields) out << ',' << csv_field(v);
        out << '\n';
    }
}

void write_sweep_text(std::ostream& out, const SweepTable& t) {
    out << fmt::format("{:<12} {:>8} {:>14} {:>14} {:>7}\n", "metric", "rate", "mean", "std", "trials");
    for (const auto& r : t.rows)
        out << fmt::format("{:<12} {:>8.4f} {:>14.6f} {:>14.6f} {:>7}\n", r.metric, r.rate, r.mean, r.stddev, r.trials);
    for (const auto& [k, v] : t.provenance.fields) out << "# " << k << ": " << v << '\n';
}

}  // namespace ppd
