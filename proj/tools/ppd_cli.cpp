// ppd: command-line front end.
#include "json_io.hpp"

#include "ppd/distance.hpp"
#include "ppd/error.hpp"
#include "ppd/experiment.hpp"
#include "ppd/kernels.hpp"
#include "ppd/parallel.hpp"
#include "ppd/persistence.hpp"
#include "ppd/polar.hpp"
#include "ppd/preflib.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

namespace {

using namespace ppd;
using ppd::cli::json;

constexpr int kDataError = 1;
constexpr int kUsageError = 2;

struct Resolved {
    std::vector<std::pair<std::string, std::string>> items;

    template <typename T>
    Resolved& add(const std::string& key, const T& value) {
        items.emplace_back(key, fmt::format("{}", value));
        return *this;
    }

    void print(const std::string& command) const {
        std::string line = "resolved " + command + ":";
        for (const auto& [k, v] : items) line += " " + k + "=" + v;
        std::cerr << line << '\n';
    }
};

std::string real(double v) { return fmt::format("{}", v); }

// Diagrams are read from "PD v1" text or from the JSON emitted by persist --json.
PersistenceDiagram load_diagram(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    char first = 0;
    while (in.get(first) && std::isspace(static_cast<unsigned char>(first))) {
    }
    in.clear();
    in.seekg(0);
    PersistenceDiagram d;
    if (first == '{') {
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad JSON: ") + e.what(), 0);
        }
        d = cli::diagram_from_json(j);
    } else {
        d = read_diagram(in);
    }
    if (d.label.empty()) d.label = path;
    return d;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    auto out = open_output(path);
    fn(out);
}

struct FiltrationFlags {
    double epsilon = 1e-6;
    bool no_triangles = false;
    double cap = std::numeric_limits<double>::quiet_NaN();

    void attach(CLI::App* cmd) {
        cmd->add_option("--epsilon", epsilon, "Edge value is 1/(|margin| + epsilon)")->capture_default_str();
        cmd->add_flag("--no-triangles", no_triangles, "Keep only the 1-skeleton (no flag expansion)");
        cmd->add_option("--cap", cap, "Report essential classes as finite points dying at this value");
    }

    FiltrationConfig config() const {
        FiltrationConfig cfg;
        cfg.epsilon = epsilon;
        cfg.expand_triangles = !no_triangles;
        if (!std::isnan(cap)) cfg.cap = cap;
        cfg.validate();
        return cfg;
    }

    void report(Resolved& r, const FiltrationConfig& cfg) const {
        r.add("epsilon", real(cfg.epsilon))
            .add("expand_triangles", cfg.expand_triangles)
            .add("cap", cfg.cap ? real(*cfg.cap) : "none");
    }
};

void check_format(const std::string& format) {
    if (format != "preflib") throw ParameterError("unsupported input format '" + format + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persistent homology of ranked-preference data and persistence diagram distances"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::size_t threads = 0;
    app.add_option("--threads", threads, "Worker cap (0: PPD_THREADS or hardware concurrency)")->capture_default_str();

    std::function<void()> action;

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Parse a SOC file; write the dominance matrix and filtered complex");
    std::string ingest_input, ingest_format = "preflib", ingest_out;
    FiltrationFlags ingest_filt;
    ingest->add_option("--input", ingest_input, "SOC ballot file")->required();
    ingest->add_option("--format", ingest_format, "Input format")->capture_default_str();
    ingest->add_option("--out", ingest_out, "Output prefix: PREFIX.dominance.csv and PREFIX.complex")->required();
    ingest_filt.attach(ingest);
    ingest->callback([&] {
        action = [&] {
            check_format(ingest_format);
            const auto cfg = ingest_filt.config();
            Resolved r;
            r.add("input", ingest_input).add("format", ingest_format).add("out", ingest_out);
            ingest_filt.report(r, cfg);
            r.print("ingest");
            const auto profile = parse_preflib_file(ingest_input);
            const auto dom = dominance(profile);
            const auto complex = build_filtration(dom, cfg);
            auto csv = open_output(ingest_out + ".dominance.csv");
            write_dominance_csv(csv, dom);
            auto cx = open_output(ingest_out + ".complex");
            write_complex(cx, complex);
            std::cerr << fmt::format("alternatives={} voters={} sha256={} simplices={}\n", profile.size(),
                                     profile.voter_count, profile.source_sha256, complex.simplices().size());
        };
    });

    // persist
    auto* persist = app.add_subcommand("persist", "Compute the persistence diagram of a SOC file or complex file");
    std::string persist_input, persist_format = "preflib", persist_out;
    bool persist_json = false;
    FiltrationFlags persist_filt;
    persist->add_option("--input", persist_input, "SOC ballot file or complex file")->required();
    persist->add_option("--format", persist_format, "preflib or complex")->capture_default_str();
    persist->add_option("--out", persist_out, "Output file (default: standard output)");
    persist->add_flag("--json", persist_json, "Emit JSON instead of 'PD v1' text");
    persist_filt.attach(persist);
    persist->callback([&] {
        action = [&] {
            const auto cfg = persist_filt.config();
            Resolved r;
            r.add("input", persist_input).add("format", persist_format);
            persist_filt.report(r, cfg);
            r.add("json", persist_json);
            r.print("persist");
            FilteredComplex complex;
            if (persist_format == "complex") {
                std::ifstream in(persist_input);
                if (!in) throw IoError("cannot open " + persist_input);
                complex = read_complex(in);
            } else {
                check_format(persist_format);
                complex = build_filtration(dominance(parse_preflib_file(persist_input)), cfg);
            }
            auto diagram = compute_persistence(complex, cfg.cap);
            diagram.label = persist_input;
            with_output(persist_out, [&](std::ostream& out) {
                if (persist_json) out << cli::diagram_to_json(diagram).dump(2) << '\n';
                else write_diagram(out, diagram);
            });
        };
    });

    // compare
    auto* compare = app.add_subcommand("compare", "Distance between two persistence diagrams");
    std::string cmp_a, cmp_b, cmp_metric = "ppd", cmp_aggregate = "sum", cmp_diagonal = "project",
                                cmp_ground = "linf";
    double cmp_alpha = 1.0, cmp_p = 1.0, cmp_exclusion = 1e-9, cmp_weight = 1.0;
    int cmp_dim = 1;
    std::size_t cmp_directions = 64, cmp_kmax = 5, cmp_grid = 512;
    std::uint64_t cmp_seed = 0;
    bool cmp_json = false;
    compare->add_option("--a", cmp_a, "First diagram")->required();
    compare->add_option("--b", cmp_b, "Second diagram")->required();
    compare->add_option("--metric", cmp_metric, "bottleneck|wasserstein|sliced|ppd|landscape|silhouette|entropy")
        ->capture_default_str();
    compare->add_option("--alpha", cmp_alpha, "PPD angular weight")->capture_default_str();
    compare->add_option("--p", cmp_p, "Order for wasserstein, sliced, landscape, silhouette")->capture_default_str();
    compare->add_option("--dim", cmp_dim, "Homology dimension")->capture_default_str()->check(CLI::Range(0, 1));
    compare->add_option("--aggregate", cmp_aggregate, "PPD aggregate: sum or max")->capture_default_str();
    compare->add_option("--diagonal", cmp_diagonal, "PPD diagonal handling: project or exclude")
        ->capture_default_str();
    compare->add_option("--exclusion-radius", cmp_exclusion, "PPD origin mask radius")->capture_default_str();
    compare->add_option("--ground", cmp_ground, "Ground metric: linf or l2")->capture_default_str();
    compare->add_option("--directions", cmp_directions, "Sliced directions")->capture_default_str();
    auto* seed_opt = compare->add_option("--direction-seed", cmp_seed, "Random sliced directions from this seed");
    compare->add_option("--k-max", cmp_kmax, "Landscape levels")->capture_default_str();
    compare->add_option("--grid", cmp_grid, "Landscape/silhouette grid samples")->capture_default_str();
    compare->add_option("--weight-exponent", cmp_weight, "Silhouette weight exponent")->capture_default_str();
    compare->add_flag("--json", cmp_json, "Emit JSON with full precision");
    compare->callback([&] {
        action = [&] {
            std::string spec_text = fmt::format(
                "{}(alpha={},p={},exclusion_radius={},aggregate={},diagonal={},ground={},directions={},k_max={},"
                "grid={},weight_exponent={}{})",
                cmp_metric, real(cmp_alpha), real(cmp_p), real(cmp_exclusion), cmp_aggregate, cmp_diagonal,
                cmp_ground, cmp_directions, cmp_kmax, cmp_grid, real(cmp_weight),
                seed_opt->count() ? fmt::format(",direction_seed={}", cmp_seed) : "");
            const auto spec = parse_metric_spec(spec_text);
            Resolved r;
            r.add("a", cmp_a).add("b", cmp_b).add("metric", spec.name()).add("dim", cmp_dim);
            r.items.emplace_back("params", spec.parameter_string());
            r.print("compare");
            const auto da = load_diagram(cmp_a);
            const auto db = load_diagram(cmp_b);
            for (const auto* d : {&da, &db})
                if (!d->has_dimension(cmp_dim))
                    throw ValidationError(fmt::format("diagram {} has no points in dimension {}", d->label, cmp_dim));
            const double value = evaluate_metric(spec, da.finite_points(cmp_dim), db.finite_points(cmp_dim));
            if (cmp_json) {
                json j = {{"metric", spec.name()}, {"dim", cmp_dim}, {"parameters", spec.parameter_string()},
                          {"a", cmp_a}, {"b", cmp_b}};
                j["value"] = value;
                std::cout << j.dump() << '\n';
            } else {
                std::cout << fmt::format("{:.9f}\n", value);
            }
        };
    });

    // gram
    auto* gram_cmd = app.add_subcommand("gram", "Kernel Gram matrix over a set of diagrams");
    std::vector<std::string> gram_inputs;
    std::string gram_kernel = "pssk", gram_out;
    KernelParams kp;
    int gram_dim = 1;
    gram_cmd->add_option("diagrams", gram_inputs, "Diagram files")->required();
    gram_cmd->add_option("--kernel", gram_kernel, "pssk|pwgk|heat|sw|kw")->capture_default_str();
    gram_cmd->add_option("--sigma", kp.sigma, "Bandwidth")->capture_default_str();
    gram_cmd->add_option("--t", kp.t, "Heat diffusion time")->capture_default_str();
    gram_cmd->add_option("--C", kp.C, "PWGK weight scale")->capture_default_str();
    gram_cmd->add_option("--q", kp.q, "PWGK weight exponent")->capture_default_str();
    gram_cmd->add_option("--directions", kp.sw_directions, "Sliced directions")->capture_default_str();
    gram_cmd->add_option("--p", kp.wasserstein_p, "Order for sw and kw kernels")->capture_default_str();
    gram_cmd->add_option("--dim", gram_dim, "Homology dimension")->capture_default_str()->check(CLI::Range(0, 1));
    gram_cmd->add_option("--out", gram_out, "CSV output (default: standard output)");
    gram_cmd->callback([&] {
        action = [&] {
            const auto kind = parse_kernel_kind(gram_kernel);
            kp.validate();
            Resolved r;
            r.add("kernel", kernel_name(kind)).add("sigma", real(kp.sigma)).add("t", real(kp.t))
                .add("C", real(kp.C)).add("q", real(kp.q)).add("directions", kp.sw_directions)
                .add("p", real(kp.wasserstein_p)).add("dim", gram_dim).add("diagrams", gram_inputs.size())
                .add("threads", threads ? threads : default_thread_count());
            r.print("gram");
            std::vector<std::vector<DiagramPoint>> diagrams;
            for (const auto& path : gram_inputs) diagrams.push_back(load_diagram(path).finite_points(gram_dim));
            const auto g = gram(diagrams, kind, kp, gram_inputs, threads);
            with_output(gram_out, [&](std::ostream& out) { write_gram_csv(out, g); });
        };
    });

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run an experiment spec: comparison table or noise sweep");
    std::string sweep_spec, sweep_out, sweep_table = "csv";
    std::string sweep_dataset;
    std::uint64_t sweep_seed = 0;
    sweep->add_option("--spec", sweep_spec, "Experiment spec file")->required();
    sweep->add_option("--out", sweep_out, "Output file (default: standard output)");
    sweep->add_option("--table", sweep_table, "csv or text")->capture_default_str()->check(
        CLI::IsMember({"csv", "text"}));
    auto* sweep_seed_opt = sweep->add_option("--seed", sweep_seed, "Override the spec seed");
    sweep->add_option("--dataset", sweep_dataset, "Override the spec dataset path");
    sweep->callback([&] {
        action = [&] {
            auto spec = parse_experiment_file(sweep_spec);
            if (sweep_seed_opt->count()) spec.seed = sweep_seed;
            if (!sweep_dataset.empty()) spec.dataset = sweep_dataset;
            if (threads) spec.threads = threads;
            Resolved r;
            r.add("spec", sweep_spec).add("dataset", spec.dataset).add("seed", spec.seed)
                .add("dimension", spec.dimension).add("epsilon", real(spec.filtration.epsilon))
                .add("expand_triangles", spec.filtration.expand_triangles)
                .add("threads", spec.threads ? spec.threads : default_thread_count());
            for (const auto& m : spec.metrics) r.add(m.name(), m.parameter_string());
            r.print("sweep");
            if (spec.noise) {
                const auto t = stability_sweep(spec);
                with_output(sweep_out, [&](std::ostream& out) {
                    sweep_table == "csv" ? write_sweep_csv(out, t) : write_sweep_text(out, t);
                });
            } else {
                const auto t = run_comparison(spec);
                with_output(sweep_out, [&](std::ostream& out) {
                    sweep_table == "csv" ? write_comparison_csv(out, t) : write_comparison_text(out, t);
                });
            }
        };
    });

    // embed
    auto* embed = app.add_subcommand("embed", "Polar embedding of each finite diagram point");
    std::string embed_input, embed_out;
    double embed_alpha = 1.0;
    int embed_dim = 1;
    embed->add_option("--input", embed_input, "Diagram file")->required();
    embed->add_option("--alpha", embed_alpha, "Angular weight")->capture_default_str();
    embed->add_option("--dim", embed_dim, "Homology dimension")->capture_default_str()->check(CLI::Range(0, 1));
    embed->add_option("--out", embed_out, "CSV output (default: standard output)");
    embed->callback([&] {
        action = [&] {
            PolarParams params;
            params.alpha = embed_alpha;
            params.validate();
            Resolved r;
            r.add("input", embed_input).add("alpha", real(embed_alpha)).add("dim", embed_dim);
            r.print("embed");
            const auto d = load_diagram(embed_input);
            with_output(embed_out, [&](std::ostream& out) {
                out << "birth,death,x,y,z\n";
                for (const auto& p : d.finite_points(embed_dim)) {
                    const auto e = polar_embed(p, params);
                    out << real(p.birth) << ',' << real(p.death) << ',' << real(e[0]) << ',' << real(e[1]) << ','
                        << real(e[2]) << '\n';
                }
            });
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        action();
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    }
    return 0;
}
