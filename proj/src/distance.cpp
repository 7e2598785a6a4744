#include "ppd/distance.hpp"

#include "ppd/error.hpp"
#include "ppd/summaries.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace ppd {

namespace {

double parse_number(const std::string& key, const std::string& value) {
    if (value == "inf") return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != value.size() || value.empty())
        throw ParameterError("parameter " + key + " expects a number, got '" + value + "'");
    return v;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    if (!(v >= 1.0) || v != std::floor(v) || !std::isfinite(v))
        throw ParameterError("parameter " + key + " expects a positive integer, got '" + value + "'");
    return static_cast<std::size_t>(v);
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

}  // namespace

MetricKind parse_metric_kind(const std::string& name) {
    if (name == "ppd") return MetricKind::Ppd;
    if (name == "wasserstein" || name == "w1" || name == "wp") return MetricKind::Wasserstein;
    if (name == "bottleneck") return MetricKind::Bottleneck;
    if (name == "sliced" || name == "sw") return MetricKind::Sliced;
    if (name == "landscape") return MetricKind::Landscape;
    if (name == "silhouette") return MetricKind::Silhouette;
    if (name == "entropy") return MetricKind::Entropy;
    throw ParameterError("unknown metric '" + name + "'");
}

std::string MetricSpec::name() const {
    switch (kind) {
        case MetricKind::Ppd: return "ppd";
        case MetricKind::Wasserstein: return "wasserstein";
        case MetricKind::Bottleneck: return "bottleneck";
        case MetricKind::Sliced: return "sliced";
        case MetricKind::Landscape: return "landscape";
        case MetricKind::Silhouette: return "silhouette";
        case MetricKind::Entropy: return "entropy";
    }
    return "unknown";
}

std::string MetricSpec::display_name() const {
    switch (kind) {
        case MetricKind::Ppd:
            return fmt::format("Polar Persistence Distance (PPD, alpha={})", format_real(ppd.polar.alpha));
        case MetricKind::Wasserstein:
            return fmt::format("{}-Wasserstein Distance W{}", format_real(classical.p), format_real(classical.p));
        case MetricKind::Bottleneck: return "Bottleneck Distance";
        case MetricKind::Sliced: return "Sliced Wasserstein Distance";
        case MetricKind::Landscape: return "Persistence Landscape Distance";
        case MetricKind::Silhouette: return "Persistence Silhouette Distance";
        case MetricKind::Entropy: return "Persistence Entropy Distance";
    }
    return "unknown";
}

std::string MetricSpec::parameter_string() const {
    const char* ground = classical.ground == GroundMetric::Linf ? "linf" : "l2";
    switch (kind) {
        case MetricKind::Ppd:
            return fmt::format("alpha={};exclusion_radius={};aggregate={};diagonal={}", format_real(ppd.polar.alpha),
                               format_real(ppd.polar.exclusion_radius),
                               ppd.aggregate == Aggregate::Sum ? "sum" : "max",
                               ppd.diagonal_mode == DiagonalMode::Project ? "project" : "exclude");
        case MetricKind::Wasserstein: return fmt::format("p={};ground={}", format_real(classical.p), ground);
        case MetricKind::Bottleneck: return fmt::format("ground={}", ground);
        case MetricKind::Sliced:
            return fmt::format("p={};directions={};direction_seed={}", format_real(classical.p), classical.directions,
                               classical.direction_seed ? std::to_string(*classical.direction_seed) : "midpoint");
        case MetricKind::Landscape:
            return fmt::format("p={};k_max={};grid={}", format_real(lp), k_max, grid_samples);
        case MetricKind::Silhouette:
            return fmt::format("p={};weight_exponent={};grid={}", format_real(lp), format_real(weight_exponent),
                               grid_samples);
        case MetricKind::Entropy: return "log=natural";
    }
    return "";
}

MetricSpec parse_metric_spec(const std::string& raw) {
    const std::string text = trim(raw);
    MetricSpec spec;
    const auto open = text.find('(');
    spec.kind = parse_metric_kind(trim(text.substr(0, open)));
    if (open == std::string::npos) return spec;
    if (text.back() != ')') throw ParameterError("metric '" + text + "' is missing ')'");
    std::string body = text.substr(open + 1, text.size() - open - 2);
    std::size_t start = 0;
    while (start <= body.size()) {
        const auto comma = body.find(',', start);
        const std::string item = trim(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        start = comma == std::string::npos ? body.size() + 1 : comma + 1;
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParameterError("expected key=value in '" + item + "'");
        const std::string key = trim(item.substr(0, eq));
        const std::string value = trim(item.substr(eq + 1));
        if (key == "alpha") spec.ppd.polar.alpha = parse_number(key, value);
        else if (key == "exclusion_radius") spec.ppd.polar.exclusion_radius = parse_number(key, value);
        else if (key == "aggregate") {
            if (value == "sum") spec.ppd.aggregate = Aggregate::Sum;
            else if (value == "max") spec.ppd.aggregate = Aggregate::Max;
            else throw ParameterError("aggregate must be sum or max");
        } else if (key == "diagonal") {
            if (value == "project") spec.ppd.diagonal_mode = DiagonalMode::Project;
            else if (value == "exclude") spec.ppd.diagonal_mode = DiagonalMode::Exclude;
            else throw ParameterError("diagonal must be project or exclude");
        } else if (key == "p") {
            spec.classical.p = parse_number(key, value);
            spec.lp = spec.classical.p;
        } else if (key == "ground") {
            if (value == "linf") spec.classical.ground = GroundMetric::Linf;
            else if (value == "l2") spec.classical.ground = GroundMetric::L2;
            else throw ParameterError("ground must be linf or l2");
        } else if (key == "directions") spec.classical.directions = parse_count(key, value);
        else if (key == "direction_seed") spec.classical.direction_seed = static_cast<std::uint64_t>(parse_count(key, value));
        else if (key == "k_max") spec.k_max = parse_count(key, value);
        else if (key == "grid") spec.grid_samples = parse_count(key, value);
        else if (key == "weight_exponent") spec.weight_exponent = parse_number(key, value);
        else throw ParameterError("unknown metric parameter '" + key + "'");
    }
    spec.ppd.polar.validate();
    if (spec.kind != MetricKind::Landscape && spec.kind != MetricKind::Silhouette) spec.classical.validate();
    return spec;
}

double evaluate_metric(const MetricSpec& spec, std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2) {
    switch (spec.kind) {
        case MetricKind::Ppd: return ppd_diagram(d1, d2, spec.ppd).value;
        case MetricKind::Wasserstein: return wasserstein(d1, d2, spec.classical);
        case MetricKind::Bottleneck: return bottleneck(d1, d2, spec.classical.ground);
        case MetricKind::Sliced: return sliced_wasserstein(d1, d2, spec.classical);
        case MetricKind::Landscape: {
            const auto grid = shared_grid(d1, d2, spec.grid_samples);
            return landscape_distance(landscape(d1, spec.k_max, grid), landscape(d2, spec.k_max, grid), spec.lp);
        }
        case MetricKind::Silhouette: {
            const auto grid = shared_grid(d1, d2, spec.grid_samples);
            return silhouette_distance(silhouette(d1, spec.weight_exponent, grid),
                                       silhouette(d2, spec.weight_exponent, grid), spec.lp);
        }
        case MetricKind::Entropy: return entropy_distance(d1, d2);
    }
    throw ParameterError("unknown metric");
}

}  // namespace ppd
