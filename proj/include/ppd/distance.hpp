#pragma once

#include "ppd/classical.hpp"
#include "ppd/diagram.hpp"
#include "ppd/polar.hpp"

#include <span>
#include <string>

namespace ppd {

enum class MetricKind { Ppd, Wasserstein, Bottleneck, Sliced, Landscape, Silhouette, Entropy };

/// A diagram-to-diagram distance with its tunables, as selected on the command
/// line or in an experiment file, e.g. "ppd(alpha=1.5,aggregate=max)".
struct MetricSpec {
    MetricKind kind = MetricKind::Ppd;
    PpdConfig ppd;
    MetricParams classical;
    std::size_t k_max = 5;
    std::size_t grid_samples = 512;
    double lp = 1.0;                 // L^p order for landscape / silhouette (may be inf)
    double weight_exponent = 1.0;    // silhouette weights pers^exponent

    /// Short identifier: ppd, wasserstein, bottleneck, sliced, landscape, silhouette, entropy.
    std::string name() const;
    /// Human-readable row label used in comparison tables.
    std::string display_name() const;
    /// "key=value;..." list of every tunable that affects the value.
    std::string parameter_string() const;
};

MetricKind parse_metric_kind(const std::string& name);

/// Parses "name" or "name(key=value,...)". Unknown names or keys throw ParameterError.
MetricSpec parse_metric_spec(const std::string& text);

/// Evaluates the metric on two single-dimension finite point sets.
double evaluate_metric(const MetricSpec& spec, std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2);

}  // namespace ppd
