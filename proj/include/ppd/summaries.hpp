#pragma once

#include "ppd/diagram.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace ppd {

/// Uniform samples lo, ..., hi (inclusive).
struct Grid {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t samples = 512;

    double spacing() const noexcept { return samples > 1 ? (hi - lo) / static_cast<double>(samples - 1) : 0.0; }
    double at(std::size_t k) const noexcept { return lo + static_cast<double>(k) * spacing(); }
    std::vector<double> values() const;

    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Grid spanning [min birth, max death] over both diagrams; [0, 1] if both are empty.
Grid shared_grid(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                 std::size_t samples = 512);

/// Tent max(0, min(t - b, d - t)).
double tent(const DiagramPoint& p, double t);

struct Landscape {
    Grid grid;
    std::vector<std::vector<double>> levels;  // levels[k][sample], k = 0 is lambda_1
};

struct Silhouette {
    Grid grid;
    std::vector<double> values;
    double weight_exponent = 1.0;
};

Landscape landscape(std::span<const DiagramPoint> d, std::size_t k_max, const Grid& grid);

/// p >= 1, or +infinity for the sup over samples. L^p norms use the trapezoid rule.
double landscape_distance(const Landscape& a, const Landscape& b, double p);

Silhouette silhouette(std::span<const DiagramPoint> d, double weight_exponent, const Grid& grid);
double silhouette_distance(const Silhouette& a, const Silhouette& b, double p);

/// Shannon entropy (natural log) of normalized persistences.
double persistence_entropy(std::span<const DiagramPoint> d);
double entropy_distance(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2);

/// "t,lambda_1,...,lambda_k" rows.
void write_landscape_csv(std::ostream& out, const Landscape& l);
/// "t,value" rows.
void write_silhouette_csv(std::ostream& out, const Silhouette& s);

}  // namespace ppd
