#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ppd {

/// A finite point of a persistence diagram.
struct DiagramPoint {
    double birth = 0.0;
    double death = 0.0;
    int dimension = 0;

    double persistence() const noexcept { return death - birth; }

    friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
    friend auto operator<=>(const DiagramPoint&, const DiagramPoint&) = default;
};

/// A class that never dies.
struct EssentialClass {
    double birth = 0.0;
    int dimension = 0;

    friend bool operator==(const EssentialClass&, const EssentialClass&) = default;
    friend auto operator<=>(const EssentialClass&, const EssentialClass&) = default;
};

struct PolarPoint {
    double radius = 0.0;
    double angle = 0.0;
};

/// Angular weight and near-origin mask shared by the polar metrics.
struct PolarParams {
    double alpha = 1.0;
    double exclusion_radius = 1e-9;

    void validate() const;
};

/// How infinite-death classes enter point-matching metrics.
struct EssentialPolicy {
    /// When set, essential classes become finite points (birth, cap).
    std::optional<double> cap;
};

/// Multiset of finite points plus out-of-band essential classes.
///
/// Finite points always satisfy birth < death; zero-persistence input is
/// discarded on insertion.
class PersistenceDiagram {
public:
    PersistenceDiagram() = default;
    explicit PersistenceDiagram(std::vector<DiagramPoint> points,
                                std::vector<EssentialClass> essential = {});

    /// Adds a finite point. Throws ValidationError on birth > death or non-finite values.
    void add(DiagramPoint p);
    void add_essential(EssentialClass e);

    const std::vector<DiagramPoint>& points() const noexcept { return points_; }
    const std::vector<EssentialClass>& essential() const noexcept { return essential_; }

    bool empty() const noexcept { return points_.empty() && essential_.empty(); }

    /// Points and essential classes of one homology dimension only.
    PersistenceDiagram in_dimension(int dim) const;

    /// Finite points of `dim`, with essentials converted according to `policy`.
    std::vector<DiagramPoint> finite_points(int dim, const EssentialPolicy& policy = {}) const;

    bool has_dimension(int dim) const;

    /// Canonically ordered copy, for multiset comparison.
    PersistenceDiagram sorted() const;

    std::string label;
    std::optional<double> cap;

private:
    std::vector<DiagramPoint> points_;
    std::vector<EssentialClass> essential_;
};

/// Multiset equality (order-insensitive, exact values).
bool same_multiset(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// Polar coordinates about the origin. Throws DomainError at the origin.
PolarPoint to_polar(const DiagramPoint& p);

/// Orthogonal projection onto the diagonal.
DiagramPoint mirror(const DiagramPoint& p);

/// Throws ValidationError unless every point has the same dimension. Returns it (0 if empty).
int common_dimension(std::span<const DiagramPoint> points);

// Text interchange: "PD v1" header, then "dim birth death" records, "inf" for
// essential deaths, '#' comments.
PersistenceDiagram read_diagram(std::istream& in);
void write_diagram(std::ostream& out, const PersistenceDiagram& d);

PersistenceDiagram read_diagram_file(const std::string& path);
void write_diagram_file(const std::string& path, const PersistenceDiagram& d);

std::string format_real(double v);

}  // namespace ppd
