#include "ppd/summaries.hpp"

#include "ppd/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

namespace ppd {

std::vector<double> Grid::values() const {
    std::vector<double> t(samples);
    for (std::size_t k = 0; k < samples; ++k) t[k] = at(k);
    return t;
}

Grid shared_grid(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2, std::size_t samples) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (auto s : {d1, d2})
        for (const auto& p : s) {
            lo = std::min(lo, p.birth);
            hi = std::max(hi, p.death);
        }
    if (!(lo < hi)) return {0.0, 1.0, samples};
    return {lo, hi, samples};
}

double tent(const DiagramPoint& p, double t) {
    return std::max(0.0, std::min(t - p.birth, p.death - t));
}

namespace {

void check_finite(std::span<const DiagramPoint> d) {
    for (const auto& p : d)
        if (!std::isfinite(p.death)) throw ValidationError("functional summaries take finite points only");
}

void check_grid(const Grid& g) {
    if (g.samples < 2 || !(g.hi > g.lo)) throw ParameterError("grid needs at least two samples over a non-empty range");
}

double sup_diff(const std::vector<double>& f, const std::vector<double>& g) {
    double m = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) m = std::max(m, std::abs(f[k] - g[k]));
    return m;
}

// Trapezoid-rule integral of |f - g|^p.
double lp_integral_pow(const std::vector<double>& f, const std::vector<double>& g, double spacing, double p) {
    double total = 0.0;
    const std::size_t n = f.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double v = std::pow(std::abs(f[k] - g[k]), p);
        total += (k == 0 || k + 1 == n) ? 0.5 * v : v;
    }
    return total * spacing;
}

void check_order(double p) {
    if (!(p >= 1.0)) throw ParameterError("L^p order must be >= 1");
}

}  // namespace

Landscape landscape(std::span<const DiagramPoint> d, std::size_t k_max, const Grid& grid) {
    check_finite(d);
    check_grid(grid);
    if (k_max == 0) throw ParameterError("k_max must be positive");
    Landscape l{grid, std::vector<std::vector<double>>(k_max, std::vector<double>(grid.samples, 0.0))};
    std::vector<double> values;
    for (std::size_t s = 0; s < grid.samples; ++s) {
        const double t = grid.at(s);
        values.clear();
        for (const auto& p : d) values.push_back(tent(p, t));
        const std::size_t keep = std::min(k_max, values.size());
        std::partial_sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(keep), values.end(),
                          std::greater<>());
        for (std::size_t k = 0; k < keep; ++k) l.levels[k][s] = values[k];
    }
    return l;
}

double landscape_distance(const Landscape& a, const Landscape& b, double p) {
    check_order(p);
    if (!(a.grid == b.grid) || a.levels.size() != b.levels.size())
        throw ValidationError("landscapes use different grids or level counts");
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t k = 0; k < a.levels.size(); ++k)
            m = std::max(m, sup_diff(a.levels[k], b.levels[k]));
        return m;
    }
    double total = 0.0;
    for (std::size_t k = 0; k < a.levels.size(); ++k)
        total += lp_integral_pow(a.levels[k], b.levels[k], a.grid.spacing(), p);
    return std::pow(total, 1.0 / p);
}

Silhouette silhouette(std::span<const DiagramPoint> d, double weight_exponent, const Grid& grid) {
    check_finite(d);
    check_grid(grid);
    if (!(weight_exponent >= 0.0)) throw ParameterError("silhouette weight exponent must be >= 0");
    Silhouette s{grid, std::vector<double>(grid.samples, 0.0), weight_exponent};
    double total_weight = 0.0;
    std::vector<double> w;
    for (const auto& p : d) {
        w.push_back(std::pow(p.persistence(), weight_exponent));
        total_weight += w.back();
    }
    if (total_weight == 0.0) return s;
    for (std::size_t k = 0; k < grid.samples; ++k) {
        const double t = grid.at(k);
        double acc = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) acc += w[i] * tent(d[i], t);
        s.values[k] = acc / total_weight;
    }
    return s;
}

double silhouette_distance(const Silhouette& a, const Silhouette& b, double p) {
    check_order(p);
    if (!(a.grid == b.grid)) throw ValidationError("silhouettes use different grids");
    if (std::isinf(p)) return sup_diff(a.values, b.values);
    return std::pow(lp_integral_pow(a.values, b.values, a.grid.spacing(), p), 1.0 / p);
}

double persistence_entropy(std::span<const DiagramPoint> d) {
    check_finite(d);
    double total = 0.0;
    for (const auto& p : d) total += p.persistence();
    if (d.empty() || !(total > 0.0)) throw ValidationError("entropy undefined for an empty diagram");
    double h = 0.0;
    for (const auto& p : d) {
        const double q = p.persistence() / total;
        if (q > 0.0) h -= q * std::log(q);
    }
    return h;
}

double entropy_distance(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2) {
    return std::abs(persistence_entropy(d1) - persistence_entropy(d2));
}

void write_landscape_csv(std::ostream& out, const Landscape& l) {
    out << 't';
    for (std::size_t k = 0; k < l.levels.size(); ++k) out << ",lambda_" << (k + 1);
    out << '\n';
    for (std::size_t s = 0; s < l.grid.samples; ++s) {
        out << format_real(l.grid.at(s));
        for (const auto& level : l.levels) out << ',' << format_real(level[s]);
        out << '\n';
    }
}

void write_silhouette_csv(std::ostream& out, const Silhouette& s) {
    out << "t,value\n";
    for (std::size_t k = 0; k < s.grid.samples; ++k)
        out << format_real(s.grid.at(k)) << ',' << format_real(s.values[k]) << '\n';
}

}  // namespace ppd
