#include "ppd/diagram.hpp"

#include "ppd/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <tuple>

namespace ppd {

void PolarParams::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be positive");
    if (!(exclusion_radius >= 0.0)) throw ParameterError("exclusion_radius must be non-negative");
}

PersistenceDiagram::PersistenceDiagram(std::vector<DiagramPoint> points,
                                       std::vector<EssentialClass> essential) {
    points_.reserve(points.size());
    for (const auto& p : points) add(p);
    for (const auto& e : essential) add_essential(e);
}

void PersistenceDiagram::add(DiagramPoint p) {
    if (std::isnan(p.birth) || std::isnan(p.death) || !std::isfinite(p.birth))
        throw ValidationError("diagram point has a non-finite birth or NaN death");
    if (p.dimension < 0) throw ValidationError("negative homology dimension");
    if (p.birth > p.death) throw ValidationError("birth exceeds death");
    if (std::isinf(p.death)) {
        add_essential({p.birth, p.dimension});
        return;
    }
    if (p.birth == p.death) return;
    points_.push_back(p);
}

void PersistenceDiagram::add_essential(EssentialClass e) {
    if (!std::isfinite(e.birth)) throw ValidationError("essential class has a non-finite birth");
    if (e.dimension < 0) throw ValidationError("negative homology dimension");
    essential_.push_back(e);
}

PersistenceDiagram PersistenceDiagram::in_dimension(int dim) const {
    PersistenceDiagram out;
    out.label = label;
    out.cap = cap;
    for (const auto& p : points_)
        if (p.dimension == dim) out.points_.push_back(p);
    for (const auto& e : essential_)
        if (e.dimension == dim) out.essential_.push_back(e);
    return out;
}

std::vector<DiagramPoint> PersistenceDiagram::finite_points(int dim,
                                                            const EssentialPolicy& policy) const {
    std::vector<DiagramPoint> out;
    for (const auto& p : points_)
        if (p.dimension == dim) out.push_back(p);
    if (policy.cap) {
        for (const auto& e : essential_) {
            if (e.dimension != dim) continue;
            if (*policy.cap > e.birth) out.push_back({e.birth, *policy.cap, dim});
        }
    }
    return out;
}

bool PersistenceDiagram::has_dimension(int dim) const {
    return std::any_of(points_.begin(), points_.end(), [&](auto& p) { return p.dimension == dim; }) ||
           std::any_of(essential_.begin(), essential_.end(),
                       [&](auto& e) { return e.dimension == dim; });
}

PersistenceDiagram PersistenceDiagram::sorted() const {
    PersistenceDiagram out = *this;
    std::sort(out.points_.begin(), out.points_.end(), [](const auto& a, const auto& b) {
        return std::tie(a.dimension, a.birth, a.death) < std::tie(b.dimension, b.birth, b.death);
    });
    std::sort(out.essential_.begin(), out.essential_.end(), [](const auto& a, const auto& b) {
        return std::tie(a.dimension, a.birth) < std::tie(b.dimension, b.birth);
    });
    return out;
}

bool same_multiset(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    const auto sa = a.sorted();
    const auto sb = b.sorted();
    return sa.points() == sb.points() && sa.essential() == sb.essential();
}

PolarPoint to_polar(const DiagramPoint& p) {
    if (std::isinf(p.death)) throw DomainError("essential class has no polar form");
    if (p.birth == 0.0 && p.death == 0.0) throw DomainError("polar singularity");
    return {std::hypot(p.birth, p.death), std::atan2(p.death, p.birth)};
}

DiagramPoint mirror(const DiagramPoint& p) {
    const double mid = 0.5 * (p.birth + p.death);
    return {mid, mid, p.dimension};
}

int common_dimension(std::span<const DiagramPoint> points) {
    if (points.empty()) return 0;
    const int dim = points.front().dimension;
    for (const auto& p : points)
        if (p.dimension != dim) throw ValidationError("diagram mixes homology dimensions");
    return dim;
}

std::string format_real(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", v);
}

namespace {

double parse_real(std::string_view tok, std::size_t line) {
    if (tok == "inf" || tok == "+inf") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        throw ParseError("malformed real '" + std::string(tok) + "'", line);
    return v;
}

std::vector<std::string_view> split_spaces(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace

PersistenceDiagram read_diagram(std::istream& in) {
    PersistenceDiagram d;
    std::string raw;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const auto fields = split_spaces(line);
        if (fields.empty()) continue;
        if (!header) {
            if (fields.size() != 2 || fields[0] != "PD" || fields[1] != "v1")
                throw ParseError("expected header 'PD v1'", line_no);
            header = true;
            continue;
        }
        if (fields.size() != 3) throw ParseError("expected 'dim birth death'", line_no);
        int dim = 0;
        auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), dim);
        if (ec != std::errc{} || ptr != fields[0].data() + fields[0].size() || dim < 0)
            throw ParseError("malformed dimension '" + std::string(fields[0]) + "'", line_no);
        const double birth = parse_real(fields[1], line_no);
        const double death = parse_real(fields[2], line_no);
        if (!std::isfinite(birth)) throw ParseError("birth must be finite", line_no);
        if (birth > death)
            throw ValidationError("line " + std::to_string(line_no) + ": birth exceeds death");
        d.add({birth, death, dim});
    }
    if (!header) throw ParseError("missing 'PD v1' header", line_no);
    return d;
}

void write_diagram(std::ostream& out, const PersistenceDiagram& d) {
    out << "PD v1\n";
    if (!d.label.empty()) out << "# label: " << d.label << '\n';
    if (d.cap) out << "# cap: " << format_real(*d.cap) << '\n';
    for (const auto& p : d.points())
        out << p.dimension << ' ' << format_real(p.birth) << ' ' << format_real(p.death) << '\n';
    for (const auto& e : d.essential())
        out << e.dimension << ' ' << format_real(e.birth) << " inf\n";
}

PersistenceDiagram read_diagram_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    auto d = read_diagram(in);
    d.label = path;
    return d;
}

void write_diagram_file(const std::string& path, const PersistenceDiagram& d) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    write_diagram(out, d);
}

}  // namespace ppd
