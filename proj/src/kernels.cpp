#include "ppd/kernels.hpp"

#include "ppd/classical.hpp"
#include "ppd/error.hpp"
#include "ppd/parallel.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace ppd {

void KernelParams::validate() const {
    if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
    if (!(t > 0.0)) throw ParameterError("heat diffusion time t must be positive");
    if (!(C > 0.0) || !(q > 0.0)) throw ParameterError("PWGK parameters C and q must be positive");
    if (sw_directions < 1) throw ParameterError("sliced direction count must be positive");
    if (!(heat_weight_exponent >= 0.0)) throw ParameterError("heat weight exponent must be >= 0");
    if (!(wasserstein_p >= 1.0)) throw ParameterError("Wasserstein order must be >= 1");
}

namespace {

double squared_distance(double b1, double d1, double b2, double d2) {
    const double db = b1 - b2, dd = d1 - d2;
    return db * db + dd * dd;
}

void check_finite(std::span<const DiagramPoint> d) {
    for (const auto& p : d)
        if (!std::isfinite(p.death)) throw ValidationError("kernels take finite points only");
}

}  // namespace

double pssk(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2, double sigma) {
    if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
    check_finite(d1);
    check_finite(d2);
    // Two heat kernels at time sigma convolve to one at time 2 sigma:
    // int g_s(x - a) g_s(x - b) dx = exp(-|a - b|^2 / (8 sigma)) / (8 pi sigma).
    const double norm = 1.0 / (8.0 * std::numbers::pi * sigma);
    auto g = [&](double b1, double e1, double b2, double e2) {
        return std::exp(-squared_distance(b1, e1, b2, e2) / (8.0 * sigma));
    };
    double total = 0.0;
    for (const auto& p : d1) {
        const double pm = 0.5 * (p.birth + p.death);
        for (const auto& q : d2) {
            const double qm = 0.5 * (q.birth + q.death);
            total += g(p.birth, p.death, q.birth, q.death) - g(p.birth, p.death, qm, qm) -
                     g(pm, pm, q.birth, q.death) + g(pm, pm, qm, qm);
        }
    }
    return norm * total;
}

double pssk_feature(std::span<const DiagramPoint> d, double x, double y, double sigma) {
    const double norm = 1.0 / (4.0 * std::numbers::pi * sigma);
    double total = 0.0;
    for (const auto& p : d) {
        const double m = 0.5 * (p.birth + p.death);
        total += std::exp(-squared_distance(x, y, p.birth, p.death) / (4.0 * sigma)) -
                 std::exp(-squared_distance(x, y, m, m) / (4.0 * sigma));
    }
    return norm * total;
}

double pwgk_weight(const DiagramPoint& p, double C, double q) {
    return std::atan(C * std::pow(p.persistence(), q));
}

double pwgk(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2, const KernelParams& params) {
    params.validate();
    check_finite(d1);
    check_finite(d2);
    const double denom = 2.0 * params.sigma * params.sigma;
    double total = 0.0;
    for (const auto& p : d1) {
        const double wp = pwgk_weight(p, params.C, params.q);
        for (const auto& q : d2)
            total += wp * pwgk_weight(q, params.C, params.q) *
                     std::exp(-squared_distance(p.birth, p.death, q.birth, q.death) / denom);
    }
    return total;
}

double heat_kernel(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2, double t,
                   double weight_exponent) {
    if (!(t > 0.0)) throw ParameterError("heat diffusion time t must be positive");
    if (!(weight_exponent >= 0.0)) throw ParameterError("heat weight exponent must be >= 0");
    check_finite(d1);
    check_finite(d2);
    const double norm = 1.0 / (4.0 * std::numbers::pi * t);
    double total = 0.0;
    for (const auto& p : d1) {
        const double wp = std::pow(p.persistence(), weight_exponent);
        for (const auto& q : d2)
            total += wp * std::pow(q.persistence(), weight_exponent) *
                     std::exp(-squared_distance(p.birth, p.death, q.birth, q.death) / (4.0 * t));
    }
    return norm * total;
}

double sw_kernel(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2, double sigma,
                 std::size_t directions, double p) {
    if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
    MetricParams mp;
    mp.p = p;
    mp.directions = directions;
    const double sw = sliced_wasserstein(d1, d2, mp);
    return std::exp(-sw * sw / (2.0 * sigma * sigma));
}

double kernelized_wasserstein(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                              double sigma, double p) {
    if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
    MetricParams mp;
    mp.p = p;
    const double w = wasserstein(d1, d2, mp);
    return std::exp(-w * w / (2.0 * sigma * sigma));
}

KernelKind parse_kernel_kind(const std::string& name) {
    if (name == "pssk") return KernelKind::Pssk;
    if (name == "pwgk") return KernelKind::Pwgk;
    if (name == "heat") return KernelKind::Heat;
    if (name == "sw" || name == "sliced") return KernelKind::SlicedWasserstein;
    if (name == "kw" || name == "kernelized-wasserstein") return KernelKind::KernelizedWasserstein;
    throw ParameterError("unknown kernel '" + name + "'");
}

std::string kernel_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::Pssk: return "pssk";
        case KernelKind::Pwgk: return "pwgk";
        case KernelKind::Heat: return "heat";
        case KernelKind::SlicedWasserstein: return "sw";
        case KernelKind::KernelizedWasserstein: return "kw";
    }
    return "unknown";
}

double evaluate_kernel(KernelKind kind, std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                       const KernelParams& params) {
    params.validate();
    switch (kind) {
        case KernelKind::Pssk: return pssk(d1, d2, params.sigma);
        case KernelKind::Pwgk: return pwgk(d1, d2, params);
        case KernelKind::Heat: return heat_kernel(d1, d2, params.t, params.heat_weight_exponent);
        case KernelKind::SlicedWasserstein:
            return sw_kernel(d1, d2, params.sigma, params.sw_directions, params.wasserstein_p);
        case KernelKind::KernelizedWasserstein:
            return kernelized_wasserstein(d1, d2, params.sigma, params.wasserstein_p);
    }
    throw ParameterError("unknown kernel");
}

GramMatrix gram(const std::vector<std::vector<DiagramPoint>>& diagrams, KernelKind kind,
                const KernelParams& params, std::vector<std::string> labels, std::size_t threads) {
    params.validate();
    if (diagrams.empty()) throw ParameterError("Gram matrix needs at least one diagram");
    const std::size_t n = diagrams.size();
    GramMatrix g{n, std::vector<double>(n * n, 0.0), std::move(labels)};
    if (g.labels.empty())
        for (std::size_t i = 0; i < n; ++i) g.labels.push_back("d" + std::to_string(i));
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) cells.emplace_back(i, j);
    parallel_for(cells.size(), threads, [&](std::size_t c) {
        const auto [i, j] = cells[c];
        const double v = evaluate_kernel(kind, diagrams[i], diagrams[j], params);
        g.entries[i * n + j] = v;
        g.entries[j * n + i] = v;
    });
    return g;
}

void write_gram_csv(std::ostream& out, const GramMatrix& g) {
    out << "label";
    for (const auto& l : g.labels) out << ',' << l;
    out << '\n';
    for (std::size_t i = 0; i < g.n; ++i) {
        out << g.labels[i];
        for (std::size_t j = 0; j < g.n; ++j) out << ',' << format_real(g(i, j));
        out << '\n';
    }
}

}  // namespace ppd
