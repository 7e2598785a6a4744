#pragma once

#include "ppd/diagram.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ppd {

struct KernelParams {
    double sigma = 1.0;
    double t = 1.0;                     // heat diffusion time
    double C = 1.0;                     // PWGK weight arctan(C * pers^q)
    double q = 1.0;
    std::size_t sw_directions = 64;
    double heat_weight_exponent = 1.0;  // heat-kernel weight pers^exponent
    double wasserstein_p = 1.0;         // order used by the SW and kernelized-W kernels

    void validate() const;
};

/// Scale-space kernel: L2 inner product of the summed feature maps
/// (1/(4 pi sigma)) [exp(-|x - p|^2 / (4 sigma)) - exp(-|x - m(p)|^2 / (4 sigma))],
/// m(p) the diagonal projection, evaluated in closed form.
double pssk(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2, double sigma);

/// The feature map above at a single location (used by quadrature checks).
double pssk_feature(std::span<const DiagramPoint> d, double x, double y, double sigma);

double pwgk_weight(const DiagramPoint& p, double C, double q);
double pwgk(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2, const KernelParams& params);

double heat_kernel(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2, double t,
                   double weight_exponent);

/// exp(-SW_p^2 / (2 sigma^2)).
double sw_kernel(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2, double sigma,
                 std::size_t directions, double p = 1.0);

/// exp(-W_p^2 / (2 sigma^2)).
double kernelized_wasserstein(std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                              double sigma, double p);

enum class KernelKind { Pssk, Pwgk, Heat, SlicedWasserstein, KernelizedWasserstein };

KernelKind parse_kernel_kind(const std::string& name);
std::string kernel_name(KernelKind kind);

double evaluate_kernel(KernelKind kind, std::span<const DiagramPoint> d1, std::span<const DiagramPoint> d2,
                       const KernelParams& params);

struct GramMatrix {
    std::size_t n = 0;
    std::vector<double> entries;  // row-major
    std::vector<std::string> labels;

    double operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

/// Upper triangle evaluated once and mirrored, so the result is exactly symmetric.
GramMatrix gram(const std::vector<std::vector<DiagramPoint>>& diagrams, KernelKind kind,
                const KernelParams& params, std::vector<std::string> labels = {},
                std::size_t threads = 0);

void write_gram_csv(std::ostream& out, const GramMatrix& g);

}  // namespace ppd
