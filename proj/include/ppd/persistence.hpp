#pragma once

#include "ppd/diagram.hpp"
#include "ppd/preflib.hpp"

#include <cstddef>
#include <vector>

namespace ppd {

/// Columns of the Z/2 boundary matrix, indexed by filtration position.
/// Each column lists face positions in ascending order.
struct BoundaryMatrix {
    std::vector<std::vector<std::size_t>> columns;
};

BoundaryMatrix boundary_matrix(const FilteredComplex& complex);

/// Raw output of the reduction, before zero-persistence pairs are removed.
struct PersistencePairs {
    struct Pair {
        std::size_t creator;
        std::size_t destroyer;
        int dimension;  // dimension of the class (creator's dimension)
        double birth;
        double death;
    };
    std::vector<Pair> pairs;
    std::vector<std::size_t> unpaired;  // creators that never die
};

/// Column reduction with clearing (columns processed from the highest dimension down).
PersistencePairs reduce(const FilteredComplex& complex);

/// H0 and H1 diagram; zero-persistence pairs dropped, essential classes kept out-of-band.
/// If `essential_cap` is set, essential deaths are capped into finite points.
PersistenceDiagram compute_persistence(const FilteredComplex& complex,
                                       std::optional<double> essential_cap = std::nullopt);

/// H0 by a union-find sweep over edges with the elder rule.
PersistenceDiagram zero_dimensional_persistence(const FilteredComplex& complex);

std::size_t connected_components(const FilteredComplex& complex);

}  // namespace ppd
