#include "ppd/persistence.hpp"

#include "ppd/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ppd {

namespace {

std::array<std::uint32_t, 3> face_key(const Simplex& s, int drop) {
    std::array<std::uint32_t, 3> face{};
    for (int k = 0, f = 0; k <= s.dimension; ++k)
        if (k != drop) face[f++] = s.vertices[k];
    return face;
}

// Symmetric difference of two sorted index lists, written into `target`.
void add_column(std::vector<std::size_t>& target, const std::vector<std::size_t>& source,
                std::vector<std::size_t>& scratch) {
    scratch.clear();
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(scratch));
    target.swap(scratch);
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void attach(std::size_t child_root, std::size_t parent_root) { parent_[child_root] = parent_root; }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

BoundaryMatrix boundary_matrix(const FilteredComplex& complex) {
    const auto& simplices = complex.simplices();
    std::map<std::pair<int, std::array<std::uint32_t, 3>>, std::size_t> position;
    BoundaryMatrix m;
    m.columns.resize(simplices.size());
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        const auto& s = simplices[i];
        if (s.dimension > 0) {
            auto& col = m.columns[i];
            for (int drop = 0; drop <= s.dimension; ++drop) {
                const auto it = position.find({s.dimension - 1, face_key(s, drop)});
                if (it == position.end()) throw ValidationError("invalid filtration");
                col.push_back(it->second);
            }
            std::sort(col.begin(), col.end());
        }
        position[{s.dimension, s.vertices}] = i;
    }
    return m;
}

PersistencePairs reduce(const FilteredComplex& complex) {
    complex.validate();
    const auto& simplices = complex.simplices();
    auto matrix = boundary_matrix(complex);
    const std::size_t n = simplices.size();
    constexpr std::size_t none = static_cast<std::size_t>(-1);

    std::vector<std::size_t> pivot_owner(n, none);  // row -> column whose lowest entry it is
    std::vector<bool> cleared(n, false);
    std::vector<std::size_t> scratch;

    for (int dim = 2; dim >= 1; --dim) {
        for (std::size_t j = 0; j < n; ++j) {
            if (simplices[j].dimension != dim || cleared[j]) continue;
            auto& col = matrix.columns[j];
            while (!col.empty()) {
                const std::size_t low = col.back();
                const std::size_t owner = pivot_owner[low];
                if (owner == none) break;
                add_column(col, matrix.columns[owner], scratch);
            }
            if (!col.empty()) {
                pivot_owner[col.back()] = j;
                // The creator column `low` is a cycle; its reduction would vanish.
                cleared[col.back()] = true;
                matrix.columns[col.back()].clear();
            }
        }
    }

    PersistencePairs out;
    std::vector<bool> paired(n, false);
    for (std::size_t row = 0; row < n; ++row) {
        const std::size_t col = pivot_owner[row];
        if (col == none) continue;
        paired[row] = paired[col] = true;
        out.pairs.push_back({row, col, simplices[row].dimension, simplices[row].value, simplices[col].value});
    }
    for (std::size_t j = 0; j < n; ++j)
        if (!paired[j]) out.unpaired.push_back(j);
    return out;
}

PersistenceDiagram compute_persistence(const FilteredComplex& complex, std::optional<double> essential_cap) {
    const auto raw = reduce(complex);
    const auto& simplices = complex.simplices();
    PersistenceDiagram d;
    d.cap = essential_cap;
    for (const auto& p : raw.pairs) {
        if (p.dimension > 1) continue;
        if (p.death > p.birth) d.add({p.birth, p.death, p.dimension});
    }
    for (std::size_t j : raw.unpaired) {
        const auto& s = simplices[j];
        if (s.dimension > 1) continue;
        if (essential_cap) {
            if (*essential_cap > s.value) d.add({s.value, *essential_cap, s.dimension});
        } else {
            d.add_essential({s.value, s.dimension});
        }
    }
    return d;
}

PersistenceDiagram zero_dimensional_persistence(const FilteredComplex& complex) {
    const auto& simplices = complex.simplices();
    std::map<std::uint32_t, double> vertex_value;
    for (const auto& s : simplices)
        if (s.dimension == 0) vertex_value[s.vertices[0]] = s.value;

    DisjointSets sets(complex.vertex_count());
    std::vector<double> root_birth(complex.vertex_count(), 0.0);
    for (const auto& [v, value] : vertex_value) root_birth[v] = value;

    PersistenceDiagram d;
    for (const auto& s : simplices) {
        if (s.dimension != 1) continue;
        auto a = sets.find(s.vertices[0]);
        auto b = sets.find(s.vertices[1]);
        if (a == b) continue;
        // Elder rule: the younger component dies; ties go to the larger vertex index.
        if (std::tie(root_birth[a], a) < std::tie(root_birth[b], b)) std::swap(a, b);
        if (s.value > root_birth[a]) d.add({root_birth[a], s.value, 0});
        sets.attach(a, b);
    }
    for (const auto& [v, value] : vertex_value)
        if (sets.find(v) == v) d.add_essential({root_birth[v], 0});
    return d;
}

std::size_t connected_components(const FilteredComplex& complex) {
    return zero_dimensional_persistence(complex).essential().size();
}

}  // namespace ppd
