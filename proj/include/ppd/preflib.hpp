#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ppd {

/// One ballot line: a complete strict order over alternative indices, most preferred first.
struct Ballot {
    std::int64_t multiplicity = 1;
    std::vector<std::size_t> ranking;
};

struct PreferenceProfile {
    std::vector<int> alternatives;  // PrefLib ids, index i <-> alternatives[i]
    std::vector<std::string> names;
    std::vector<Ballot> ballots;
    std::int64_t voter_count = 0;
    std::string source_sha256;

    std::size_t size() const noexcept { return alternatives.size(); }

    /// Throws ValidationError if a ranking is not a permutation or N is inconsistent.
    void validate() const;

    /// One ranking per voter, in file order.
    std::vector<std::vector<std::size_t>> voters() const;

    /// Profile made of the voters [begin, begin + count) in file order.
    PreferenceProfile slice(std::size_t begin, std::size_t count) const;

    /// Profile made of the listed voters (indices into voters()).
    PreferenceProfile select(const std::vector<std::size_t>& voter_indices) const;
};

/// Builds a profile from per-voter rankings (multiplicity 1 each).
PreferenceProfile profile_from_rankings(std::vector<int> alternatives,
                                        const std::vector<std::vector<std::size_t>>& rankings);

/// Parses a PrefLib strict-order-complete file in the modern '#'-metadata format.
PreferenceProfile parse_preflib(std::istream& in);
PreferenceProfile parse_preflib_file(const std::string& path);

/// Pairwise win counts and margins.
class DominanceMatrix {
public:
    DominanceMatrix() = default;
    explicit DominanceMatrix(std::size_t n) : n_(n), counts_(n * n, 0) {}

    std::size_t size() const noexcept { return n_; }
    std::int64_t count(std::size_t i, std::size_t j) const { return counts_[i * n_ + j]; }
    std::int64_t& count(std::size_t i, std::size_t j) { return counts_[i * n_ + j]; }
    std::int64_t margin(std::size_t i, std::size_t j) const { return count(i, j) - count(j, i); }

    DominanceMatrix& operator+=(const DominanceMatrix& other);

    std::vector<int> labels;

private:
    std::size_t n_ = 0;
    std::vector<std::int64_t> counts_;
};

DominanceMatrix dominance(const PreferenceProfile& profile);

void write_dominance_csv(std::ostream& out, const DominanceMatrix& dom);

/// Dense real margin matrix; antisymmetric by construction in every producer here.
struct MarginMatrix {
    std::size_t n = 0;
    std::vector<double> values;

    double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

MarginMatrix margins(const DominanceMatrix& dom);

struct FiltrationConfig {
    double epsilon = 1e-6;
    bool expand_triangles = true;
    std::optional<double> cap;

    void validate() const;
};

struct Simplex {
    std::array<std::uint32_t, 3> vertices{};  // sorted ascending, unused slots zero
    int dimension = 0;
    double value = 0.0;

    std::size_t vertex_count() const noexcept { return static_cast<std::size_t>(dimension) + 1; }
};

/// Simplices of dimension <= 2, kept in filtration order: by value, then
/// dimension, then lexicographic vertex tuple.
class FilteredComplex {
public:
    FilteredComplex() = default;

    /// Sorts the simplices into filtration order and checks the face condition.
    /// Throws ValidationError("invalid filtration") when a face is missing or enters later.
    static FilteredComplex from_simplices(std::size_t vertex_count, std::vector<Simplex> simplices);

    /// Vertices at 0, the given edges, and (optionally) every triangle whose edges exist,
    /// valued at the maximum of its edge values.
    struct WeightedEdge {
        std::uint32_t u, v;
        double value;
    };
    static FilteredComplex flag(std::size_t vertex_count, const std::vector<WeightedEdge>& edges,
                                bool expand_triangles);

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    const std::vector<Simplex>& simplices() const noexcept { return simplices_; }
    std::size_t count(int dim) const;

    /// Re-checks ordering and face conditions; throws ValidationError("invalid filtration").
    void validate() const;

private:
    std::size_t vertex_count_ = 0;
    std::vector<Simplex> simplices_;
};

FilteredComplex build_filtration(const MarginMatrix& w, const FiltrationConfig& cfg);
FilteredComplex build_filtration(const DominanceMatrix& dom, const FiltrationConfig& cfg);

/// "dim v0[,v1[,v2]] value" lines.
void write_complex(std::ostream& out, const FilteredComplex& c);
FilteredComplex read_complex(std::istream& in);

}  // namespace ppd
