#include "ppd/preflib.hpp"

#include "ppd/diagram.hpp"
#include "ppd/error.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <map>
#include <set>
#include <ostream>
#include <sstream>
#include <string_view>
#include <tuple>

namespace ppd {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

template <class Int>
Int parse_int(std::string_view s, std::size_t line, const char* what) {
    s = trim(s);
    Int v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw ParseError(std::string("malformed ") + what + " '" + std::string(s) + "'", line);
    return v;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

bool is_permutation_of(const std::vector<std::size_t>& ranking, std::size_t n) {
    if (ranking.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (auto a : ranking) {
        if (a >= n || seen[a]) return false;
        seen[a] = true;
    }
    return true;
}

}  // namespace

void PreferenceProfile::validate() const {
    std::int64_t total = 0;
    for (const auto& b : ballots) {
        if (b.multiplicity <= 0) throw ValidationError("ballot multiplicity must be positive");
        if (!is_permutation_of(b.ranking, size()))
            throw ValidationError("not a strict complete order");
        total += b.multiplicity;
    }
    if (total != voter_count) throw ValidationError("voter count does not match ballot multiplicities");
}

std::vector<std::vector<std::size_t>> PreferenceProfile::voters() const {
    std::vector<std::vector<std::size_t>> out;
    out.reserve(static_cast<std::size_t>(voter_count));
    for (const auto& b : ballots)
        for (std::int64_t k = 0; k < b.multiplicity; ++k) out.push_back(b.ranking);
    return out;
}

PreferenceProfile PreferenceProfile::slice(std::size_t begin, std::size_t count) const {
    if (begin + count > static_cast<std::size_t>(voter_count) || count == 0)
        throw ValidationError("voter range [" + std::to_string(begin) + ", " +
                              std::to_string(begin + count) + ") out of range for " +
                              std::to_string(voter_count) + " voters");
    PreferenceProfile out;
    out.alternatives = alternatives;
    out.names = names;
    out.source_sha256 = source_sha256;
    // Walk ballots keeping multiplicities intact where possible.
    std::size_t pos = 0;
    const std::size_t end = begin + count;
    for (const auto& b : ballots) {
        const std::size_t lo = pos;
        const std::size_t hi = pos + static_cast<std::size_t>(b.multiplicity);
        pos = hi;
        const std::size_t a = std::max(lo, begin);
        const std::size_t z = std::min(hi, end);
        if (a < z) out.ballots.push_back({static_cast<std::int64_t>(z - a), b.ranking});
        if (pos >= end) break;
    }
    out.voter_count = static_cast<std::int64_t>(count);
    return out;
}

PreferenceProfile PreferenceProfile::select(const std::vector<std::size_t>& voter_indices) const {
    const auto all = voters();
    std::vector<std::vector<std::size_t>> picked;
    picked.reserve(voter_indices.size());
    for (auto i : voter_indices) {
        if (i >= all.size()) throw ValidationError("voter index out of range");
        picked.push_back(all[i]);
    }
    auto out = profile_from_rankings(alternatives, picked);
    out.names = names;
    out.source_sha256 = source_sha256;
    return out;
}

PreferenceProfile profile_from_rankings(std::vector<int> alternatives,
                                        const std::vector<std::vector<std::size_t>>& rankings) {
    PreferenceProfile p;
    p.alternatives = std::move(alternatives);
    p.ballots.reserve(rankings.size());
    for (const auto& r : rankings) p.ballots.push_back({1, r});
    p.voter_count = static_cast<std::int64_t>(rankings.size());
    p.validate();
    return p;
}

PreferenceProfile parse_preflib(std::istream& in) {
    const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};

    std::optional<std::size_t> declared_alternatives;
    std::optional<std::int64_t> declared_voters;
    std::map<int, std::string> named;

    struct RawBallot {
        std::int64_t multiplicity;
        std::vector<int> ids;
        std::size_t line;
    };
    std::vector<RawBallot> raw;

    std::istringstream lines(bytes);
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(lines, text)) {
        ++line_no;
        std::string_view line = trim(text);
        if (line.empty()) continue;
        if (line.front() == '#') {
            line.remove_prefix(1);
            const auto colon = line.find(':');
            if (colon == std::string_view::npos) continue;
            const auto key = trim(line.substr(0, colon));
            const auto value = trim(line.substr(colon + 1));
            if (key == "NUMBER ALTERNATIVES") {
                declared_alternatives = parse_int<std::size_t>(value, line_no, "alternative count");
            } else if (key == "NUMBER VOTERS") {
                declared_voters = parse_int<std::int64_t>(value, line_no, "voter count");
            } else if (key == "DATA TYPE") {
                if (value != "soc")
                    throw ParseError("unsupported data type '" + std::string(value) +
                                         "'; only strict complete orders (soc) are accepted",
                                     line_no);
            } else if (key.starts_with("ALTERNATIVE NAME")) {
                const int id = parse_int<int>(key.substr(16), line_no, "alternative id");
                named[id] = std::string(value);
            }
            continue;
        }
        const auto colon = line.find(':');
        if (colon == std::string_view::npos)
            throw ParseError("expected 'multiplicity: ranking'", line_no);
        RawBallot b{parse_int<std::int64_t>(line.substr(0, colon), line_no, "multiplicity"), {}, line_no};
        if (b.multiplicity <= 0) throw ParseError("multiplicity must be positive", line_no);
        auto rest = line.substr(colon + 1);
        if (rest.find_first_of("{}") != std::string_view::npos)
            throw ParseError("not a strict complete order (tied alternatives)", line_no);
        while (true) {
            const auto comma = rest.find(',');
            b.ids.push_back(parse_int<int>(rest.substr(0, comma), line_no, "alternative id"));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        raw.push_back(std::move(b));
    }
    if (raw.empty()) throw ParseError("profile has no ballots", line_no);

    PreferenceProfile profile;
    if (!named.empty()) {
        for (const auto& [id, name] : named) {
            profile.alternatives.push_back(id);
            profile.names.push_back(name);
        }
        if (declared_alternatives && *declared_alternatives != named.size())
            throw ValidationError("declared alternative count does not match alternative names");
    } else if (declared_alternatives) {
        for (std::size_t i = 1; i <= *declared_alternatives; ++i) {
            profile.alternatives.push_back(static_cast<int>(i));
            profile.names.push_back(std::to_string(i));
        }
    } else {
        profile.alternatives = raw.front().ids;
        std::sort(profile.alternatives.begin(), profile.alternatives.end());
        profile.alternatives.erase(std::unique(profile.alternatives.begin(), profile.alternatives.end()),
                                   profile.alternatives.end());
        for (int id : profile.alternatives) profile.names.push_back(std::to_string(id));
    }
    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < profile.alternatives.size(); ++i) index[profile.alternatives[i]] = i;

    const std::size_t n = profile.alternatives.size();
    for (const auto& b : raw) {
        Ballot ballot{b.multiplicity, {}};
        std::vector<bool> seen(n, false);
        for (int id : b.ids) {
            const auto it = index.find(id);
            if (it == index.end())
                throw ParseError("unknown alternative id " + std::to_string(id), b.line);
            if (seen[it->second])
                throw ParseError("not a strict complete order (repeated alternative " +
                                     std::to_string(id) + ")",
                                 b.line);
            seen[it->second] = true;
            ballot.ranking.push_back(it->second);
        }
        if (ballot.ranking.size() != n)
            throw ParseError("not a strict complete order (ranking covers " +
                                 std::to_string(ballot.ranking.size()) + " of " + std::to_string(n) +
                                 " alternatives)",
                             b.line);
        profile.voter_count += b.multiplicity;
        profile.ballots.push_back(std::move(ballot));
    }
    if (declared_voters && *declared_voters != profile.voter_count)
        throw ValidationError("declared voter count " + std::to_string(*declared_voters) +
                              " does not match ballot total " + std::to_string(profile.voter_count));
    profile.source_sha256 = sha256_hex(bytes);
    return profile;
}

PreferenceProfile parse_preflib_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return parse_preflib(in);
}

DominanceMatrix& DominanceMatrix::operator+=(const DominanceMatrix& other) {
    if (other.n_ != n_) throw ValidationError("dominance matrix size mismatch");
    for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += other.counts_[k];
    return *this;
}

DominanceMatrix dominance(const PreferenceProfile& profile) {
    const std::size_t n = profile.size();
    DominanceMatrix dom(n);
    dom.labels = profile.alternatives;
    std::vector<std::size_t> position(n);
    for (const auto& b : profile.ballots) {
        for (std::size_t r = 0; r < n; ++r) position[b.ranking[r]] = r;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && position[i] < position[j]) dom.count(i, j) += b.multiplicity;
    }
    return dom;
}

void write_dominance_csv(std::ostream& out, const DominanceMatrix& dom) {
    const std::size_t n = dom.size();
    auto label = [&](std::size_t i) {
        return i < dom.labels.size() ? std::to_string(dom.labels[i]) : std::to_string(i + 1);
    };
    out << "alternative";
    for (std::size_t j = 0; j < n; ++j) out << ',' << label(j);
    out << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << label(i);
        for (std::size_t j = 0; j < n; ++j) out << ',' << dom.count(i, j);
        out << '\n';
    }
}

MarginMatrix margins(const DominanceMatrix& dom) {
    MarginMatrix w{dom.size(), std::vector<double>(dom.size() * dom.size(), 0.0)};
    for (std::size_t i = 0; i < dom.size(); ++i)
        for (std::size_t j = 0; j < dom.size(); ++j)
            w.values[i * w.n + j] = static_cast<double>(dom.margin(i, j));
    return w;
}

void FiltrationConfig::validate() const {
    if (!(epsilon > 0.0)) throw ParameterError("filtration epsilon must be positive");
}

namespace {

bool filtration_less(const Simplex& a, const Simplex& b) {
    return std::tie(a.value, a.dimension, a.vertices) < std::tie(b.value, b.dimension, b.vertices);
}

}  // namespace

FilteredComplex FilteredComplex::from_simplices(std::size_t vertex_count,
                                                std::vector<Simplex> simplices) {
    for (auto& s : simplices) {
        if (s.dimension < 0 || s.dimension > 2) throw ValidationError("invalid filtration: dimension");
        std::sort(s.vertices.begin(), s.vertices.begin() + s.dimension + 1);
        for (int k = s.dimension + 1; k < 3; ++k) s.vertices[k] = 0;
    }
    std::sort(simplices.begin(), simplices.end(), filtration_less);
    FilteredComplex c;
    c.vertex_count_ = vertex_count;
    c.simplices_ = std::move(simplices);
    c.validate();
    return c;
}

FilteredComplex FilteredComplex::flag(std::size_t vertex_count, const std::vector<WeightedEdge>& edges,
                                      bool expand_triangles) {
    std::vector<Simplex> simplices;
    for (std::uint32_t v = 0; v < vertex_count; ++v) simplices.push_back({{v, 0, 0}, 0, 0.0});
    std::vector<std::optional<double>> adj(vertex_count * vertex_count);
    for (const auto& e : edges) {
        const auto u = std::min(e.u, e.v), v = std::max(e.u, e.v);
        if (u == v || v >= vertex_count) throw ValidationError("invalid filtration: bad edge");
        simplices.push_back({{u, v, 0}, 1, e.value});
        adj[u * vertex_count + v] = e.value;
    }
    if (expand_triangles) {
        for (std::uint32_t a = 0; a < vertex_count; ++a)
            for (std::uint32_t b = a + 1; b < vertex_count; ++b) {
                const auto& ab = adj[a * vertex_count + b];
                if (!ab) continue;
                for (std::uint32_t c = b + 1; c < vertex_count; ++c) {
                    const auto& ac = adj[a * vertex_count + c];
                    const auto& bc = adj[b * vertex_count + c];
                    if (ac && bc) simplices.push_back({{a, b, c}, 2, std::max({*ab, *ac, *bc})});
                }
            }
    }
    return from_simplices(vertex_count, std::move(simplices));
}

std::size_t FilteredComplex::count(int dim) const {
    return static_cast<std::size_t>(std::count_if(simplices_.begin(), simplices_.end(),
                                                  [&](const Simplex& s) { return s.dimension == dim; }));
}

void FilteredComplex::validate() const {
    std::set<std::array<std::uint32_t, 3>> seen;
    auto key = [](const std::array<std::uint32_t, 3>& v, int dim) {
        std::array<std::uint32_t, 3> k{};
        for (int i = 0; i <= dim; ++i) k[i] = v[i] + 1;  // 0 marks an unused slot
        return k;
    };
    for (std::size_t i = 0; i < simplices_.size(); ++i) {
        const auto& s = simplices_[i];
        if (!std::isfinite(s.value)) throw ValidationError("invalid filtration: non-finite value");
        if (i > 0 && filtration_less(s, simplices_[i - 1]))
            throw ValidationError("invalid filtration: simplices out of order");
        for (int k = 0; k < s.dimension; ++k)
            if (s.vertices[k] >= s.vertices[k + 1])
                throw ValidationError("invalid filtration: vertex tuple not strictly ascending");
        if (s.vertices[s.dimension] >= vertex_count_)
            throw ValidationError("invalid filtration: vertex out of range");
        if (s.dimension > 0) {
            for (int drop = 0; drop <= s.dimension; ++drop) {
                std::array<std::uint32_t, 3> face{};
                for (int k = 0, f = 0; k <= s.dimension; ++k)
                    if (k != drop) face[f++] = s.vertices[k];
                const auto it = seen.find(key(face, s.dimension - 1));
                if (it == seen.end())
                    throw ValidationError("invalid filtration: face missing or entering after coface");
            }
        }
        if (!seen.insert(key(s.vertices, s.dimension)).second)
            throw ValidationError("invalid filtration: duplicate simplex");
    }
}

FilteredComplex build_filtration(const MarginMatrix& w, const FiltrationConfig& cfg) {
    cfg.validate();
    std::vector<FilteredComplex::WeightedEdge> edges;
    for (std::uint32_t i = 0; i < w.n; ++i)
        for (std::uint32_t j = i + 1; j < w.n; ++j) {
            const double m = std::abs(w(i, j));
            if (m > 0.0) edges.push_back({i, j, 1.0 / (m + cfg.epsilon)});
        }
    return FilteredComplex::flag(w.n, edges, cfg.expand_triangles);
}

FilteredComplex build_filtration(const DominanceMatrix& dom, const FiltrationConfig& cfg) {
    return build_filtration(margins(dom), cfg);
}

void write_complex(std::ostream& out, const FilteredComplex& c) {
    for (const auto& s : c.simplices()) {
        out << s.dimension << ' ';
        for (int k = 0; k <= s.dimension; ++k) out << (k ? "," : "") << s.vertices[k];
        out << ' ' << format_real(s.value) << '\n';
    }
}

FilteredComplex read_complex(std::istream& in) {
    std::vector<Simplex> simplices;
    std::size_t vertex_count = 0;
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        std::string_view line = trim(text);
        if (line.empty() || line.front() == '#') continue;
        std::istringstream fields{std::string(line)};
        std::string dim_tok, verts, value_tok, extra;
        if (!(fields >> dim_tok >> verts >> value_tok) || (fields >> extra))
            throw ParseError("expected 'dim v0[,v1[,v2]] value'", line_no);
        Simplex s;
        s.dimension = parse_int<int>(dim_tok, line_no, "dimension");
        if (s.dimension < 0 || s.dimension > 2) throw ParseError("dimension must be 0, 1 or 2", line_no);
        std::string_view rest = verts;
        int k = 0;
        while (true) {
            if (k > s.dimension) throw ParseError("too many vertices for dimension", line_no);
            const auto comma = rest.find(',');
            s.vertices[k++] = parse_int<std::uint32_t>(rest.substr(0, comma), line_no, "vertex");
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        if (k != s.dimension + 1) throw ParseError("too few vertices for dimension", line_no);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(value_tok.data(), value_tok.data() + value_tok.size(), v);
        if (ec != std::errc{} || ptr != value_tok.data() + value_tok.size())
            throw ParseError("malformed value '" + value_tok + "'", line_no);
        s.value = v;
        for (int i = 0; i <= s.dimension; ++i)
            vertex_count = std::max<std::size_t>(vertex_count, s.vertices[i] + 1);
        simplices.push_back(s);
    }
    return FilteredComplex::from_simplices(vertex_count, std::move(simplices));
}

}  // namespace ppd
