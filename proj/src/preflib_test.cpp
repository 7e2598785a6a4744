#include "ppd/error.hpp"
#include "ppd/preflib.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

using namespace ppd;

namespace {

PreferenceProfile parse(const std::string& text) {
    std::istringstream in(text);
    return parse_preflib(in);
}

const char* kSmall =
    "# DATA TYPE: soc\n"
    "# NUMBER ALTERNATIVES: 3\n"
    "# NUMBER VOTERS: 3\n"
    "# ALTERNATIVE NAME 1: a\n"
    "# ALTERNATIVE NAME 2: b\n"
    "# ALTERNATIVE NAME 3: c\n"
    "2: 1,2,3\n"
    "1: 3,1,2\n";

std::string condorcet() {
    return "# NUMBER ALTERNATIVES: 3\n# NUMBER VOTERS: 12\n3: 1,2,3\n5: 2,3,1\n4: 3,1,2\n";
}

PreferenceProfile random_profile(std::mt19937_64& rng, std::size_t n, std::size_t ballots) {
    std::vector<std::vector<std::size_t>> rankings;
    for (std::size_t v = 0; v < ballots; ++v) {
        std::vector<std::size_t> r(n);
        std::iota(r.begin(), r.end(), std::size_t{0});
        std::shuffle(r.begin(), r.end(), rng);
        rankings.push_back(r);
    }
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 1);
    return profile_from_rankings(ids, rankings);
}

}  // namespace

TEST(Parse, SmallFile) {
    const auto p = parse(kSmall);
    EXPECT_EQ(p.size(), 3u);
    EXPECT_EQ(p.voter_count, 3);
    ASSERT_EQ(p.ballots.size(), 2u);
    EXPECT_EQ(p.ballots[0].multiplicity, 2);
    EXPECT_EQ(p.names[1], "b");
    EXPECT_EQ(p.source_sha256.size(), 64u);
}

TEST(Parse, WithoutMetadata) {
    const auto p = parse("2: 1,2,3\n1: 3,1,2\n");
    EXPECT_EQ(p.size(), 3u);
    EXPECT_EQ(p.voter_count, 3);
}

TEST(Parse, Rejections) {
    EXPECT_THROW(parse("# NUMBER ALTERNATIVES: 3\n1: 1,1,2\n"), ParseError);
    EXPECT_THROW(parse("# NUMBER ALTERNATIVES: 3\n1: 1,2\n"), ParseError);
    EXPECT_THROW(parse("# NUMBER ALTERNATIVES: 3\n1: 1,2,7\n"), ParseError);
    EXPECT_THROW(parse("# NUMBER ALTERNATIVES: 3\n1: 1,{2,3}\n"), ParseError);
    EXPECT_THROW(parse("# NUMBER ALTERNATIVES: 3\n# NUMBER VOTERS: 5\n1: 1,2,3\n"), ValidationError);
    EXPECT_THROW(parse("# DATA TYPE: soi\n1: 1,2,3\n"), ParseError);
    EXPECT_THROW(parse(""), ParseError);
    try {
        parse("# NUMBER ALTERNATIVES: 3\n1: 1,2,3\nx: 1,2,3\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Parse, IncompleteRankingMessage) {
    try {
        parse("# NUMBER ALTERNATIVES: 3\n1: 1,2\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("not a strict complete order"), std::string::npos);
    }
}

TEST(Dominance, HandCount) {
    const auto d = dominance(parse(kSmall));
    EXPECT_EQ(d.count(0, 1), 3);
    EXPECT_EQ(d.count(1, 0), 0);
    EXPECT_EQ(d.count(0, 2), 2);
    EXPECT_EQ(d.count(2, 0), 1);
    EXPECT_EQ(d.count(1, 2), 2);
    EXPECT_EQ(d.count(2, 1), 1);
    EXPECT_EQ(d.count(1, 1), 0);
}

TEST(Dominance, SingleBallot) {
    const auto d = dominance(parse("1: 1,2\n"));
    EXPECT_EQ(d.count(0, 1), 1);
    EXPECT_EQ(d.count(1, 0), 0);
}

TEST(Dominance, PairSumsAndAntisymmetry) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const auto p = random_profile(rng, n, 1 + trial * 3);
        const auto d = dominance(p);
        const auto w = margins(d);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) {
                    EXPECT_EQ(d.count(i, i), 0);
                    continue;
                }
                EXPECT_EQ(d.count(i, j) + d.count(j, i), p.voter_count);
                EXPECT_EQ(w.values[i * n + j] + w.values[j * n + i], 0.0);
            }
    }
}

TEST(Dominance, Csv) {
    std::ostringstream out;
    write_dominance_csv(out, dominance(parse(kSmall)));
    EXPECT_EQ(out.str(), "alternative,1,2,3\n1,0,3,2\n2,0,0,2\n3,1,1,0\n");
}

TEST(Profile, SliceAndSelect) {
    const auto p = parse(kSmall);
    const auto first = p.slice(0, 2);
    EXPECT_EQ(first.voter_count, 2);
    EXPECT_EQ(dominance(first).count(2, 0), 0);
    const auto last = p.slice(2, 1);
    EXPECT_EQ(dominance(last).count(2, 0), 1);
    EXPECT_THROW(p.slice(2, 2), ValidationError);
    const auto pick = p.select({0, 2});
    EXPECT_EQ(pick.voter_count, 2);
    EXPECT_EQ(dominance(pick).count(2, 0), 1);
}

TEST(Filtration, EdgeValue) {
    DominanceMatrix d(2);
    d.count(0, 1) = 10;
    const auto c = build_filtration(d, {});
    ASSERT_EQ(c.count(1), 1u);
    EXPECT_NEAR(c.simplices().back().value, 1.0 / (10 + 1e-6), 1e-15);
    EXPECT_NEAR(c.simplices().back().value, 0.09999999, 1e-8);
}

TEST(Filtration, TieHasNoEdge) {
    DominanceMatrix d(2);
    d.count(0, 1) = 4;
    d.count(1, 0) = 4;
    EXPECT_EQ(build_filtration(d, {}).count(1), 0u);
}

TEST(Filtration, CondorcetTriangle) {
    const auto p = parse(condorcet());
    const auto w = margins(dominance(p));
    EXPECT_EQ(w.values[0 * 3 + 1], 2);
    EXPECT_EQ(w.values[1 * 3 + 2], 4);
    EXPECT_EQ(w.values[2 * 3 + 0], 6);
    const auto c = build_filtration(dominance(p), {});
    ASSERT_EQ(c.count(2), 1u);
    EXPECT_NEAR(c.simplices().back().value, 1.0 / (2 + 1e-6), 1e-15);
    EXPECT_NEAR(c.simplices().back().value, 0.49999975, 1e-9);
    FiltrationConfig skeleton;
    skeleton.expand_triangles = false;
    EXPECT_EQ(build_filtration(dominance(p), skeleton).count(2), 0u);
}

TEST(Filtration, OrderAndFaces) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = random_profile(rng, 3 + trial % 6, 5 + trial);
        const auto c = build_filtration(dominance(p), {});
        EXPECT_NO_THROW(c.validate());
        const auto& s = c.simplices();
        for (std::size_t i = 1; i < s.size(); ++i) {
            const auto key = [](const Simplex& x) { return std::tuple(x.value, x.dimension, x.vertices); };
            EXPECT_LT(key(s[i - 1]), key(s[i]));
        }
    }
}

TEST(Filtration, RejectsBadOrder) {
    std::vector<Simplex> bad{{{0, 0, 0}, 0, 0.0}, {{1, 0, 0}, 0, 0.0}, {{0, 1, 0}, 1, 0.5}};
    bad[1].value = 0.7;  // vertex enters after its coface
    EXPECT_THROW(FilteredComplex::from_simplices(2, bad), ValidationError);
    std::vector<Simplex> missing{{{0, 0, 0}, 0, 0.0}, {{0, 1, 0}, 1, 0.5}};
    EXPECT_THROW(FilteredComplex::from_simplices(2, missing), ValidationError);
}

TEST(Filtration, RelabelPairInvariance) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 4 + trial % 4;
        auto d = dominance(random_profile(rng, n, 9));
        const auto base = build_filtration(d, {});
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) j = (i + 1) % n;
        std::swap(d.count(i, j), d.count(j, i));
        const auto flipped = build_filtration(d, {});
        ASSERT_EQ(base.simplices().size(), flipped.simplices().size());
        for (std::size_t k = 0; k < base.simplices().size(); ++k) {
            EXPECT_EQ(base.simplices()[k].vertices, flipped.simplices()[k].vertices);
            EXPECT_EQ(base.simplices()[k].value, flipped.simplices()[k].value);
        }
    }
}

TEST(Filtration, ComplexRoundTrip) {
    const auto c = build_filtration(dominance(parse(condorcet())), {});
    std::stringstream s;
    write_complex(s, c);
    const auto back = read_complex(s);
    ASSERT_EQ(back.simplices().size(), c.simplices().size());
    for (std::size_t k = 0; k < c.simplices().size(); ++k) {
        EXPECT_EQ(back.simplices()[k].vertices, c.simplices()[k].vertices);
        EXPECT_EQ(back.simplices()[k].value, c.simplices()[k].value);
    }
    std::istringstream bad("1 0,1 0.5\n");
    EXPECT_THROW(read_complex(bad), ValidationError);
}

TEST(Filtration, EpsilonMustBePositive) {
    FiltrationConfig cfg;
    cfg.epsilon = 0.0;
    EXPECT_THROW(cfg.validate(), ParameterError);
}
