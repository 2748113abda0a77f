#include <gtest/gtest.h>

#include "common.hpp"
#include "oracle.hpp"
#include "rauzy/checks.hpp"

using namespace rauzy;

namespace {

const SubstitutionSet& trib() { return fixture::tribonacci(); }
const SpectralData& spec() {
    static const SpectralData s = perron_data(fixture::tribonacci_matrix);
    return s;
}
DirectiveSequence seq(const char* s) { return DirectiveSequence::parse(s, 2); }

} // namespace

TEST(SteppedLine, Examples) {
    const auto ab = stepped_line(oracle::word("ab"), 3);
    ASSERT_EQ(ab.vertices.size(), 3u);
    EXPECT_EQ(ab.vertices[1], (AbelianVector{1, 0, 0}));
    EXPECT_EQ(ab.vertices[2], (AbelianVector{1, 1, 0}));
    EXPECT_EQ(stepped_line(oracle::word("abacaba"), 3).vertices.back(), (AbelianVector{4, 2, 1}));
    EXPECT_EQ(stepped_line(Word{}, 3).vertices, (std::vector<AbelianVector>{{0, 0, 0}}));
}

TEST(Telescoping, Examples) {
    const auto u = oracle::word("abac");
    const auto t = telescoping_decomposition(seq("(1)"), trib(), u);
    AbelianVector sum(3, 0);
    IntMatrix power = IntMatrix::identity(3);
    for (std::size_t j = 0; j < t.prefixes.size(); ++j) {
        const auto term = power.apply(abelianize(t.prefixes[j], 3));
        for (std::size_t i = 0; i < 3; ++i) sum[i] += term[i];
        power = power * fixture::tribonacci_matrix;
    }
    EXPECT_EQ(sum, (AbelianVector{2, 1, 1}));

    const auto first = telescoping_decomposition(seq("(1)"), trib(), oracle::word("a"));
    EXPECT_EQ(first.k(), 0u);
    EXPECT_EQ(first.prefixes[0], oracle::word("a"));

    EXPECT_THROW(telescoping_decomposition(seq("(1)"), trib(), oracle::word("abb")), domain_error);
}

TEST(Telescoping, RebuildsThePrefix) {
    // U = s_0..s_{k-1}(P_k) ... s_0(P_1) P_0 as words, not just abelianized.
    for (const char* spec : {"(1)", "(2)", "random:7", "1122(1122)"}) {
        const auto s = seq(spec);
        const auto u = limit_point_prefix(s, trib(), 3000);
        for (std::size_t len : {1u, 2u, 5u, 17u, 400u, 2999u}) {
            const std::span<const Letter> pre(u.data(), len);
            const auto t = telescoping_decomposition(s, trib(), pre);
            Word rebuilt;
            for (std::size_t j = t.prefixes.size(); j-- > 0;) {
                Word w = t.prefixes[j];
                for (std::size_t k = j; k-- > 0;) w = trib()[s[k]].apply(w);
                rebuilt.insert(rebuilt.end(), w.begin(), w.end());
            }
            ASSERT_EQ(rebuilt, Word(pre.begin(), pre.end())) << spec << " " << len;
        }
    }
}

TEST(Property, TelescopingExact) {
    SplitMix64 rng(51);
    for (int t = 0; t < 20; ++t) {
        const auto s = DirectiveSequence::random(rng(), {1, 1});
        LimitPointExpansion ex(s, trib(), 10001);
        AbelianVector counts(3, 0);
        for (std::size_t len = 0; len <= 10000; ++len) {
            ASSERT_EQ(ex.telescoped_abelianization(ex.decompose(len)), counts);
            ++counts[index_of(ex.word()[len])];
        }
    }
}

TEST(ProjectPrefixes, SinglePoint) {
    const auto a = project_prefixes(seq("(1)"), trib(), spec(), 1);
    EXPECT_EQ(a.size(), 1u);
    ASSERT_EQ(a.subtiles[0].size(), 1u);
    EXPECT_EQ(a.subtiles[0][0][0], 0.0);
    EXPECT_EQ(a.subtiles[0][0][1], 0.0);
    EXPECT_LT(a.max_norm, a.norm_bound);
}

TEST(ProjectPrefixes, Refusals) {
    EXPECT_THROW(project_prefixes(DirectiveSequence::constant(0), fixture::sturmian(), spec(), 10), domain_error);
    EXPECT_THROW(project_prefixes(seq("(1)"), trib(), spec(), 0), input_error);
}

TEST(Property, Boundedness) {
    for (const char* spec_text : {"(1)", "(2)", "random:42", "1122(1122)", "222211111111111121(1)"}) {
        const auto a = project_prefixes(seq(spec_text), trib(), spec(), 100000);
        EXPECT_EQ(a.size(), 100000u);
        EXPECT_LT(a.max_norm, prefix_norm_constant(trib(), spec()) / (1 - spec().lambda)) << spec_text;
    }
}

TEST(Gifs, StepFromOrigin) {
    const auto g = build_gifs_map(trib()[0], spec());
    EXPECT_EQ(g.edges.size(), 5u);
    const auto out = gifs_step(g, origin_seed(3, 2));
    EXPECT_EQ(out.size(), 5u);
    // Pivots of a->ab, b->ac, c->a: a three times, b once, c once.
    EXPECT_EQ(out.subtiles[0].size(), 3u);
    EXPECT_EQ(out.subtiles[1].size(), 1u);
    EXPECT_EQ(out.subtiles[2].size(), 1u);
    // Translations are pi_s of l(""), l("a"): the subtile of b holds pi_s(e_a).
    const std::vector<std::int64_t> ea{1, 0, 0};
    const Eigen::VectorXd pa = project(spec(), std::span<const std::int64_t>(ea));
    EXPECT_NEAR(out.subtiles[1][0][0], pa(0), 1e-15);
    EXPECT_NEAR(out.subtiles[1][0][1], pa(1), 1e-15);
}

TEST(Gifs, EmptySubtilePropagates) {
    // Under a->ab, b->ac, c->a only the image of b targets c.
    RauzyApprox in(3, 2);
    in.subtiles[0].push_back(std::vector<double>{0, 0});
    in.subtiles[2].push_back(std::vector<double>{0, 0});
    const auto out = gifs_step(build_gifs_map(trib()[0], spec()), in);
    EXPECT_TRUE(out.subtiles[2].empty());
}

TEST(Gifs, DepthOneIsOneStep) {
    const auto seed = origin_seed(3, 2);
    const auto a = gifs_attractor(seq("(2)"), trib(), spec(), 1, seed);
    const auto b = gifs_step(build_gifs_map(trib()[1], spec()), seed);
    EXPECT_EQ(a.subtiles, b.subtiles);
}

TEST(Gifs, Thinning) {
    ThinningPolicy p{1000, 3};
    const auto a = gifs_attractor(seq("(1)"), trib(), spec(), 14, origin_seed(3, 2), p);
    EXPECT_TRUE(a.thinned);
    EXPECT_LE(a.size(), 1000u);
    const auto b = gifs_attractor(seq("(1)"), trib(), spec(), 14, origin_seed(3, 2), p);
    EXPECT_EQ(a.subtiles, b.subtiles);
}

TEST(Property, Contraction) {
    SplitMix64 rng(52);
    for (const auto& sub : trib().substitutions()) {
        const auto g = build_gifs_map(sub, spec());
        for (int t = 0; t < 100; ++t) {
            const auto a = random_approx(rng, 3, 2, 30, 1.5);
            const auto b = random_approx(rng, 3, 2, 30, 1.5);
            const double before = approx_distance(a, b, spec()).max_subtile;
            const double after = approx_distance(gifs_step(g, a), gifs_step(g, b), spec()).max_subtile;
            ASSERT_LE(after, spec().lambda * before + 1e-9);
        }
    }
}

TEST(Property, SetEquation) {
    for (const char* spec_text : {"(1)", "(2)", "random:42"}) {
        const auto s = seq(spec_text);
        LimitPointExpansion ex(s, trib(), 100000);
        for (std::size_t n = 0; n < ex.depth(); ++n) {
            const auto g = build_gifs_map(trib()[ex.substitution_at(n)], spec());
            const auto inner = word_cloud(ex.level(n + 1), spec(), ex.level(n + 1).size());
            const auto outer = word_cloud(ex.level(n), spec(), ex.level(n).size());
            const auto mapped = gifs_step(g, inner);
            ASSERT_EQ(mapped.size(), outer.size());
            ASSERT_LE(approx_distance(mapped, outer, spec()).max_subtile, 1e-9) << spec_text << " n=" << n;
        }
    }
}

TEST(Property, SeedIndependence) {
    SplitMix64 rng(53);
    for (std::size_t depth : {1u, 4u, 8u}) {
        const auto a = origin_seed(3, 2);
        const auto b = random_approx(rng, 3, 2, 6, 2.0);
        const double seeds = approx_distance(a, b, spec()).max_subtile;
        const auto ra = gifs_attractor(seq("random:11"), trib(), spec(), depth, a);
        const auto rb = gifs_attractor(seq("random:11"), trib(), spec(), depth, b);
        EXPECT_LE(approx_distance(ra, rb, spec()).max_subtile, std::pow(spec().lambda, double(depth)) * seeds + 1e-9);
    }
}

TEST(Compare, Constructions) {
    for (const char* spec_text : {"(1)", "(2)", "random:42"}) {
        const auto r = compare_constructions(seq(spec_text), trib(), spec(), 100000, 12);
        EXPECT_LE(r.max_subtile, 0.05) << spec_text;
        EXPECT_LE(r.overall, r.max_subtile + 1e-12);
    }
}

TEST(Continuity, Decay) {
    const auto r = continuity_experiment(trib(), spec(), seq("(1)"), seq("(2)"), {2, 3, 4, 5, 6, 7, 8, 9, 10}, 100000);
    ASSERT_EQ(r.rows.size(), 9u);
    EXPECT_EQ(r.monotone_violations, 0u);
    ASSERT_TRUE(r.ratio);
    EXPECT_LE(*r.ratio, spec().lambda + 0.1);
}

TEST(Continuity, BeyondBudgetIsResolutionLimited) {
    const auto r = continuity_experiment(trib(), spec(), seq("(1)"), seq("(2)"), {60, 70}, 1000);
    for (const auto& row : r.rows) EXPECT_LE(row.distance, default_resolution);
    EXPECT_TRUE(r.resolution_limited);
}

TEST(Coverage, Tribonacci) {
    const auto a = project_prefixes(seq("(1)"), trib(), spec(), 100000);
    const auto g = gamma_generators(spec());
    const auto r = coverage_estimate(a, g, 2.0, 0.01);
    EXPECT_GE(r.fraction, 0.99);
    const auto fine = coverage_estimate(a, g, 2.0, 0.005);
    EXPECT_GE(fine.fraction, r.fraction - 0.02);
    const auto origin = coverage_estimate(a, g, 0.0, 0.01);
    EXPECT_EQ(origin.grid_points, 1u);
    EXPECT_EQ(origin.fraction, 1.0);
}
