#include <gtest/gtest.h>

#include "common.hpp"
#include "oracle.hpp"
#include "rauzy/random.hpp"

using namespace rauzy;

namespace {

const Substitution& s1() { return fixture::tribonacci()[0]; }
const Substitution& s2() { return fixture::tribonacci()[1]; }

Word random_word(SplitMix64& rng, std::size_t d, std::size_t len) {
    Word w(len);
    for (auto& a : w) a = Letter(1 + rng.below(d));
    return w;
}

} // namespace

TEST(Abelianize, Examples) {
    EXPECT_EQ(abelianize(Word{}, 3), (AbelianVector{0, 0, 0}));
    EXPECT_EQ(abelianize(oracle::word("abacaba"), 3), (AbelianVector{4, 2, 1}));
}

TEST(Abelianize, LetterOutOfRange) {
    EXPECT_THROW(abelianize(Word{4}, 3), input_error);
    EXPECT_THROW(abelianize(Word{0}, 3), input_error);
}

TEST(Apply, Examples) {
    EXPECT_EQ(s1().apply(oracle::word("a")), oracle::word("ab"));
    EXPECT_EQ(s1().apply(Word{}), Word{});
    Word w = oracle::word("a");
    for (int i = 0; i < 3; ++i) w = s1().apply(w);
    EXPECT_EQ(w, oracle::word("abacaba"));
    w = s1().apply(w);
    EXPECT_EQ(w, oracle::word("abacabaabacab"));
}

TEST(IncidenceMatrix, Tribonacci) {
    EXPECT_EQ(s1().incidence_matrix(), fixture::tribonacci_matrix);
    EXPECT_EQ(s2().incidence_matrix(), fixture::tribonacci_matrix);
    EXPECT_EQ(s1().incidence_matrix().to_string(), "[[1,1,1],[1,0,0],[0,1,0]]");
}

TEST(IncidenceMatrix, Identity) {
    const Substitution id("id", {Word{1}, Word{2}});
    EXPECT_EQ(id.incidence_matrix(), IntMatrix::identity(2));
}

TEST(Substitution, RejectsErasing) {
    EXPECT_THROW(Substitution("e", std::vector<Word>{Word{1}, Word{}}), input_error);
}

TEST(Primitivity, Examples) {
    const auto& m = fixture::tribonacci_matrix;
    EXPECT_EQ(primitivity_exponent(m), std::optional<std::size_t>(3));
    EXPECT_EQ(m * m * m, (IntMatrix{{4, 3, 2}, {2, 2, 1}, {1, 1, 1}}));
    EXPECT_EQ(primitivity_exponent(IntMatrix::identity(2)), std::nullopt);
    EXPECT_EQ(primitivity_exponent(IntMatrix{{1, 2}, {3, 1}}), std::optional<std::size_t>(1));
}

TEST(Primitivity, WielandtBound) {
    EXPECT_EQ(wielandt_bound(3), 5u);
    // The Wielandt matrix attains the bound.
    const IntMatrix w{{0, 1, 0}, {0, 0, 1}, {1, 1, 0}};
    EXPECT_EQ(primitivity_exponent(w), std::optional<std::size_t>(5));
}

TEST(Primitivity, OverflowIsArithmeticError) {
    IntMatrix big{{std::int64_t(1) << 40, 1}, {1, std::int64_t(1) << 40}};
    EXPECT_THROW(big * big, arithmetic_error);
}

TEST(PrefixSuffix, Tribonacci) {
    const auto t = prefix_suffix_table(s1());
    ASSERT_EQ(t.size(), 5u);
    EXPECT_EQ(t[0].letter_in, 1);
    EXPECT_EQ(t[0].prefix, Word{});
    EXPECT_EQ(t[0].pivot, 1);
    EXPECT_EQ(t[0].suffix, oracle::word("b"));
    EXPECT_EQ(t[1].letter_in, 1);
    EXPECT_EQ(t[1].prefix, oracle::word("a"));
    EXPECT_EQ(t[1].pivot, 2);
    EXPECT_EQ(t[1].suffix, Word{});
}

TEST(Property, AbelianizationCommutes) {
    SplitMix64 rng(11);
    for (const auto& s : fixture::tribonacci().substitutions())
        for (int t = 0; t < 500; ++t) {
            const auto w = random_word(rng, 3, rng.below(201));
            ASSERT_EQ(abelianize(s.apply(w), 3), s.incidence_matrix().apply(abelianize(w, 3)));
        }
}

TEST(Property, MonoidMorphism) {
    SplitMix64 rng(12);
    for (const auto& s : fixture::tribonacci().substitutions())
        for (int t = 0; t < 300; ++t) {
            const auto a = random_word(rng, 3, rng.below(60)), b = random_word(rng, 3, rng.below(60));
            Word ab = a;
            ab.insert(ab.end(), b.begin(), b.end());
            Word rhs = s.apply(a);
            const auto sb = s.apply(b);
            rhs.insert(rhs.end(), sb.begin(), sb.end());
            ASSERT_EQ(s.apply(ab), rhs);
        }
}

TEST(Property, PrefixSuffixReconstruction) {
    for (const auto* set : {&fixture::tribonacci(), &fixture::sturmian()})
        for (const auto& s : set->substitutions()) {
            std::size_t total = 0;
            for (const auto& e : prefix_suffix_table(s)) {
                Word r = e.prefix;
                r.push_back(e.pivot);
                r.insert(r.end(), e.suffix.begin(), e.suffix.end());
                ASSERT_EQ(r, s.image(e.letter_in));
                ++total;
            }
            std::size_t len = 0;
            for (const auto& im : s.images()) len += im.size();
            EXPECT_EQ(total, len);
        }
}

TEST(Property, PrimitivityExponentIsMinimal) {
    SplitMix64 rng(13);
    for (int t = 0; t < 300; ++t) {
        const std::size_t d = 2 + rng.below(3);
        IntMatrix m(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) m(i, j) = rng.below(3) == 0 ? 1 : 0;
        const auto e = primitivity_exponent(m);
        IntMatrix p = IntMatrix::identity(d);
        std::size_t first = 0;
        for (std::size_t k = 1; k <= wielandt_bound(d); ++k) {
            p = p * m;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) p(i, j) = p(i, j) ? 1 : 0;
            if (!first && p.strictly_positive()) first = k;
        }
        if (first) ASSERT_EQ(e, std::optional<std::size_t>(first));
        else ASSERT_EQ(e, std::nullopt);
    }
}

TEST(Parse, TribonacciFile) {
    const auto f = load_substitution_set(fixture::data_dir + "/tribonacci.subs");
    EXPECT_EQ(f.alphabet.symbols(), "abc");
    ASSERT_EQ(f.substitutions.size(), 2u);
    EXPECT_EQ(f.substitutions[0].name(), "s1");
    EXPECT_EQ(f.substitutions[1].image(2), oracle::word("ca"));
}

TEST(Parse, Errors) {
    try {
        parse_substitution_set("alphabet: abc\n[sub x]\na -> ab\nb ->   \nc -> a\n");
        FAIL();
    } catch (const parse_error& e) {
        EXPECT_NE(std::string(e.what()).find("erasing substitution"), std::string::npos);
        EXPECT_EQ(e.line(), 4u);
    }
    EXPECT_THROW(parse_substitution_set("alphabet: abc\n[sub x]\na -> ad\nb -> a\nc -> a\n"), parse_error);
    EXPECT_THROW(parse_substitution_set("alphabet: abc\n[sub x]\na -> a\nb -> a\nc -> a\n[sub x]\na -> a\nb -> a\nc -> a\n"),
                 parse_error);
    EXPECT_THROW(parse_substitution_set("alphabet: abc\n[sub x]\na -> a\nb -> a\n"), parse_error);
    EXPECT_THROW(parse_substitution_set(""), parse_error);
}
