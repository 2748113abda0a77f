#include <gtest/gtest.h>

#include <sstream>

#include "common.hpp"
#include "rauzy/io.hpp"

using namespace rauzy;

TEST(Csv, RoundTripIsExact) {
    const auto s = perron_data(fixture::tribonacci_matrix);
    const auto a = project_prefixes(DirectiveSequence::parse("random:3", 2), fixture::tribonacci(), s, 5000);
    std::stringstream buf;
    write_csv(buf, a);
    const auto b = read_csv(buf, 3);
    EXPECT_EQ(a.subtiles, b.subtiles);
    EXPECT_EQ(hausdorff(a.all_points(), b.all_points()).distance, 0.0);
}

TEST(Csv, Format) {
    RauzyApprox a(2, 2);
    a.subtiles[1].push_back(std::vector<double>{0.1, -2});
    std::stringstream buf;
    write_csv(buf, a);
    EXPECT_EQ(buf.str(), "2,0.10000000000000001,-2\n");
}

TEST(Csv, Errors) {
    std::stringstream bad_letter("4,0,0\n"), bad_width("1,0,0\n1,0\n"), bad_number("1,x,0\n"), empty("");
    EXPECT_THROW(read_csv(bad_letter, 3), parse_error);
    EXPECT_THROW(read_csv(bad_width, 3), parse_error);
    EXPECT_THROW(read_csv(bad_number, 3), parse_error);
    EXPECT_THROW(read_csv(empty, 3), parse_error);
    std::stringstream inferred("2,0,0\n");
    EXPECT_EQ(read_csv(inferred).letters(), 2u);
}

TEST(Colors, Defaults) {
    EXPECT_EQ(letter_color(1), (Rgb{230, 57, 70}));
    EXPECT_EQ(letter_color(2), (Rgb{69, 123, 157}));
    EXPECT_EQ(letter_color(3), (Rgb{42, 157, 143}));
    std::vector<Rgb> seen;
    for (std::size_t i = 1; i <= 12; ++i) {
        const auto c = letter_color(i);
        EXPECT_NE(c, background_color);
        EXPECT_EQ(std::find(seen.begin(), seen.end(), c), seen.end());
        seen.push_back(c);
    }
}

TEST(Render, SinglePointAtCenter) {
    RauzyApprox a(3, 2);
    a.subtiles[1].push_back(std::vector<double>{0.3, 0.7});
    const auto img = render(a, {64, 48, 0.05, {}});
    EXPECT_EQ(img.rgb.size(), 3u * 64 * 48);
    EXPECT_EQ(img.pixel(32, 48 - 1 - 24), letter_color(2));
    EXPECT_EQ(foreground_colors(img).size(), 1u);
}

TEST(Render, TribonacciThreeColors) {
    const auto s = perron_data(fixture::tribonacci_matrix);
    const auto a = project_prefixes(DirectiveSequence::constant(0), fixture::tribonacci(), s, 100000);
    const auto img = render(a);
    EXPECT_EQ(img.width, 800u);
    EXPECT_EQ(foreground_colors(img).size(), 3u);
    // The fit leaves the margin blank.
    for (std::size_t c = 0; c < 800; ++c) EXPECT_EQ(img.pixel(c, 10), background_color);
}

TEST(Render, OrientationYUp) {
    RauzyApprox a(2, 2);
    a.subtiles[0].push_back(std::vector<double>{0, 0});
    a.subtiles[1].push_back(std::vector<double>{0, 1});
    const auto img = render(a, {32, 32, 0.1, {}});
    // Higher y lands on an earlier row.
    std::size_t row_a = 0, row_b = 0;
    for (std::size_t r = 0; r < 32; ++r)
        for (std::size_t c = 0; c < 32; ++c) {
            if (img.pixel(c, r) == letter_color(1)) row_a = r;
            if (img.pixel(c, r) == letter_color(2)) row_b = r;
        }
    EXPECT_LT(row_b, row_a);
}

TEST(Render, Errors) {
    RauzyApprox a(2, 2);
    EXPECT_THROW(render(a), input_error);
    a.subtiles[0].push_back(std::vector<double>{0, 0});
    EXPECT_THROW(render(a, {8, 8, 0.05, {}}), input_error);
    EXPECT_THROW(render(a, {32, 32, 0.05, {Rgb{1, 2, 3}, Rgb{1, 2, 3}}}), input_error);
}

TEST(Ppm, RoundTrip) {
    RasterImage img(20, 17);
    img.set(3, 4, {9, 8, 7});
    std::stringstream buf;
    write_ppm(buf, img);
    EXPECT_EQ(buf.str().substr(0, 13), "P6\n20 17\n255\n");
    const auto back = read_ppm(buf);
    EXPECT_EQ(back.rgb, img.rgb);
}
