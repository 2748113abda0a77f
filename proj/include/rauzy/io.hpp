#ifndef RAUZY_IO_HPP
#define RAUZY_IO_HPP

// CSV point export/import and PPM rendering.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rauzy/fractal.hpp"

namespace rauzy {

// ---------------------------------------------------------------------------
// CSV: one row per point, "letter,x1,...,x_{d-1}", letter 1-based, %.17g.

inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_csv(std::ostream& out, const RauzyApprox& a) {
    std::string line;
    for (std::size_t i = 0; i < a.letters(); ++i) {
        const auto& tile = a.subtiles[i];
        for (std::size_t n = 0; n < tile.size(); ++n) {
            line = std::to_string(i + 1);
            for (double x : tile[n]) {
                line += ',';
                line += format_double(x);
            }
            line += '\n';
            out << line;
        }
    }
}

inline void write_csv(const std::string& path, const RauzyApprox& a) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write '" + path + "'");
    write_csv(out, a);
    if (!out) throw input_error("write failed for '" + path + "'");
}

/// Letters must lie in 1..letters (letters == 0: take the largest letter seen);
/// all rows must have the same width.
inline RauzyApprox read_csv(std::istream& in, std::size_t letters = 0) {
    std::vector<std::size_t> row_letter;
    std::vector<double> coords;
    std::string line;
    std::size_t lineno = 0, dim = 0, max_letter = 0;
    std::vector<double> p;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        p.clear();
        std::size_t letter = 0;
        std::size_t pos = 0, field = 0;
        while (pos <= line.size()) {
            auto comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            const std::string item = line.substr(pos, comma - pos);
            char* end = nullptr;
            if (field == 0) {
                const long v = std::strtol(item.c_str(), &end, 10);
                if (item.empty() || *end != '\0' || v < 1 || v > long(max_alphabet_size) ||
                    (letters && std::size_t(v) > letters))
                    throw parse_error(lineno, "bad letter '" + item + "'");
                letter = std::size_t(v);
            } else {
                const double v = std::strtod(item.c_str(), &end);
                if (item.empty() || *end != '\0' || !std::isfinite(v)) throw parse_error(lineno, "bad coordinate '" + item + "'");
                p.push_back(v);
            }
            ++field;
            pos = comma + 1;
        }
        if (p.empty()) throw parse_error(lineno, "row without coordinates");
        if (dim == 0) dim = p.size();
        else if (p.size() != dim) throw parse_error(lineno, "inconsistent row width");
        row_letter.push_back(letter);
        coords.insert(coords.end(), p.begin(), p.end());
        max_letter = std::max(max_letter, letter);
    }
    if (dim == 0) throw parse_error(0, "no points in CSV");

    RauzyApprox a(letters ? letters : max_letter, dim);
    a.provenance = Provenance::imported;
    for (std::size_t r = 0; r < row_letter.size(); ++r)
        a.subtiles[row_letter[r] - 1].push_back(std::span<const double>(coords.data() + r * dim, dim));
    return a;
}

inline RauzyApprox read_csv(const std::string& path, std::size_t letters = 0) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open '" + path + "'");
    return read_csv(in, letters);
}

// ---------------------------------------------------------------------------
// Raster output

using Rgb = std::array<std::uint8_t, 3>;

inline constexpr Rgb background_color{255, 255, 255};

/// Letters 1-3 use fixed colors; further letters step the hue by the golden angle.
inline Rgb letter_color(std::size_t letter) {
    switch (letter) {
    case 1: return {230, 57, 70};
    case 2: return {69, 123, 157};
    case 3: return {42, 157, 143};
    default: break;
    }
    const double h = std::fmod(double(letter - 3) * 137.50776405003785, 360.0) / 60.0;
    const double s = 0.65, v = 0.75;
    const double c = v * s, x = c * (1 - std::abs(std::fmod(h, 2.0) - 1)), m = v - c;
    double r = 0, g = 0, b = 0;
    switch (int(h)) {
    case 0: r = c, g = x; break;
    case 1: r = x, g = c; break;
    case 2: g = c, b = x; break;
    case 3: g = x, b = c; break;
    case 4: r = x, b = c; break;
    default: r = c, b = x; break;
    }
    auto q = [&](double t) { return std::uint8_t(std::lround((t + m) * 255)); };
    return {q(r), q(g), q(b)};
}

struct RasterImage {
    std::size_t width = 0, height = 0;
    std::vector<std::uint8_t> rgb;  // row 0 at the top

    RasterImage(std::size_t w, std::size_t h, Rgb fill = background_color) : width(w), height(h), rgb(3 * w * h) {
        for (std::size_t i = 0; i < w * h; ++i) std::copy(fill.begin(), fill.end(), rgb.begin() + std::ptrdiff_t(3 * i));
    }

    Rgb pixel(std::size_t col, std::size_t row) const {
        const auto o = 3 * (row * width + col);
        return {rgb[o], rgb[o + 1], rgb[o + 2]};
    }
    void set(std::size_t col, std::size_t row, Rgb c) {
        const auto o = 3 * (row * width + col);
        rgb[o] = c[0], rgb[o + 1] = c[1], rgb[o + 2] = c[2];
    }
};

struct RenderOptions {
    std::size_t width = 800;
    std::size_t height = 800;
    double margin = 0.05;
    std::vector<Rgb> colors;  // per letter; defaults from letter_color
};

/// Uniform-scale fit of the cloud's bounding box, x right and y up; later
/// points overwrite earlier ones.
inline RasterImage render(const RauzyApprox& a, const RenderOptions& opt = {}) {
    if (opt.width < 16 || opt.height < 16) throw input_error("image must be at least 16x16");
    if (a.size() == 0) throw input_error("nothing to render");
    std::vector<Rgb> colors = opt.colors;
    for (std::size_t i = colors.size(); i < a.letters(); ++i) colors.push_back(letter_color(i + 1));
    for (std::size_t i = 0; i < a.letters(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (colors[i] == colors[j]) throw input_error("letter colors must be distinct");

    auto xy = [&](std::span<const double> p) { return std::array<double, 2>{p[0], p.size() > 1 ? p[1] : 0.0}; };
    double lo[2] = {INFINITY, INFINITY}, hi[2] = {-INFINITY, -INFINITY};
    for (const auto& tile : a.subtiles)
        for (std::size_t n = 0; n < tile.size(); ++n) {
            const auto q = xy(tile[n]);
            for (int k = 0; k < 2; ++k) lo[k] = std::min(lo[k], q[k]), hi[k] = std::max(hi[k], q[k]);
        }
    const double usable_w = double(opt.width) * (1 - 2 * opt.margin);
    const double usable_h = double(opt.height) * (1 - 2 * opt.margin);
    const double ex = hi[0] - lo[0], ey = hi[1] - lo[1];
    double scale = 0;
    if (ex > 0 || ey > 0) scale = std::min(ex > 0 ? usable_w / ex : INFINITY, ey > 0 ? usable_h / ey : INFINITY);
    const double cx = (lo[0] + hi[0]) / 2, cy = (lo[1] + hi[1]) / 2;

    RasterImage img(opt.width, opt.height);
    for (std::size_t i = 0; i < a.letters(); ++i) {
        const auto& tile = a.subtiles[i];
        for (std::size_t n = 0; n < tile.size(); ++n) {
            const auto q = xy(tile[n]);
            const double px = std::floor(double(opt.width) / 2 + (q[0] - cx) * scale);
            const double py = std::floor(double(opt.height) / 2 + (q[1] - cy) * scale);
            const auto col = std::size_t(std::clamp(px, 0.0, double(opt.width - 1)));
            const auto up = std::size_t(std::clamp(py, 0.0, double(opt.height - 1)));
            img.set(col, opt.height - 1 - up, colors[i]);
        }
    }
    return img;
}

inline void write_ppm(std::ostream& out, const RasterImage& img) {
    out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.rgb.data()), std::streamsize(img.rgb.size()));
}

inline void write_ppm(const std::string& path, const RasterImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write '" + path + "'");
    write_ppm(out, img);
    if (!out) throw input_error("write failed for '" + path + "'");
}

inline RasterImage read_ppm(std::istream& in) {
    std::string magic;
    std::size_t w = 0, h = 0, maxval = 0;
    in >> magic >> w >> h >> maxval;
    if (magic != "P6" || maxval != 255 || !in) throw parse_error(0, "not a binary PPM with maxval 255");
    in.get();
    RasterImage img(w, h);
    in.read(reinterpret_cast<char*>(img.rgb.data()), std::streamsize(img.rgb.size()));
    if (!in) throw parse_error(0, "truncated PPM");
    return img;
}

/// Distinct non-background colors present.
inline std::vector<Rgb> foreground_colors(const RasterImage& img) {
    std::vector<Rgb> seen;
    for (std::size_t i = 0; i < img.width * img.height; ++i) {
        Rgb c{img.rgb[3 * i], img.rgb[3 * i + 1], img.rgb[3 * i + 2]};
        if (c != background_color && std::find(seen.begin(), seen.end(), c) == seen.end()) seen.push_back(c);
    }
    return seen;
}

} // namespace rauzy

#endif // RAUZY_IO_HPP
