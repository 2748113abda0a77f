// rauzy: generalized Rauzy fractals of S-adic sequences.

#include <iostream>

#include <CLI11.hpp>

#include "rauzy/app.hpp"

int main(int argc, char** argv) {
    rauzy::RunConfig cfg;
    std::string colors;

    CLI::App app{"Generalized Rauzy fractals for products of substitutions with one Pisot matrix"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--subs", cfg.subs, "substitution file");
        sub->add_option("--seq", cfg.seq, "directive sequence: \"12(21)\", \"random:SEED[:w1,w2]\"");
        sub->add_option("--points,-N", cfg.points, "number of points");
        sub->add_option("--depth", cfg.depth, "GIFS depth");
        sub->add_option("--seed", cfg.seed, "thinning / check seed");
        sub->add_option("--tol", cfg.tol, "spectral tolerance");
        sub->add_option("--out", cfg.out, "output stem; .csv/.ppm are appended");
        sub->add_option("--format", cfg.format, "csv|ppm|both");
        sub->add_option("--width", cfg.width, "image width");
        sub->add_option("--height", cfg.height, "image height");
        sub->add_option("--margin", cfg.margin, "image margin fraction");
        sub->add_option("--colors", colors, "per-letter colors, \"r,g,b;r,g,b\" or \"#rrggbb,#rrggbb\"");
    };

    const std::pair<const char*, const char*> commands[] = {
        {"info", "matrices, spectrum and Pisot verdicts"},
        {"fractal", "projection of the limit point's stepped line"},
        {"gifs", "iterated graph-directed IFS from {0}"},
        {"compare", "Hausdorff distance between the two constructions"},
        {"continuity", "distance decay for sequences agreeing to depth n"},
        {"balance", "balance constants and factor return gaps"},
        {"cover", "fraction of a window covered by lattice translates"},
        {"check", "run the invariant suite"},
        {"render", "render a point CSV to PPM"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        common(sub);
        const std::string n = name;
        if (n == "continuity") {
            sub->add_option("--variant", cfg.variant, "sequence used from depth n on");
            sub->add_option("--n-min", cfg.n_min);
            sub->add_option("--n-max", cfg.n_max);
        } else if (n == "balance") {
            sub->add_option("--windows", cfg.windows, "window lengths")->delimiter(',');
            sub->add_option("--max-factor", cfg.max_factor, "longest factor for the gap check");
        } else if (n == "cover") {
            sub->add_option("--radius", cfg.radius, "half-width of the window");
            sub->add_option("--step", cfg.step, "grid spacing");
        } else if (n == "check") {
            sub->add_option("--inject-fault", cfg.inject_fault, "harness self-test: lambda");
        } else if (n == "render") {
            sub->add_option("--input", cfg.input, "CSV of points")->required();
        }
        sub->callback([&cfg, n] { cfg.command = n; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : rauzy::exit_input;
    }

    try {
        cfg.colors = rauzy::parse_colors(colors);
        if (auto b = rauzy::budget_from_env()) cfg.budget = *b;
    } catch (const rauzy::error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return rauzy::exit_input;
    }
    return rauzy::run(cfg, std::cout, std::cerr);
}
