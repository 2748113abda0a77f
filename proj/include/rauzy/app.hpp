#ifndef RAUZY_APP_HPP
#define RAUZY_APP_HPP

// Subcommands of the rauzy CLI. Each writes a report to `out`, diagnostics to
// `err`, and returns the process exit code.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rauzy/checks.hpp"
#include "rauzy/io.hpp"
#include "rauzy/parse.hpp"

namespace rauzy {

enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,  // a check failed, or an unclassified error
    exit_input = 2,
    exit_domain = 3,
    exit_resource = 4,
};

struct RunConfig {
    std::string subs;                // substitution file
    std::string seq = "(1)";
    std::string command;
    std::size_t points = 100000;
    std::size_t depth = 12;
    std::uint64_t seed = 0;
    double tol = default_tolerance;
    std::string out = "rauzy";       // stem; .csv / .ppm appended
    std::string format = "both";     // csv | ppm | both
    std::size_t width = 800;
    std::size_t height = 800;
    double margin = 0.05;
    std::vector<Rgb> colors;
    std::size_t budget = default_point_budget;

    // command-specific
    std::string variant = "(2)";                 // continuity
    std::size_t n_min = 2, n_max = 10;           // continuity
    std::vector<std::size_t> windows{1, 10, 100, 1000};  // balance
    std::size_t max_factor = 5;                  // balance
    double radius = 2.0, step = 0.01;            // cover
    std::string input;                           // render
    std::string inject_fault;                    // check
};

/// RAUZY_POINT_BUDGET, if set and positive.
inline std::optional<std::size_t> budget_from_env() {
    const char* v = std::getenv("RAUZY_POINT_BUDGET");
    if (!v || !*v) return std::nullopt;
    char* end = nullptr;
    const auto n = std::strtoull(v, &end, 10);
    if (*end != '\0' || n == 0) throw input_error("RAUZY_POINT_BUDGET must be a positive integer");
    return std::size_t(n);
}

inline void validate(const RunConfig& c) {
    if (c.points < 1) throw input_error("--points must be at least 1");
    if (c.depth < 1) throw input_error("--depth must be at least 1");
    if (c.width < 16 || c.height < 16) throw input_error("--width and --height must be at least 16");
    if (!(c.margin >= 0 && c.margin < 0.5)) throw input_error("--margin must be in [0, 0.5)");
    if (c.format != "csv" && c.format != "ppm" && c.format != "both") throw input_error("--format must be csv, ppm or both");
    if (!(c.tol > 0)) throw input_error("--tol must be positive");
    for (std::size_t i = 0; i < c.colors.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (c.colors[i] == c.colors[j]) throw input_error("letter colors must be distinct");
}

/// Parses "r,g,b;r,g,b;..." or "#rrggbb,#rrggbb".
inline std::vector<Rgb> parse_colors(const std::string& text) {
    std::vector<Rgb> out;
    if (text.empty()) return out;
    if (text[0] == '#') {
        std::size_t pos = 0;
        while (pos < text.size()) {
            auto comma = text.find(',', pos);
            if (comma == std::string::npos) comma = text.size();
            const auto item = text.substr(pos, comma - pos);
            if (item.size() != 7 || item[0] != '#') throw input_error("bad color '" + item + "'");
            char* end = nullptr;
            const auto v = std::strtoul(item.c_str() + 1, &end, 16);
            if (*end != '\0') throw input_error("bad color '" + item + "'");
            out.push_back({std::uint8_t(v >> 16), std::uint8_t(v >> 8), std::uint8_t(v)});
            pos = comma + 1;
        }
        return out;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto semi = text.find(';', pos);
        if (semi == std::string::npos) semi = text.size();
        const auto item = text.substr(pos, semi - pos);
        unsigned r = 0, g = 0, b = 0;
        char tail = 0;
        if (std::sscanf(item.c_str(), "%u,%u,%u%c", &r, &g, &b, &tail) != 3 || r > 255 || g > 255 || b > 255)
            throw input_error("bad color '" + item + "'");
        out.push_back({std::uint8_t(r), std::uint8_t(g), std::uint8_t(b)});
        pos = semi + 1;
    }
    return out;
}

namespace detail {

inline std::string stem(const std::string& path) {
    for (const char* ext : {".csv", ".ppm"}) {
        const std::string e = ext;
        if (path.size() > e.size() && path.compare(path.size() - e.size(), e.size(), e) == 0)
            return path.substr(0, path.size() - e.size());
    }
    return path;
}

inline SubstitutionSet load_set(const RunConfig& c) {
    if (c.subs.empty()) throw input_error("--subs is required");
    return SubstitutionSet(load_substitution_set(c.subs));
}

inline std::string moduli(const std::vector<std::complex<double>>& zs) {
    std::vector<double> m;
    for (const auto& z : zs) m.push_back(std::abs(z));
    std::sort(m.begin(), m.end(), std::greater<>());
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + format_double(m[i]);
    return s;
}

inline void emit(std::ostream& out, const RauzyApprox& a, const RunConfig& c) {
    const auto base = stem(c.out);
    if (c.format != "ppm") {
        write_csv(base + ".csv", a);
        out << "csv: " << base << ".csv\n";
    }
    if (c.format != "csv") {
        RenderOptions ro;
        ro.width = c.width;
        ro.height = c.height;
        ro.margin = c.margin;
        ro.colors = c.colors;
        write_ppm(base + ".ppm", render(a, ro));
        out << "ppm: " << base << ".ppm\n";
    }
}

inline void subtile_summary(std::ostream& out, const RauzyApprox& a) {
    out << "points: " << a.size() << "\nsubtiles: ";
    for (std::size_t i = 0; i < a.letters(); ++i) out << (i ? "," : "") << a.subtiles[i].size();
    out << '\n';
}

inline ThinningPolicy policy(const RunConfig& c) { return {c.budget, c.seed}; }

inline void require_budget(std::size_t n, const RunConfig& c) {
    if (n > c.budget) throw resource_error("requested " + std::to_string(n) + " points exceeds the budget of " +
                                           std::to_string(c.budget));
}

} // namespace detail

inline int cmd_info(const RunConfig& c, std::ostream& out) {
    const auto set = detail::load_set(c);
    out << "alphabet: " << std::string(set.alphabet().symbols()) << '\n';
    out << "substitutions: " << set.size() << '\n';
    for (const auto& s : set.substitutions()) out << "matrix " << s.name() << ": " << s.incidence_matrix().to_string() << '\n';
    const auto& shared = set.shared_matrix();
    out << "same-matrix: " << (shared ? "yes" : "no") << '\n';
    if (!shared) return exit_ok;

    const auto& m = *shared;
    const auto e = primitivity_exponent(m);
    out << "primitivity-exponent: " << (e ? std::to_string(*e) : std::string("none")) << '\n';
    const auto p = char_poly(m);
    out << "char-poly: " << p.to_string() << '\n';
    out << "det: " << determinant(m) << '\n';
    if (!e) {
        out << "pisot: no\n";
        return exit_ok;
    }
    const auto rep = pisot_report(m);
    out << "beta: " << format_double(rep.beta) << '\n';
    out << "conjugate-moduli: " << detail::moduli(rep.conjugates) << '\n';
    out << "zero-eigenvalue: " << (rep.zero_eigenvalue ? "yes" : "no") << '\n';
    out << "pisot: " << (rep.pisot ? "yes" : "no") << '\n';
    out << "irreducible: " << (m.size() <= 4 ? (is_irreducible_charpoly(p) ? "yes" : "no") : "unchecked") << '\n';
    out << "unimodular: " << (std::abs(determinant(m)) == 1 ? "yes" : "no") << '\n';
    if (rep.pisot) {
        const auto s = perron_data(m, c.tol);
        out << "lambda: " << format_double(s.lambda) << '\n';
        out << "stable-radius: " << format_double(s.stable_radius) << '\n';
    }
    return exit_ok;
}

inline int cmd_fractal(const RunConfig& c, std::ostream& out) {
    detail::require_budget(c.points, c);
    const auto set = detail::load_set(c);
    const auto seq = DirectiveSequence::parse(c.seq, set.size());
    detail::require_same_matrix_pisot(set);
    const auto s = perron_data(*set.shared_matrix(), c.tol);
    const auto a = project_prefixes(seq, set, s, c.points);
    detail::subtile_summary(out, a);
    out << "max-adapted-norm: " << format_double(a.max_norm) << '\n';
    out << "bound: " << format_double(a.norm_bound) << '\n';
    const bool ok = a.max_norm < a.norm_bound;
    out << "bound-check: " << (ok ? "pass" : "fail") << '\n';
    detail::emit(out, a, c);
    return ok ? exit_ok : exit_failure;
}

inline int cmd_gifs(const RunConfig& c, std::ostream& out) {
    const auto set = detail::load_set(c);
    const auto seq = DirectiveSequence::parse(c.seq, set.size());
    detail::require_same_matrix_pisot(set);
    const auto s = perron_data(*set.shared_matrix(), c.tol);
    const auto a = gifs_attractor(seq, set, s, c.depth, origin_seed(set.alphabet_size(), s.stable_dimension()),
                                  detail::policy(c));
    detail::subtile_summary(out, a);
    out << "depth: " << a.depth << '\n';
    out << "thinned: " << (a.thinned ? "yes" : "no") << '\n';
    out << "max-adapted-norm: " << format_double(a.max_norm) << '\n';
    out << "bound: " << format_double(a.norm_bound) << '\n';
    out << "error-bound: " << format_double(a.error_bound) << '\n';
    detail::emit(out, a, c);
    return exit_ok;
}

inline int cmd_compare(const RunConfig& c, std::ostream& out) {
    detail::require_budget(c.points, c);
    const auto set = detail::load_set(c);
    const auto seq = DirectiveSequence::parse(c.seq, set.size());
    detail::require_same_matrix_pisot(set);
    const auto s = perron_data(*set.shared_matrix(), c.tol);
    const auto r = compare_constructions(seq, set, s, c.points, c.depth, detail::policy(c));
    out << "hausdorff: " << format_double(r.overall) << '\n';
    out << "hausdorff-max-subtile: " << format_double(r.max_subtile) << '\n';
    for (std::size_t i = 0; i < r.per_subtile.size(); ++i)
        out << "subtile " << i + 1 << ": " << (r.per_subtile[i] ? format_double(*r.per_subtile[i]) : "empty") << '\n';
    return exit_ok;
}

inline int cmd_continuity(const RunConfig& c, std::ostream& out) {
    detail::require_budget(c.points, c);
    if (c.n_min > c.n_max) throw input_error("--n-min exceeds --n-max");
    const auto set = detail::load_set(c);
    const auto base = DirectiveSequence::parse(c.seq, set.size());
    const auto variant = DirectiveSequence::parse(c.variant, set.size());
    detail::require_same_matrix_pisot(set);
    const auto s = perron_data(*set.shared_matrix(), c.tol);
    std::vector<std::size_t> ns;
    for (auto n = c.n_min; n <= c.n_max; ++n) ns.push_back(n);
    const auto r = continuity_experiment(set, s, base, variant, ns, c.points);
    for (const auto& row : r.rows) out << "n " << row.n << ": " << format_double(row.distance) << '\n';
    out << "ratio: " << (r.ratio ? format_double(*r.ratio) : std::string("unresolved")) << '\n';
    out << "lambda: " << format_double(s.lambda) << '\n';
    out << "monotone-violations: " << r.monotone_violations << '\n';
    out << "resolution-limited: " << (r.resolution_limited ? "yes" : "no") << '\n';
    return exit_ok;
}

inline int cmd_balance(const RunConfig& c, std::ostream& out) {
    const auto set = detail::load_set(c);
    const auto seq = DirectiveSequence::parse(c.seq, set.size());
    const auto u = limit_point_prefix(seq, set, c.points);
    const std::span<const Letter> w(u.data(), std::min(u.size(), c.points));
    out << "length: " << w.size() << '\n';
    for (auto k : c.windows) {
        if (k > w.size()) continue;
        out << "balance k=" << k << ": " << balance(w, k, set.alphabet_size()).c << '\n';
    }
    for (std::size_t f = 1; f <= c.max_factor; ++f) {
        const auto g = factor_gap_check(w, f, set.alphabet_size());
        out << "gap len=" << f << ": " << g.max_gap << " (" << g.factors_checked << " factors)\n";
    }
    return exit_ok;
}

inline int cmd_cover(const RunConfig& c, std::ostream& out) {
    detail::require_budget(c.points, c);
    const auto set = detail::load_set(c);
    const auto seq = DirectiveSequence::parse(c.seq, set.size());
    detail::require_same_matrix_pisot(set);
    const auto s = perron_data(*set.shared_matrix(), c.tol);
    const auto a = project_prefixes(seq, set, s, c.points);
    const auto g = gamma_generators(s);
    const auto r = coverage_estimate(a, g, c.radius, c.step);
    out << "covered-fraction: " << format_double(r.fraction) << '\n';
    out << "grid-points: " << r.grid_points << '\n';
    out << "translates: " << r.translates << '\n';
    return exit_ok;
}

inline int cmd_check(const RunConfig& c, std::ostream& out) {
    const auto set = detail::load_set(c);
    const auto seq = DirectiveSequence::parse(c.seq, set.size());
    CheckOptions opt;
    opt.points = std::min(c.points, std::size_t(20000));
    opt.depth = std::min(c.depth, std::size_t(10));
    opt.seed = c.seed;
    opt.tol = c.tol;
    if (c.inject_fault == "lambda") opt.lambda_scale = 0.5;
    else if (!c.inject_fault.empty()) throw input_error("unknown fault '" + c.inject_fault + "'");
    bool all = true;
    for (const auto& r : run_invariant_suite(set, seq, opt)) {
        all = all && r.pass;
        out << r.name << ' ' << (r.pass ? "pass" : "FAIL") << " measured=" << format_double(r.measured) << ' '
            << r.relation << ' ' << format_double(r.threshold) << '\n';
    }
    return all ? exit_ok : exit_failure;
}

inline int cmd_render(const RunConfig& c, std::ostream& out) {
    if (c.input.empty()) throw input_error("--input CSV is required");
    const auto a = read_csv(c.input);
    detail::subtile_summary(out, a);
    RunConfig rc = c;
    rc.format = "ppm";
    detail::emit(out, a, rc);
    return exit_ok;
}

/// Runs a command and maps library errors to exit codes.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        validate(c);
        if (c.command == "info") return cmd_info(c, out);
        if (c.command == "fractal") return cmd_fractal(c, out);
        if (c.command == "gifs") return cmd_gifs(c, out);
        if (c.command == "compare") return cmd_compare(c, out);
        if (c.command == "continuity") return cmd_continuity(c, out);
        if (c.command == "balance") return cmd_balance(c, out);
        if (c.command == "cover") return cmd_cover(c, out);
        if (c.command == "check") return cmd_check(c, out);
        if (c.command == "render") return cmd_render(c, out);
        throw input_error("unknown command '" + c.command + "'");
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_input;
    } catch (const input_error& e) {
        err << "input error: " << e.what() << '\n';
        return exit_input;
    } catch (const domain_error& e) {
        err << "refused: " << e.what() << '\n';
        return exit_domain;
    } catch (const indeterminate_error& e) {
        err << "refused: " << e.what() << '\n';
        return exit_domain;
    } catch (const unsupported_error& e) {
        err << "refused: " << e.what() << '\n';
        return exit_domain;
    } catch (const resource_error& e) {
        err << "resource limit: " << e.what() << '\n';
        return exit_resource;
    } catch (const std::bad_alloc&) {
        err << "resource limit: out of memory\n";
        return exit_resource;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

} // namespace rauzy

#endif // RAUZY_APP_HPP
