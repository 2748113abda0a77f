#ifndef RAUZY_CHECKS_HPP
#define RAUZY_CHECKS_HPP

// Runtime invariant suite behind the `check` command.

#include <cmath>
#include <string>
#include <vector>

#include "rauzy/fractal.hpp"

namespace rauzy {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0;
    std::string relation;  // how measured compares to threshold
    double threshold = 0;
};

struct CheckOptions {
    std::size_t points = 20000;
    std::size_t depth = 10;
    std::uint64_t seed = 1;
    double tol = default_tolerance;
    double lambda_scale = 1.0;  // < 1 injects a fault into the contraction checks
};

inline Word random_word(SplitMix64& rng, std::size_t d, std::size_t len) {
    Word w(len);
    for (auto& a : w) a = letter_at(rng.below(d));
    return w;
}

/// Per-letter clouds of 1..max_per_letter points uniform in [-r, r]^dim.
inline RauzyApprox random_approx(SplitMix64& rng, std::size_t letters, std::size_t dim, std::size_t max_per_letter,
                                 double r) {
    RauzyApprox a(letters, dim);
    std::vector<double> p(dim);
    for (auto& tile : a.subtiles) {
        const auto n = 1 + rng.below(max_per_letter);
        for (std::size_t i = 0; i < n; ++i) {
            for (auto& x : p) x = (2 * rng.uniform() - 1) * r;
            tile.push_back(p);
        }
    }
    return a;
}

namespace detail {

inline CheckResult at_most(std::string name, double measured, double threshold) {
    return {std::move(name), measured <= threshold, measured, "<=", threshold};
}
inline CheckResult below(std::string name, double measured, double threshold) {
    return {std::move(name), measured < threshold, measured, "<", threshold};
}
inline CheckResult equal(std::string name, double measured, double threshold) {
    return {std::move(name), measured == threshold, measured, "==", threshold};
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace detail

/// The invariants of every module, evaluated on one substitution set and sequence.
inline std::vector<CheckResult> run_invariant_suite(const SubstitutionSet& set, const DirectiveSequence& seq,
                                                    const CheckOptions& opt = {}) {
    using namespace detail;
    std::vector<CheckResult> out;
    SplitMix64 rng(opt.seed);
    const auto d = set.alphabet_size();

    // core
    {
        std::size_t bad = 0, bad_morph = 0, bad_table = 0;
        for (const auto& s : set.substitutions()) {
            for (int t = 0; t < 200; ++t) {
                const auto w = random_word(rng, d, rng.below(201));
                if (abelianize(s.apply(w), d) != s.incidence_matrix().apply(abelianize(w, d))) ++bad;
                const auto w2 = random_word(rng, d, rng.below(50));
                Word cat = w;
                cat.insert(cat.end(), w2.begin(), w2.end());
                Word lhs = s.apply(cat), rhs = s.apply(w);
                const auto tail = s.apply(w2);
                rhs.insert(rhs.end(), tail.begin(), tail.end());
                if (lhs != rhs) ++bad_morph;
            }
            for (const auto& e : prefix_suffix_table(s)) {
                Word r = e.prefix;
                r.push_back(e.pivot);
                r.insert(r.end(), e.suffix.begin(), e.suffix.end());
                if (r != s.image(e.letter_in)) ++bad_table;
            }
        }
        out.push_back(equal("core.abelianization_commutes", double(bad), 0));
        out.push_back(equal("core.monoid_morphism", double(bad_morph), 0));
        out.push_back(equal("core.prefix_suffix_reconstruction", double(bad_table), 0));

        std::size_t bad_exp = 0;
        for (const auto& s : set.substitutions()) {
            const auto& m = s.incidence_matrix();
            if (auto e = primitivity_exponent(m)) {
                IntMatrix p = IntMatrix::identity(d);
                for (std::size_t k = 0; k + 1 < *e; ++k) p = p * m;
                if (*e > 1 && p.strictly_positive()) ++bad_exp;
                if (!(p * m).strictly_positive()) ++bad_exp;
            }
        }
        out.push_back(equal("core.primitivity_exponent_minimal", double(bad_exp), 0));
    }

    if (!set.shared_matrix()) throw domain_error("substitutions do not share one incidence matrix");
    const IntMatrix& m = *set.shared_matrix();
    const auto s = perron_data(m, opt.tol);
    const double lambda = s.lambda * opt.lambda_scale;

    // spectral
    {
        double ch = 0;
        const auto pm = s.polynomial.evaluate(m);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) ch = std::max(ch, std::abs(double(pm(i, j))));
        out.push_back(equal("spectral.cayley_hamilton", ch, 0));

        const Eigen::MatrixXd a = detail::to_eigen(m);
        const double ru = (a * s.u - s.beta * s.u).lpNorm<Eigen::Infinity>() / s.u.lpNorm<Eigen::Infinity>();
        const double rv = (a.transpose() * s.v - s.beta * s.v).lpNorm<Eigen::Infinity>() / s.v.lpNorm<Eigen::Infinity>();
        out.push_back(at_most("spectral.perron_residual", std::max(ru, rv), opt.tol * s.beta));
        out.push_back(at_most("spectral.projection_kernel", project(s, Eigen::VectorXd(s.u / s.u.norm())).norm(), 1e-9));
        out.push_back(at_most("spectral.commutation", max_abs(s.proj_coords * a - s.m_s * s.proj_coords), 1e-9));

        double worst = 0;
        for (int t = 0; t < 10000; ++t) {
            Eigen::VectorXd y(Eigen::Index(s.stable_dimension()));
            for (Eigen::Index k = 0; k < y.size(); ++k) y(k) = 2 * rng.uniform() - 1;
            const double ny = adapted_norm(s, y);
            if (ny > 0) worst = std::max(worst, adapted_norm(s, s.m_s * y) / ny);
        }
        out.push_back(at_most("spectral.adapted_contraction", worst, lambda));
        out.push_back(at_most("spectral.lambda_below_one", lambda, 1.0 - 1e-12));
        out.push_back(equal("spectral.unimodular", std::abs(double(determinant(m))), 1));
    }

    // adic
    const std::size_t npts = std::max<std::size_t>(opt.points, 1);
    {
        LimitPointExpansion ex(seq, set, std::max<std::size_t>(npts, 2));
        std::size_t bad = 0;
        Word prev;
        for (std::size_t n = 0; n <= ex.depth(); ++n) {
            Word w{ex.chain()[n]};
            for (std::size_t k = n; k-- > 0;) w = set[seq[k]].apply(w);
            if (prev.size() > w.size() || !std::equal(prev.begin(), prev.end(), w.begin())) ++bad;
            prev = std::move(w);
        }
        out.push_back(equal("adic.prefix_nesting", double(bad), 0));

        const auto chains = limit_letter_chains(seq, set, ex.depth());
        out.push_back(at_most("adic.limit_point_count", double(chains.chains.size()), double(d)));

        const auto r1 = DirectiveSequence::random(opt.seed, std::vector<double>(set.size(), 1.0));
        const auto r2 = DirectiveSequence::random(opt.seed, std::vector<double>(set.size(), 1.0));
        out.push_back(equal("adic.random_determinism", double(r1.take(1000) != r2.take(1000)), 0));
    }

    // fractal
    {
        LimitPointExpansion ex(seq, set, npts + 1);
        const auto& u = ex.word();
        std::size_t bad = 0;
        AbelianVector counts(d, 0);
        std::size_t next_sample = 0;
        for (std::size_t len = 0; len < std::min(u.size(), npts + 1); ++len) {
            if (len == next_sample) {
                if (ex.telescoped_abelianization(ex.decompose(len)) != counts) ++bad;
                next_sample += 1 + rng.below(std::max<std::size_t>(npts / 500, 1));
            }
            if (len < u.size()) ++counts[index_of(u[len])];
        }
        out.push_back(equal("fractal.telescoping_identity", double(bad), 0));

        const auto cloud = project_prefixes(seq, set, s, npts);
        const double bound = prefix_norm_constant(set, s) / (1.0 - lambda);
        out.push_back(below("fractal.boundedness", cloud.max_norm, bound));

        std::size_t axiom_bad = 0;
        for (int t = 0; t < 30; ++t) {
            auto a = random_approx(rng, 1, 2, 40, 1.0).all_points();
            auto b = random_approx(rng, 1, 2, 40, 1.0).all_points();
            auto c = random_approx(rng, 1, 2, 40, 1.0).all_points();
            const double ab = hausdorff(a, b).distance, ba = hausdorff(b, a).distance;
            const double bc = hausdorff(b, c).distance, ac = hausdorff(a, c).distance;
            if (ab != ba || hausdorff(a, a).distance != 0 || ac > ab + bc + 1e-12) ++axiom_bad;
        }
        out.push_back(equal("fractal.hausdorff_axioms", double(axiom_bad), 0));

        double worst = 0;
        for (const auto& sub : set.substitutions()) {
            const auto g = build_gifs_map(sub, s);
            for (int t = 0; t < 40; ++t) {
                const auto a = random_approx(rng, d, s.stable_dimension(), 12, 1.0);
                const auto b = random_approx(rng, d, s.stable_dimension(), 12, 1.0);
                const double before = approx_distance(a, b, s).max_subtile;
                const double after = approx_distance(gifs_step(g, a), gifs_step(g, b), s).max_subtile;
                if (before > 0) worst = std::max(worst, after / before);
            }
        }
        out.push_back(at_most("fractal.gifs_contraction", worst, lambda + 1e-9));

        double mismatch = 0;
        if (ex.depth() >= 1) {
            const auto g = build_gifs_map(set[ex.substitution_at(0)], s);
            const auto lhs = gifs_step(g, word_cloud(ex.level(1), s, ex.level(1).size()));
            const auto rhs = word_cloud(ex.level(0), s, ex.level(0).size());
            if (lhs.size() != rhs.size()) mismatch = INFINITY;
            else mismatch = approx_distance(lhs, rhs, s).max_subtile;
        }
        out.push_back(at_most("fractal.set_equation", mismatch, 1e-9));

        const std::size_t depth = std::max<std::size_t>(opt.depth, 1);
        const auto seed_a = origin_seed(d, s.stable_dimension());
        const auto seed_b = random_approx(rng, d, s.stable_dimension(), 5, 1.0);
        const double seeds = approx_distance(seed_a, seed_b, s).max_subtile;
        const auto ra = gifs_attractor(seq, set, s, depth, seed_a);
        const auto rb = gifs_attractor(seq, set, s, depth, seed_b);
        const double diff = approx_distance(ra, rb, s).max_subtile;
        out.push_back(at_most("fractal.seed_independence", diff, std::pow(lambda, double(depth)) * seeds + 1e-9));
    }
    return out;
}

} // namespace rauzy

#endif // RAUZY_CHECKS_HPP
