#ifndef RAUZY_FRACTAL_HPP
#define RAUZY_FRACTAL_HPP

// Two constructions of the Rauzy fractal of a directive sequence: projecting
// the stepped line of a limit point, and iterating the graph-directed IFS of
// the set equation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rauzy/adic.hpp"
#include "rauzy/hausdorff.hpp"
#include "rauzy/random.hpp"
#include "rauzy/spectral.hpp"

namespace rauzy {

inline constexpr std::size_t default_point_budget = 2'000'000;

enum class Provenance { projection, gifs, imported };

inline const char* to_string(Provenance p) {
    switch (p) {
    case Provenance::projection: return "projection";
    case Provenance::gifs: return "gifs";
    case Provenance::imported: return "imported";
    }
    return "?";
}

/// Per-letter point clouds in stable coordinates approximating the subtiles.
struct RauzyApprox {
    std::vector<PointSet> subtiles;  // index = letter - 1
    Provenance provenance = Provenance::projection;
    std::size_t depth = 0;
    bool thinned = false;
    double max_norm = 0;      // largest adapted norm among the points
    double norm_bound = 0;    // C / (1 - lambda)
    double error_bound = 0;   // Hausdorff error estimate for GIFS output

    RauzyApprox() = default;
    RauzyApprox(std::size_t letters, std::size_t dim) : subtiles(letters, PointSet(dim)) {}

    std::size_t letters() const noexcept { return subtiles.size(); }
    std::size_t dim() const noexcept { return subtiles.empty() ? 0 : subtiles.front().dim(); }
    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& s : subtiles) n += s.size();
        return n;
    }
    PointSet all_points() const {
        PointSet u(dim());
        u.reserve(size());
        for (const auto& s : subtiles) u.append(s);
        return u;
    }
};

// ---------------------------------------------------------------------------
// Stepped lines and telescoping

struct SteppedLine {
    std::vector<AbelianVector> vertices;  // l(P_0) ... l(P_|u|)
    Word letters;
};

inline SteppedLine stepped_line(std::span<const Letter> u, std::size_t d) {
    SteppedLine s;
    s.letters.assign(u.begin(), u.end());
    s.vertices.reserve(u.size() + 1);
    s.vertices.emplace_back(d, 0);
    for (Letter a : u) {
        if (a < 1 || a > d) throw input_error("letter outside alphabet");
        auto next = s.vertices.back();
        ++next[index_of(a)];
        s.vertices.push_back(std::move(next));
    }
    return s;
}

struct TelescopingDecomposition {
    std::vector<Word> prefixes;   // P_0, ..., P_k
    std::vector<Letter> pivots;   // P_j is a prefix of sigma_j(pivots[j])
    std::size_t k() const noexcept { return prefixes.size() - 1; }
};

/// U = s_0...s_{k-1}(P_k) s_0...s_{k-2}(P_{k-1}) ... s_0(P_1) P_0, with
/// l(U) = sum_j M_0...M_{j-1} l(P_j) checked exactly before returning.
inline TelescopingDecomposition telescoping_decomposition(const DirectiveSequence& seq, const SubstitutionSet& set,
                                                          std::span<const Letter> prefix, std::size_t chain_index = 0) {
    LimitPointExpansion ex(seq, set, std::max<std::size_t>(prefix.size() + 1, 2), chain_index);
    const auto& w = ex.word();
    if (!std::equal(prefix.begin(), prefix.end(), w.begin()))
        throw domain_error("word is not a prefix of the limit point");
    const auto terms = ex.decompose(prefix.size());

    TelescopingDecomposition out;
    for (std::size_t j = 0; j < terms.size(); ++j) {
        const auto& im = set[ex.substitution_at(j)].image(terms[j].pivot);
        out.prefixes.emplace_back(im.begin(), im.begin() + std::ptrdiff_t(terms[j].length));
        out.pivots.push_back(terms[j].pivot);
    }
    if (ex.telescoped_abelianization(terms) != abelianize(prefix, set.alphabet_size()))
        throw arithmetic_error("telescoping identity failed");
    return out;
}

// ---------------------------------------------------------------------------
// Projection construction

/// C = max adapted norm of pi_s(l(P)) over proper prefixes P of all images.
inline double prefix_norm_constant(const SubstitutionSet& set, const SpectralData& s) {
    double c = 0;
    for (const auto& sub : set.substitutions())
        for (const auto& e : prefix_suffix_table(sub))
            c = std::max(c, adapted_norm(s, project(s, abelianize(e.prefix, set.alphabet_size()))));
    return c;
}

inline double norm_bound(const SubstitutionSet& set, const SpectralData& s) {
    return prefix_norm_constant(set, s) / (1.0 - s.lambda);
}

namespace detail {

inline void require_same_matrix_pisot(const SubstitutionSet& set) {
    if (!set.shared_matrix()) throw domain_error("substitutions do not share one incidence matrix");
    if (!is_pisot(*set.shared_matrix())) throw domain_error("incidence matrix is not Pisot: projection is unbounded");
}

} // namespace detail

/// Projects the vertices of u's stepped line; vertex k goes to the subtile of u_k.
inline RauzyApprox word_cloud(std::span<const Letter> u, const SpectralData& s, std::size_t count) {
    const auto d = s.dimension;
    const auto dim = s.stable_dimension();
    count = std::min(count, u.size());
    RauzyApprox out(d, dim);
    std::vector<std::int64_t> counts(d, 0);
    std::vector<double> p(dim);
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t r = 0; r < dim; ++r) {
            double acc = 0;
            for (std::size_t j = 0; j < d; ++j) acc += s.proj_coords(Eigen::Index(r), Eigen::Index(j)) * double(counts[j]);
            p[r] = acc;
        }
        out.subtiles[index_of(u[k])].push_back(p);
        ++counts[index_of(u[k])];
    }
    return out;
}

inline double max_adapted_norm(const RauzyApprox& a, const SpectralData& s) {
    double m = 0;
    Eigen::VectorXd y(Eigen::Index(a.dim()));
    for (const auto& tile : a.subtiles)
        for (std::size_t i = 0; i < tile.size(); ++i) {
            for (std::size_t k = 0; k < a.dim(); ++k) y(Eigen::Index(k)) = tile[i][k];
            m = std::max(m, adapted_norm(s, y));
        }
    return m;
}

/// First `n_points` vertices of the limit point's stepped line, projected.
inline RauzyApprox project_prefixes(const DirectiveSequence& seq, const SubstitutionSet& set, const SpectralData& s,
                                    std::size_t n_points, std::size_t chain_index = 0) {
    if (n_points == 0) throw input_error("point count must be positive");
    detail::require_same_matrix_pisot(set);
    const auto u = limit_point_prefix(seq, set, n_points, chain_index);
    auto out = word_cloud(u, s, n_points);
    out.provenance = Provenance::projection;
    out.max_norm = max_adapted_norm(out, s);
    out.norm_bound = norm_bound(set, s);
    return out;
}

// ---------------------------------------------------------------------------
// Graph-directed IFS

struct GifsEdge {
    Letter source;             // j: the set being mapped
    std::size_t position;      // k
    Letter target;             // i = k-th letter of sigma(j)
    Eigen::VectorXd translation;  // pi_s(l(P_k))
};

/// y -> M_s y + pi_s(l(P)) for every (j, k) of a substitution's prefix table.
struct GifsMap {
    std::string name;
    Eigen::MatrixXd linear;
    std::vector<GifsEdge> edges;  // grouped by target letter, table order within a group
    std::size_t letters = 0;
};

inline GifsMap build_gifs_map(const Substitution& sub, const SpectralData& s) {
    GifsMap g;
    g.name = sub.name();
    g.linear = s.m_s;
    g.letters = sub.alphabet_size();
    const auto table = prefix_suffix_table(sub);
    for (std::size_t i = 1; i <= g.letters; ++i)
        for (const auto& e : table)
            if (e.pivot == i)
                g.edges.push_back({e.letter_in, e.position, e.pivot, project(s, abelianize(e.prefix, g.letters))});
    return g;
}

struct ThinningPolicy {
    std::size_t budget = default_point_budget;
    std::uint64_t seed = 0;
};

/// One application of the set equation: subtile i becomes the union over edges
/// (j, k) with target i of M_s * subtile_j + translation.
inline RauzyApprox gifs_step(const GifsMap& g, const RauzyApprox& in, const ThinningPolicy& policy = {}) {
    const auto dim = in.dim();
    if (in.letters() != g.letters) throw input_error("letter count mismatch");

    std::size_t total = 0;
    for (const auto& e : g.edges) total += in.subtiles[index_of(e.source)].size();
    const bool thin = total > policy.budget;
    SplitMix64 rng(policy.seed);
    std::size_t remaining = total, needed = std::min(total, policy.budget);

    RauzyApprox out(g.letters, dim);
    out.provenance = Provenance::gifs;
    out.depth = in.depth + 1;
    out.thinned = in.thinned || thin;
    std::vector<double> p(dim);
    for (const auto& e : g.edges) {
        const auto& src = in.subtiles[index_of(e.source)];
        auto& dst = out.subtiles[index_of(e.target)];
        for (std::size_t n = 0; n < src.size(); ++n) {
            if (thin) {
                // Selection sampling: keep exactly `budget` points, uniformly.
                const bool keep = double(needed) > rng.uniform() * double(remaining);
                --remaining;
                if (!keep) continue;
                --needed;
            }
            const auto x = src[n];
            for (std::size_t r = 0; r < dim; ++r) {
                double acc = e.translation(Eigen::Index(r));
                for (std::size_t c = 0; c < dim; ++c) acc += g.linear(Eigen::Index(r), Eigen::Index(c)) * x[c];
                p[r] = acc;
            }
            dst.push_back(p);
        }
    }
    return out;
}

/// {0} in every subtile.
inline RauzyApprox origin_seed(std::size_t letters, std::size_t dim) {
    RauzyApprox a(letters, dim);
    std::vector<double> zero(dim, 0.0);
    for (auto& t : a.subtiles) t.push_back(zero);
    a.provenance = Provenance::gifs;
    return a;
}

/// Phi_{s_0} o ... o Phi_{s_{n-1}} applied to the seed.
inline RauzyApprox gifs_attractor(const DirectiveSequence& seq, const SubstitutionSet& set, const SpectralData& s,
                                  std::size_t depth, const RauzyApprox& seed, const ThinningPolicy& policy = {}) {
    if (depth < 1) throw input_error("depth must be at least 1");
    detail::require_same_matrix_pisot(set);
    for (const auto& t : seed.subtiles)
        if (t.empty()) throw input_error("seed must be nonempty for every letter");

    std::vector<GifsMap> maps;
    for (const auto& sub : set.substitutions()) maps.push_back(build_gifs_map(sub, s));

    RauzyApprox cur = seed;
    cur.depth = 0;
    for (std::size_t k = depth; k-- > 0;) {
        ThinningPolicy p = policy;
        p.seed = policy.seed + k;
        cur = gifs_step(maps[seq[k]], cur, p);
    }
    cur.provenance = Provenance::gifs;
    cur.norm_bound = norm_bound(set, s);
    cur.max_norm = max_adapted_norm(cur, s);
    const double seed_norm = max_adapted_norm(seed, s);
    cur.error_bound = std::pow(s.lambda, double(depth)) * (seed_norm + cur.norm_bound);
    return cur;
}

// ---------------------------------------------------------------------------
// Comparisons in adapted coordinates

inline PointSet to_adapted(const PointSet& pts, const SpectralData& s) {
    const auto dim = pts.dim();
    PointSet out(dim);
    out.reserve(pts.size());
    std::vector<double> p(dim);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t r = 0; r < dim; ++r) {
            double acc = 0;
            for (std::size_t c = 0; c < dim; ++c) acc += s.norm_transform(Eigen::Index(r), Eigen::Index(c)) * pts[i][c];
            p[r] = acc;
        }
        out.push_back(p);
    }
    return out;
}

struct ApproxDistance {
    double overall = 0;                  // d_H of the unions
    double max_subtile = 0;              // max_i d_H of subtiles (the H^d metric)
    std::vector<std::optional<double>> per_subtile;  // empty when a side is empty
};

inline ApproxDistance approx_distance(const RauzyApprox& a, const RauzyApprox& b, const SpectralData& s) {
    if (a.letters() != b.letters()) throw input_error("letter count mismatch");
    ApproxDistance r;
    r.overall = hausdorff(to_adapted(a.all_points(), s), to_adapted(b.all_points(), s)).distance;
    for (std::size_t i = 0; i < a.letters(); ++i) {
        if (a.subtiles[i].empty() || b.subtiles[i].empty()) {
            if (a.subtiles[i].empty() != b.subtiles[i].empty()) r.max_subtile = std::numeric_limits<double>::infinity();
            r.per_subtile.push_back(std::nullopt);
            continue;
        }
        const double d = hausdorff(to_adapted(a.subtiles[i], s), to_adapted(b.subtiles[i], s)).distance;
        r.per_subtile.push_back(d);
        r.max_subtile = std::max(r.max_subtile, d);
    }
    return r;
}

inline ApproxDistance compare_constructions(const DirectiveSequence& seq, const SubstitutionSet& set,
                                            const SpectralData& s, std::size_t n_points, std::size_t depth,
                                            const ThinningPolicy& policy = {}) {
    const auto proj = project_prefixes(seq, set, s, n_points);
    const auto gifs = gifs_attractor(seq, set, s, depth, origin_seed(set.alphabet_size(), s.stable_dimension()), policy);
    return approx_distance(proj, gifs, s);
}

// ---------------------------------------------------------------------------
// Continuity in the directive sequence

struct ContinuityRow {
    std::size_t n;
    double distance;
};

struct ContinuityReport {
    std::vector<ContinuityRow> rows;
    std::optional<double> ratio;     // exp(slope) of the log-linear fit
    double intercept = 0;
    bool resolution_limited = false;
    std::size_t monotone_violations = 0;  // steps with d(n+1) > (1 + slack) d(n)
};

inline constexpr double default_resolution = 1e-9;

/// For each n, compares the fractal of `base` with that of the sequence equal to
/// `base` before index n and to `variant` from n on.
inline ContinuityReport continuity_experiment(const SubstitutionSet& set, const SpectralData& s,
                                              const DirectiveSequence& base, const DirectiveSequence& variant,
                                              const std::vector<std::size_t>& n_values, std::size_t n_points,
                                              double resolution = default_resolution, double monotone_slack = 0.05) {
    ContinuityReport r;
    const auto reference = project_prefixes(base, set, s, n_points);
    for (auto n : n_values) {
        const auto other = project_prefixes(DirectiveSequence::spliced(base, variant, n), set, s, n_points);
        r.rows.push_back({n, approx_distance(reference, other, s).max_subtile});
    }
    for (std::size_t i = 1; i < r.rows.size(); ++i)
        if (r.rows[i].distance > (1.0 + monotone_slack) * r.rows[i - 1].distance) ++r.monotone_violations;

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (const auto& row : r.rows) {
        if (!(row.distance > resolution)) continue;
        const double x = double(row.n), y = std::log(row.distance);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m >= 2 && m * sxx - sx * sx > 0) {
        const double slope = (double(m) * sxy - sx * sy) / (double(m) * sxx - sx * sx);
        r.ratio = std::exp(slope);
        r.intercept = (sy - slope * sx) / double(m);
    } else {
        r.resolution_limited = true;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Covering by lattice translates

struct CoverageReport {
    double fraction = 0;
    std::size_t grid_points = 0;
    std::size_t covered = 0;
    std::size_t translates = 0;
};

/// Fraction of grid points of [-R, R]^(d-1) within grid_step of some
/// Gamma-translate of the cloud (stable Euclidean coordinates).
inline CoverageReport coverage_estimate(const RauzyApprox& approx, const GammaLattice& gamma, double window_radius,
                                        double grid_step) {
    if (approx.size() == 0) throw input_error("coverage of an empty cloud");
    if (!(grid_step > 0) || !(window_radius >= 0)) throw input_error("bad coverage window");
    const auto dim = approx.dim();
    const auto pts = approx.all_points();

    const Eigen::MatrixXd g = gamma.matrix();
    if (g.cols() != Eigen::Index(dim)) throw input_error("lattice rank does not match the stable dimension");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
    if (!lu.isInvertible()) throw domain_error("lattice generators are linearly dependent");
    const Eigen::MatrixXd ginv = lu.inverse();

    double reach = 0;
    for (double x : pts.coords()) reach = std::max(reach, std::abs(x));
    const double box = window_radius + grid_step;
    const double rho = box + reach;
    double ginv_norm = 0;
    for (Eigen::Index r = 0; r < ginv.rows(); ++r) ginv_norm = std::max(ginv_norm, ginv.row(r).lpNorm<1>());
    const auto nmax = static_cast<std::int64_t>(std::ceil(ginv_norm * rho));

    CoverageReport rep;
    PointSet shifted(dim);
    std::vector<std::int64_t> coeff(dim, -nmax);
    std::vector<double> p(dim);
    for (;;) {
        Eigen::VectorXd t = Eigen::VectorXd::Zero(Eigen::Index(dim));
        for (std::size_t k = 0; k < dim; ++k) t += double(coeff[k]) * g.col(Eigen::Index(k));
        if (t.lpNorm<Eigen::Infinity>() <= rho) {
            bool used = false;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                bool inside = true;
                for (std::size_t k = 0; k < dim; ++k) {
                    p[k] = pts[i][k] + t(Eigen::Index(k));
                    if (std::abs(p[k]) > box) inside = false;
                }
                if (inside) {
                    shifted.push_back(p);
                    used = true;
                }
            }
            if (used) ++rep.translates;
        }
        std::size_t k = 0;
        while (k < dim && ++coeff[k] > nmax) coeff[k++] = -nmax;
        if (k == dim) break;
    }

    const auto steps = static_cast<std::int64_t>(std::floor(2 * window_radius / grid_step + 1e-9));
    std::vector<std::int64_t> idx(dim, 0);
    std::optional<GridIndex> index;
    if (!shifted.empty()) index.emplace(shifted);
    for (;;) {
        for (std::size_t k = 0; k < dim; ++k) p[k] = -window_radius + double(idx[k]) * grid_step;
        ++rep.grid_points;
        if (index && index->nearest(p, grid_step).distance <= grid_step) ++rep.covered;
        std::size_t k = 0;
        while (k < dim && ++idx[k] > steps) idx[k++] = 0;
        if (k == dim) break;
    }
    rep.fraction = double(rep.covered) / double(rep.grid_points);
    return rep;
}

} // namespace rauzy

#endif // RAUZY_FRACTAL_HPP
