#ifndef RAUZY_SPECTRAL_HPP
#define RAUZY_SPECTRAL_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "rauzy/core.hpp"

namespace rauzy {

inline constexpr double default_tolerance = 1e-12;
inline constexpr double default_pisot_tolerance = 1e-9;

// ---------------------------------------------------------------------------
// Characteristic polynomial

/// Monic integer polynomial, coefficients stored lowest degree first.
class CharPoly {
public:
    CharPoly() = default;
    explicit CharPoly(std::vector<std::int64_t> coefficients) : c_(std::move(coefficients)) {
        if (c_.empty() || c_.back() != 1) throw input_error("characteristic polynomial must be monic");
    }

    std::size_t degree() const noexcept { return c_.size() - 1; }
    const std::vector<std::int64_t>& coefficients() const noexcept { return c_; }
    std::int64_t operator[](std::size_t k) const { return c_[k]; }

    double evaluate(double x) const {
        double r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + static_cast<double>(*it);
        return r;
    }

    double derivative(double x) const {
        double r = 0;
        for (std::size_t k = c_.size() - 1; k >= 1; --k) r = r * x + static_cast<double>(k) * static_cast<double>(c_[k]);
        return r;
    }

    /// p(M), exactly.
    IntMatrix evaluate(const IntMatrix& m) const {
        const auto n = m.size();
        IntMatrix r = IntMatrix::identity(n).scaled(c_.back());
        for (std::size_t k = c_.size() - 1; k-- > 0;) r = r * m + IntMatrix::identity(n).scaled(c_[k]);
        return r;
    }

    /// e.g. "x^3 - x^2 - x - 1".
    std::string to_string() const {
        std::string s;
        for (std::size_t k = c_.size(); k-- > 0;) {
            const auto c = c_[k];
            if (c == 0) continue;
            const auto mag = c < 0 ? -c : c;
            if (s.empty()) s += c < 0 ? "-" : "";
            else s += c < 0 ? " - " : " + ";
            if (mag != 1 || k == 0) s += std::to_string(mag);
            if (k >= 1) s += "x";
            if (k >= 2) s += "^" + std::to_string(k);
        }
        return s.empty() ? "0" : s;
    }

    friend bool operator==(const CharPoly&, const CharPoly&) = default;

private:
    std::vector<std::int64_t> c_;
};

/// Faddeev-LeVerrier recursion in exact integers; every division by k is exact.
inline CharPoly char_poly(const IntMatrix& a) {
    const auto n = a.size();
    if (n == 0) throw input_error("empty matrix");
    std::vector<std::int64_t> c(n + 1, 0);
    c[n] = 1;
    IntMatrix mk(n);
    const IntMatrix id = IntMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = a * mk + id.scaled(c[n - k + 1]);
        const auto t = (a * mk).trace();
        const auto kk = static_cast<std::int64_t>(k);
        if (t % kk != 0) throw arithmetic_error("Faddeev-LeVerrier division not exact");
        c[n - k] = -(t / kk);
    }
    return CharPoly(std::move(c));
}

inline std::int64_t determinant(const IntMatrix& a) {
    const auto p = char_poly(a);
    return (a.size() % 2 == 0) ? p[0] : -p[0];
}

// ---------------------------------------------------------------------------
// Polynomial roots

namespace detail {

inline Eigen::MatrixXd to_eigen(const IntMatrix& m) {
    Eigen::MatrixXd r(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) r(Eigen::Index(i), Eigen::Index(j)) = static_cast<double>(m(i, j));
    return r;
}

/// Roots of a monic real polynomial (coefficients lowest first) as companion-matrix eigenvalues.
inline std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& c) {
    const auto n = Eigen::Index(c.size()) - 1;
    if (n <= 0) return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) comp(i, n - 1) = -c[std::size_t(i)] / c[std::size_t(n)];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    std::vector<std::complex<double>> r;
    for (Eigen::Index i = 0; i < n; ++i) r.push_back(es.eigenvalues()(i));
    return r;
}

/// Newton steps on p, keeping the last iterate that decreased |p|.
inline double newton_polish(const CharPoly& p, double x) {
    double best = x, best_val = std::abs(p.evaluate(x));
    for (int it = 0; it < 50 && best_val > 0; ++it) {
        const double dp = p.derivative(x);
        if (dp == 0) break;
        x -= p.evaluate(x) / dp;
        const double val = std::abs(p.evaluate(x));
        if (val < best_val) {
            best = x;
            best_val = val;
        } else if (val >= best_val) {
            break;
        }
    }
    return best;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Perron data and stable coordinates

struct SpectralData {
    std::size_t dimension = 0;        // d
    std::size_t primitivity_exponent = 0;
    CharPoly polynomial;
    double beta = 0;
    Eigen::VectorXd u;                // right Perron vector, sum 1
    Eigen::VectorXd v;                // left Perron vector, v.u = 1
    Eigen::MatrixXd stable_basis;     // d x (d-1), orthonormal, spans v-perp
    Eigen::MatrixXd proj_coords;      // (d-1) x d
    Eigen::MatrixXd m_s;              // (d-1) x (d-1)
    Eigen::MatrixXd norm_transform;   // T: adapted norm is |T y|_2
    Eigen::MatrixXd norm_transform_inv;
    double lambda = 0;                // |T m_s T^-1|_2
    double stable_radius = 0;         // spectral radius of m_s
    std::vector<std::complex<double>> stable_eigenvalues;

    std::size_t stable_dimension() const noexcept { return dimension - 1; }
};

struct AdaptedNormOptions {
    std::size_t window = 16;          // initial K in sum_{k<=K}
    std::size_t max_window = 1u << 16;
    double radius_margin = 1e-3;      // target ratio = stable radius * (1 + margin)
};

namespace detail {

inline Eigen::VectorXd perron_vector(const Eigen::MatrixXd& power, std::size_t max_iterations) {
    const auto d = power.rows();
    Eigen::VectorXd x = Eigen::VectorXd::Constant(d, 1.0 / double(d));
    for (std::size_t it = 0; it < max_iterations; ++it) {
        Eigen::VectorXd y = power * x;
        y /= y.sum();
        const double change = (y - x).lpNorm<Eigen::Infinity>();
        x = y;
        if (change <= 8 * std::numeric_limits<double>::epsilon()) return x;
        // Rounding floor: the iterate only jitters in the last bits.
        if (it >= 1000 && change <= 1e-13) return x;
    }
    throw convergence_error("power iteration did not converge");
}

/// Builds T with |T m_s T^-1|_2 <= target from Q = sum_k rho^-2k (m_s^k)^T m_s^k.
inline void build_adapted_norm(SpectralData& s, const AdaptedNormOptions& opt) {
    const auto n = s.m_s.rows();
    const double target = s.stable_radius * (1.0 + opt.radius_margin);
    if (!(target < 1.0)) throw domain_error("stable part of the matrix is not contracting");
    for (std::size_t window = opt.window; window <= opt.max_window; window *= 2) {
        Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
        Eigen::MatrixXd pk = Eigen::MatrixXd::Identity(n, n);
        double w = 1.0;
        for (std::size_t k = 0; k <= window; ++k) {
            q += w * pk.transpose() * pk;
            pk = s.m_s * pk;
            w /= target * target;
        }
        Eigen::LLT<Eigen::MatrixXd> llt(q);
        if (llt.info() != Eigen::Success) throw convergence_error("adapted norm form is not positive definite");
        Eigen::MatrixXd t = llt.matrixU();
        Eigen::MatrixXd tinv = t.inverse();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(t * s.m_s * tinv);
        const double ratio = svd.singularValues()(0);
        if (ratio <= target) {
            // Scale so that the adapted norm of the unit stable vectors is about 1.
            const double scale = 1.0 / std::sqrt(q.trace() / double(n));
            s.norm_transform = t * scale;
            s.norm_transform_inv = tinv / scale;
            s.lambda = ratio * (1.0 + 1e-12);
            return;
        }
    }
    throw convergence_error("could not build an adapted norm within the window budget");
}

} // namespace detail

inline SpectralData perron_data(const IntMatrix& m, double tol = default_tolerance,
                                const AdaptedNormOptions& norm_options = {}) {
    const auto d = m.size();
    const auto e = primitivity_exponent(m);
    if (!e) throw domain_error("incidence matrix is not primitive");

    SpectralData s;
    s.dimension = d;
    s.primitivity_exponent = *e;
    s.polynomial = char_poly(m);

    const Eigen::MatrixXd a = detail::to_eigen(m);
    Eigen::MatrixXd ae = Eigen::MatrixXd::Identity(Eigen::Index(d), Eigen::Index(d));
    for (std::size_t k = 0; k < *e; ++k) ae = ae * a;

    s.u = detail::perron_vector(ae, 100000);
    Eigen::VectorXd vl = detail::perron_vector(ae.transpose(), 100000);

    // Rayleigh estimate, then Newton on the characteristic polynomial.
    const double rayleigh = (a * s.u).dot(s.u) / s.u.dot(s.u);
    s.beta = detail::newton_polish(s.polynomial, rayleigh);
    if (!(s.beta > 1.0)) throw domain_error("Perron eigenvalue does not exceed 1");

    s.u /= s.u.sum();
    s.v = vl / vl.dot(s.u);

    const double res_u = (a * s.u - s.beta * s.u).lpNorm<Eigen::Infinity>();
    const double res_v = (a.transpose() * s.v - s.beta * s.v).lpNorm<Eigen::Infinity>();
    const double scale_u = s.u.lpNorm<Eigen::Infinity>(), scale_v = s.v.lpNorm<Eigen::Infinity>();
    if (res_u > tol * s.beta * scale_u || res_v > tol * s.beta * scale_v)
        throw convergence_error("Perron residual above tolerance");

    const auto n = Eigen::Index(d) - 1;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(s.v);
    Eigen::MatrixXd q = qr.householderQ();
    s.stable_basis = q.rightCols(n);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(Eigen::Index(d), Eigen::Index(d));
    s.proj_coords = s.stable_basis.transpose() * (id - s.u * s.v.transpose());
    s.m_s = s.stable_basis.transpose() * a * s.stable_basis;

    Eigen::EigenSolver<Eigen::MatrixXd> es(s.m_s, false);
    for (Eigen::Index i = 0; i < n; ++i) {
        s.stable_eigenvalues.push_back(es.eigenvalues()(i));
        s.stable_radius = std::max(s.stable_radius, std::abs(es.eigenvalues()(i)));
    }
    detail::build_adapted_norm(s, norm_options);
    return s;
}

// ---------------------------------------------------------------------------
// Pisot and irreducibility verdicts

struct PisotReport {
    bool pisot = false;
    bool zero_eigenvalue = false;        // x divides the characteristic polynomial
    double beta = 0;
    std::vector<std::complex<double>> conjugates;  // non-Perron roots other than exact zeros
};

inline PisotReport pisot_report(const IntMatrix& m, double tol = default_pisot_tolerance) {
    if (!primitivity_exponent(m)) throw domain_error("incidence matrix is not primitive");
    const auto p = char_poly(m);
    PisotReport r;

    // Exact zero roots first.
    auto c = p.coefficients();
    std::size_t zeros = 0;
    while (zeros + 1 < c.size() && c[zeros] == 0) ++zeros;
    r.zero_eigenvalue = zeros > 0;
    std::vector<double> reduced(c.begin() + std::ptrdiff_t(zeros), c.end());

    const auto roots = detail::polynomial_roots(reduced);
    double beta = 0;
    for (const auto& z : roots) beta = std::max(beta, z.real());
    r.beta = detail::newton_polish(p, beta);

    // Deflate the Perron root by synthetic division.
    std::vector<double> quotient(reduced.size() - 1);
    double carry = 0;
    for (std::size_t k = reduced.size() - 1; k >= 1; --k) {
        carry = reduced[k] + carry * r.beta;
        quotient[k - 1] = carry;
    }
    r.conjugates = detail::polynomial_roots(quotient);

    r.pisot = true;
    for (const auto& z : r.conjugates) {
        const double mod = std::abs(z);
        if (std::abs(mod - 1.0) <= tol) throw indeterminate_error("conjugate root of modulus within tolerance of 1");
        if (mod <= tol) throw indeterminate_error("conjugate root of modulus within tolerance of 0");
        if (mod > 1.0) r.pisot = false;
    }
    return r;
}

inline bool is_pisot(const IntMatrix& m, double tol = default_pisot_tolerance) { return pisot_report(m, tol).pisot; }

/// Exact factorization test for degree <= 4.
inline bool is_irreducible_charpoly(const CharPoly& p) {
    const auto n = p.degree();
    if (n > 4) throw unsupported_error("irreducibility check limited to degree 4");
    if (n <= 1) return true;
    const auto& c = p.coefficients();

    auto eval = [&](std::int64_t x) {
        std::int64_t r = 0;
        for (std::size_t k = c.size(); k-- > 0;) r = checked_add(checked_mul(r, x), c[k]);
        return r;
    };

    // Monic integer polynomial: rational roots are integer divisors of c0.
    if (c[0] == 0) return false;
    const std::int64_t c0 = c[0] < 0 ? -c[0] : c[0];
    std::vector<std::int64_t> divisors;
    for (std::int64_t q = 1; q * q <= c0; ++q)
        if (c0 % q == 0) {
            divisors.push_back(q);
            if (q != c0 / q) divisors.push_back(c0 / q);
        }
    for (auto q : divisors)
        if (eval(q) == 0 || eval(-q) == 0) return false;
    if (n <= 3) return true;

    // Degree 4: (x^2 + a x + b)(x^2 + e x + f), b f = c0, roots bounded by Cauchy's bound.
    std::int64_t cauchy = 0;
    for (std::size_t k = 0; k < n; ++k) cauchy = std::max(cauchy, c[k] < 0 ? -c[k] : c[k]);
    cauchy += 1;
    const std::int64_t abound = 2 * cauchy;
    for (auto q : divisors)
        for (std::int64_t b : {q, -q}) {
            const std::int64_t f = c[0] / b;
            for (std::int64_t a = -abound; a <= abound; ++a) {
                const std::int64_t e = c[3] - a;
                if (b + f + a * e == c[2] && a * f + b * e == c[1]) return false;
            }
        }
    return true;
}

// ---------------------------------------------------------------------------
// Projection and the adapted norm

inline Eigen::VectorXd project(const SpectralData& s, const Eigen::VectorXd& x) { return s.proj_coords * x; }

inline Eigen::VectorXd project(const SpectralData& s, std::span<const std::int64_t> x) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(s.proj_coords.rows());
    for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j] != 0) r += s.proj_coords.col(Eigen::Index(j)) * static_cast<double>(x[j]);
    return r;
}

inline double adapted_norm(const SpectralData& s, const Eigen::VectorXd& y) { return (s.norm_transform * y).norm(); }

struct GammaLattice {
    std::vector<Eigen::VectorXd> generators;  // pi_s(e_i - e_d), i < d
    bool irreducible = true;

    Eigen::MatrixXd matrix() const {
        Eigen::MatrixXd g(generators.empty() ? 0 : generators.front().size(), Eigen::Index(generators.size()));
        for (std::size_t i = 0; i < generators.size(); ++i) g.col(Eigen::Index(i)) = generators[i];
        return g;
    }
};

inline GammaLattice gamma_generators(const SpectralData& s) {
    GammaLattice g;
    const auto d = s.dimension;
    for (std::size_t i = 0; i + 1 < d; ++i)
        g.generators.push_back(s.proj_coords.col(Eigen::Index(i)) - s.proj_coords.col(Eigen::Index(d - 1)));
    if (d <= 4) g.irreducible = is_irreducible_charpoly(s.polynomial);
    return g;
}

} // namespace rauzy

#endif // RAUZY_SPECTRAL_HPP
