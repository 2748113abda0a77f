#ifndef RAUZY_TESTS_ORACLE_HPP
#define RAUZY_TESTS_ORACLE_HPP

// Slow, obviously-correct reference implementations used to derive and check
// values in the tests. Nothing here shares code paths with the library beyond
// the basic Word/Letter types.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "rauzy/core.hpp"
#include "rauzy/hausdorff.hpp"

namespace oracle {

using rauzy::Letter;
using rauzy::Word;

/// Largest real root of a monic polynomial (coefficients low-first) on [lo, hi],
/// by bisection to the last representable bit.
inline double bisect_root(const std::vector<long long>& c, double lo, double hi) {
    auto f = [&](double x) {
        long double acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    };
    const bool rising = f(hi) > 0;
    for (int it = 0; it < 2000; ++it) {
        const double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;
        if ((f(mid) > 0) == rising) hi = mid;
        else lo = mid;
    }
    return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

/// Brute force sup/inf over all pairs.
inline double hausdorff(const rauzy::PointSet& a, const rauzy::PointSet& b) {
    auto directed = [](const rauzy::PointSet& x, const rauzy::PointSet& y) {
        double worst = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < y.size(); ++j) {
                double s = 0;
                for (std::size_t k = 0; k < x.dim(); ++k) s += (x[i][k] - y[j][k]) * (x[i][k] - y[j][k]);
                best = std::min(best, s);
            }
            worst = std::max(worst, best);
        }
        return std::sqrt(worst);
    };
    return std::max(directed(a, b), directed(b, a));
}

/// Balance by counting every pair of length-k windows from scratch.
inline long long balance(const Word& u, std::size_t k, std::size_t d) {
    long long c = 0;
    for (std::size_t i = 0; i + k <= u.size(); ++i)
        for (std::size_t j = 0; j + k <= u.size(); ++j)
            for (std::size_t a = 1; a <= d; ++a) {
                long long ci = 0, cj = 0;
                for (std::size_t t = 0; t < k; ++t) {
                    ci += u[i + t] == a;
                    cj += u[j + t] == a;
                }
                c = std::max(c, ci - cj);
            }
    return c;
}

/// Smallest g such that every g consecutive start positions of u hold an
/// occurrence of f, counting the word boundaries.
inline std::size_t occurrence_gap(const Word& u, const Word& f) {
    std::vector<std::size_t> occ;
    for (std::size_t i = 0; i + f.size() <= u.size(); ++i)
        if (std::equal(f.begin(), f.end(), u.begin() + std::ptrdiff_t(i))) occ.push_back(i);
    if (occ.empty()) return std::numeric_limits<std::size_t>::max();
    const std::size_t last = u.size() - f.size();
    std::size_t g = occ.front() + 1;
    for (std::size_t i = 1; i < occ.size(); ++i) g = std::max(g, occ[i] - occ[i - 1]);
    return std::max(g, last - occ.back() + 1);
}

/// sigma_0 sigma_1 ... sigma_{n-1}(a) by repeated substitution; levels[k]
/// holds the images of sigma_k.
inline Word iterate(const std::vector<std::vector<Word>>& levels, Letter a) {
    Word w{a};
    for (std::size_t k = levels.size(); k-- > 0;) {
        Word next;
        for (Letter x : w) next.insert(next.end(), levels[k][x - 1].begin(), levels[k][x - 1].end());
        w = std::move(next);
    }
    return w;
}

inline Word word(const std::string& s, char first = 'a') {
    Word w;
    for (char c : s) w.push_back(Letter(c - first + 1));
    return w;
}

} // namespace oracle

#endif // RAUZY_TESTS_ORACLE_HPP
