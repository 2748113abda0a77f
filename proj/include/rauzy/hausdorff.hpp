#ifndef RAUZY_HAUSDORFF_HPP
#define RAUZY_HAUSDORFF_HPP

// Finite point sets and the exact Hausdorff distance between them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "rauzy/errors.hpp"

namespace rauzy {

/// Points of a fixed dimension, stored contiguously.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::size_t dim) : dim_(dim) {}
    PointSet(std::size_t dim, std::vector<double> coords) : dim_(dim), data_(std::move(coords)) {
        if (dim_ == 0 || data_.size() % dim_ != 0) throw input_error("coordinate count not a multiple of the dimension");
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_ ? data_.size() / dim_ : 0; }
    bool empty() const noexcept { return data_.empty(); }

    std::span<const double> operator[](std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
    std::span<double> operator[](std::size_t i) { return {data_.data() + i * dim_, dim_}; }

    void push_back(std::span<const double> p) {
        if (p.size() != dim_) throw input_error("point dimension mismatch");
        data_.insert(data_.end(), p.begin(), p.end());
    }
    void reserve(std::size_t n) { data_.reserve(n * dim_); }
    void append(const PointSet& other) {
        if (other.dim_ != dim_) throw input_error("point dimension mismatch");
        data_.insert(data_.end(), other.data_.begin(), other.data_.end());
    }

    const std::vector<double>& coords() const noexcept { return data_; }
    std::vector<double>& coords() noexcept { return data_; }

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double t = a[k] - b[k];
        s += t * t;
    }
    return s;
}

/// Uniform grid over a point set answering exact nearest-neighbour queries.
class GridIndex {
public:
    static constexpr std::size_t max_grid_dim = 4;

    explicit GridIndex(const PointSet& pts) : pts_(&pts), dim_(pts.dim()) {
        const auto n = pts.size();
        if (n == 0) throw domain_error("grid over empty point set");
        if (dim_ > max_grid_dim) return;  // brute force

        lo_.assign(dim_, std::numeric_limits<double>::infinity());
        std::vector<double> hi(dim_, -std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < dim_; ++k) {
                lo_[k] = std::min(lo_[k], pts[i][k]);
                hi[k] = std::max(hi[k], pts[i][k]);
            }
        double maxext = 0;
        for (std::size_t k = 0; k < dim_; ++k) maxext = std::max(maxext, hi[k] - lo_[k]);
        if (maxext == 0) {
            cell_ = 1.0;
        } else {
            double vol = 1;
            for (std::size_t k = 0; k < dim_; ++k) vol *= std::max(hi[k] - lo_[k], maxext * 1e-6);
            cell_ = std::pow(vol / double(n), 1.0 / double(dim_));
        }
        // Keep the dense grid within a few cells per point.
        for (;;) {
            std::size_t total = 1;
            bool ok = true;
            counts_.assign(dim_, 0);
            for (std::size_t k = 0; k < dim_; ++k) {
                counts_[k] = static_cast<std::int64_t>(std::floor((hi[k] - lo_[k]) / cell_)) + 1;
                total *= std::size_t(counts_[k]);
                if (total > 4 * n + 16) ok = false;
            }
            if (ok) break;
            cell_ *= 1.5;
        }

        std::size_t total = 1;
        for (auto c : counts_) total *= std::size_t(c);
        start_.assign(total + 1, 0);
        std::vector<std::size_t> cell_of(n);
        for (std::size_t i = 0; i < n; ++i) {
            cell_of[i] = flat(cell_coords(pts[i]));
            ++start_[cell_of[i] + 1];
        }
        for (std::size_t c = 0; c < total; ++c) start_[c + 1] += start_[c];
        order_.resize(n);
        std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
        for (std::size_t i = 0; i < n; ++i) order_[fill[cell_of[i]]++] = i;
    }

    struct Hit {
        double distance;
        std::size_t index;
    };

    /// Nearest point to q. Returns early with any point closer than `good_enough`.
    Hit nearest(std::span<const double> q, double good_enough = -1.0) const {
        const double good2 = good_enough < 0 ? -1.0 : good_enough * good_enough;
        Hit best{std::numeric_limits<double>::infinity(), 0};
        double best2 = std::numeric_limits<double>::infinity();
        auto consider = [&](std::size_t i) {
            const double d2 = squared_distance(q, (*pts_)[i]);
            if (d2 < best2 || (d2 == best2 && i < best.index)) {
                best2 = d2;
                best.index = i;
            }
        };

        if (dim_ > max_grid_dim) {
            for (std::size_t i = 0; i < pts_->size(); ++i) {
                consider(i);
                if (best2 <= good2) break;
            }
            best.distance = std::sqrt(best2);
            return best;
        }

        std::vector<std::int64_t> qc(dim_);
        std::int64_t s_lo = 0, s_hi = 0;
        for (std::size_t k = 0; k < dim_; ++k) {
            const double t = std::floor((q[k] - lo_[k]) / cell_);
            qc[k] = static_cast<std::int64_t>(std::clamp(t, -4e15, 4e15));
            const std::int64_t below = -qc[k], above = qc[k] - (counts_[k] - 1);
            s_lo = std::max({s_lo, below, above});
            s_hi = std::max({s_hi, std::abs(qc[k]), std::abs(qc[k] - (counts_[k] - 1))});
        }

        std::vector<std::int64_t> cur(dim_);
        for (std::int64_t s = s_lo; s <= s_hi; ++s) {
            visit_shell(qc, s, 0, false, cur, [&](std::size_t cell) {
                for (std::size_t p = start_[cell]; p < start_[cell + 1]; ++p) consider(order_[p]);
            });
            if (best2 <= good2) break;
            // Unvisited points lie in shells > s, at distance >= s * cell.
            const double reach = double(s) * cell_;
            if (best2 <= reach * reach) break;
        }
        best.distance = std::sqrt(best2);
        return best;
    }

private:
    std::vector<std::int64_t> cell_coords(std::span<const double> p) const {
        std::vector<std::int64_t> c(dim_);
        for (std::size_t k = 0; k < dim_; ++k)
            c[k] = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((p[k] - lo_[k]) / cell_)), 0, counts_[k] - 1);
        return c;
    }

    std::size_t flat(const std::vector<std::int64_t>& c) const {
        std::size_t f = 0;
        for (std::size_t k = 0; k < dim_; ++k) f = f * std::size_t(counts_[k]) + std::size_t(c[k]);
        return f;
    }

    /// Cells at Chebyshev distance exactly s from qc, clipped to the grid.
    template <class F>
    void visit_shell(const std::vector<std::int64_t>& qc, std::int64_t s, std::size_t k, bool on_shell,
                     std::vector<std::int64_t>& cur, F&& f) const {
        if (k == dim_) {
            if (on_shell) f(flat(cur));
            return;
        }
        const std::int64_t a = std::max<std::int64_t>(qc[k] - s, 0);
        const std::int64_t b = std::min<std::int64_t>(qc[k] + s, counts_[k] - 1);
        if (k + 1 == dim_ && !on_shell) {
            for (std::int64_t x : {qc[k] - s, qc[k] + s}) {
                if (x < a || x > b || (s == 0 && x != qc[k] - s)) continue;
                cur[k] = x;
                visit_shell(qc, s, k + 1, true, cur, f);
                if (s == 0) break;
            }
            return;
        }
        for (std::int64_t x = a; x <= b; ++x) {
            cur[k] = x;
            const bool edge = (x == qc[k] - s || x == qc[k] + s);
            visit_shell(qc, s, k + 1, on_shell || edge, cur, f);
        }
    }

    const PointSet* pts_;
    std::size_t dim_;
    std::vector<double> lo_;
    std::vector<std::int64_t> counts_;
    double cell_ = 1.0;
    std::vector<std::size_t> start_;
    std::vector<std::size_t> order_;
};

struct HausdorffResult {
    double distance = 0;
    std::vector<double> witness_from;  // point realizing the max
    std::vector<double> witness_to;    // its nearest neighbour in the other set
};

/// sup_{a in A} d(a, B), exact.
inline HausdorffResult directed_hausdorff(const PointSet& a, const PointSet& b) {
    if (a.empty() || b.empty()) throw domain_error("Hausdorff distance of an empty set");
    if (a.dim() != b.dim()) throw input_error("point dimension mismatch");
    GridIndex index(b);
    HausdorffResult r;
    double cmax = -1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        // A neighbour within the running max cannot raise it.
        const auto hit = index.nearest(a[i], cmax);
        if (hit.distance > cmax) {
            cmax = hit.distance;
            r.witness_from.assign(a[i].begin(), a[i].end());
            r.witness_to.assign(b[hit.index].begin(), b[hit.index].end());
        }
    }
    r.distance = cmax;
    return r;
}

/// max(sup_{a in A} d(a, B), sup_{b in B} d(b, A)).
inline HausdorffResult hausdorff(const PointSet& a, const PointSet& b) {
    auto ab = directed_hausdorff(a, b);
    auto ba = directed_hausdorff(b, a);
    return ba.distance > ab.distance ? ba : ab;
}

} // namespace rauzy

#endif // RAUZY_HAUSDORFF_HPP
