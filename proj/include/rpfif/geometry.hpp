#pragma once
// Projective intervals and rectangles, uniform sampling, and sampled functions
// from a projective interval into the vertical axis subspace.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>
#include <vector>

#include "rpfif/errors.hpp"
#include "rpfif/projective.hpp"

namespace rpfif {

/// Closed order interval [lo, hi] on the horizontal axis subspace.
struct ProjectiveInterval {
    AxisPoint10 lo;
    AxisPoint10 hi;

    double u_lo() const noexcept { return lo.u(); }
    double u_hi() const noexcept { return hi.u(); }
    double length() const noexcept { return hi.u() - lo.u(); }
};

struct ProjectiveRectangle {
    ProjectiveInterval x_interval;
    AxisPoint01 y_lo;
    AxisPoint01 y_hi;
};

inline ProjectiveInterval make_interval(const AxisPoint10& lo, const AxisPoint10& hi) {
    if (compare_h10(lo, hi) != std::weak_ordering::less) {
        std::ostringstream os;
        os << "degenerate projective interval: lower bound " << lo.u() << " is not below upper bound " << hi.u();
        throw DegenerateIntervalError(os.str());
    }
    return {lo.canonical(), hi.canonical()};
}

inline ProjectiveRectangle make_rectangle(const ProjectiveInterval& x_interval, const AxisPoint01& y_lo,
                                          const AxisPoint01& y_hi) {
    if (compare_h01(y_lo, y_hi) != std::weak_ordering::less) {
        throw DegenerateIntervalError("degenerate projective rectangle: vertical bounds out of order");
    }
    return {x_interval, y_lo.canonical(), y_hi.canonical()};
}

inline bool interval_contains(const ProjectiveInterval& interval, const AxisPoint10& p) {
    return compare_h10(interval.lo, p) != std::weak_ordering::greater &&
           compare_h10(p, interval.hi) != std::weak_ordering::greater;
}

inline bool rectangle_contains(const ProjectiveRectangle& rect, const ProjectivePoint& p) {
    const auto [h, v] = decompose(p);
    return interval_contains(rect.x_interval, h) && compare_h01(rect.y_lo, v) != std::weak_ordering::greater &&
           compare_h01(v, rect.y_hi) != std::weak_ordering::greater;
}

/// `m` canonical points equally spaced in x/z, both endpoints included exactly.
inline std::vector<AxisPoint10> sample_interval(const ProjectiveInterval& interval, std::size_t m) {
    if (m < 2) {
        throw ValidationError("sample_interval: need at least 2 samples");
    }
    const double lo = interval.u_lo();
    const double hi = interval.u_hi();
    const double step = (hi - lo) / static_cast<double>(m - 1);
    std::vector<AxisPoint10> out;
    out.reserve(m);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        out.push_back(AxisPoint10::from_canonical(lo + static_cast<double>(i) * step));
    }
    out.push_back(AxisPoint10::from_canonical(hi));
    return out;
}

/// A function from a projective interval into the vertical axis subspace,
/// known at strictly increasing canonical abscissae and linear in canonical
/// coordinates between them.
class SampledGraph {
  public:
    SampledGraph(std::vector<AxisPoint10> abscissae, std::vector<AxisPoint01> values) {
        if (abscissae.size() != values.size()) {
            throw ValidationError("SampledGraph: abscissae and values differ in length");
        }
        if (abscissae.size() < 2) {
            throw ValidationError("SampledGraph: need at least 2 nodes");
        }
        u_.reserve(abscissae.size());
        v_.reserve(values.size());
        for (std::size_t i = 0; i < abscissae.size(); ++i) {
            u_.push_back(abscissae[i].u());
            v_.push_back(values[i].v());
            if (i > 0 && !(u_[i - 1] < u_[i])) {
                throw OrderingError("SampledGraph: abscissae must be strictly increasing");
            }
        }
    }

    /// Build from canonical coordinates directly.
    static SampledGraph from_canonical(std::vector<double> u, std::vector<double> v) {
        SampledGraph g;
        if (u.size() != v.size() || u.size() < 2) {
            throw ValidationError("SampledGraph: need at least 2 nodes of matching length");
        }
        for (std::size_t i = 1; i < u.size(); ++i) {
            if (!(u[i - 1] < u[i])) {
                throw OrderingError("SampledGraph: abscissae must be strictly increasing");
            }
        }
        g.u_ = std::move(u);
        g.v_ = std::move(v);
        return g;
    }

    std::size_t size() const noexcept { return u_.size(); }
    std::span<const double> u() const noexcept { return u_; }
    std::span<const double> v() const noexcept { return v_; }

    AxisPoint10 abscissa(std::size_t i) const { return AxisPoint10::from_canonical(u_[i]); }
    AxisPoint01 value(std::size_t i) const { return AxisPoint01::from_canonical(v_[i]); }
    ProjectivePoint node(std::size_t i) const { return ProjectivePoint::from_canonical(u_[i], v_[i]); }

    std::vector<AxisPoint10> abscissae() const {
        std::vector<AxisPoint10> out;
        out.reserve(u_.size());
        for (double u : u_) out.push_back(AxisPoint10::from_canonical(u));
        return out;
    }
    std::vector<AxisPoint01> values() const {
        std::vector<AxisPoint01> out;
        out.reserve(v_.size());
        for (double v : v_) out.push_back(AxisPoint01::from_canonical(v));
        return out;
    }

    /// Piecewise-linear value at canonical abscissa `u`, clamped to the grid ends.
    /// Returns the node value exactly when `u` is a node.
    double interpolate(double u) const {
        if (u <= u_.front()) return v_.front();
        if (u >= u_.back()) return v_.back();
        const auto it = std::upper_bound(u_.begin(), u_.end(), u);
        const std::size_t j = static_cast<std::size_t>(it - u_.begin());
        const std::size_t i = j - 1;
        if (u == u_[i]) return v_[i];
        const double t = (u - u_[i]) / (u_[j] - u_[i]);
        return v_[i] + t * (v_[j] - v_[i]);
    }
    AxisPoint01 operator()(const AxisPoint10& p) const { return AxisPoint01::from_canonical(interpolate(p.u())); }

    bool same_grid(const SampledGraph& other, double tol = kDefaultEquivTol) const {
        if (other.size() != size()) return false;
        for (std::size_t i = 0; i < u_.size(); ++i) {
            if (std::abs(u_[i] - other.u_[i]) > tol) return false;
        }
        return true;
    }

    bool operator==(const SampledGraph&) const = default;

  private:
    SampledGraph() = default;
    std::vector<double> u_;
    std::vector<double> v_;
};

/// Sup over the grid of the projective norm of f (-) g.
inline double graph_sup_dist(const SampledGraph& f, const SampledGraph& g) {
    if (!f.same_grid(g)) {
        throw GridMismatchError("graph_sup_dist: graphs are sampled on different grids");
    }
    double best = 0.0;
    const auto fv = f.v();
    const auto gv = g.v();
    for (std::size_t i = 0; i < fv.size(); ++i) {
        best = std::max(best, std::abs(fv[i] - gv[i]));
    }
    return best;
}

}  // namespace rpfif
