#pragma once
// Fixed point of the real projective Read-Bajraktarevic operator and the
// attractor of the IFS.
//
// The operator acts on functions pinned to the data endpoints:
//   (T f)(x:0:z) = F_n( L_n^{-1}(x:0:z) (+) f(L_n^{-1}(x:0:z)) )   on subinterval n.
// It contracts the sup distance by max|d_n|, so iterating from the linear
// interpolant converges geometrically. Its fixed point's graph is the
// attractor of {W_n}, which the chaos game and the Hutchinson iteration
// sample independently.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "rpfif/errors.hpp"
#include "rpfif/geometry.hpp"
#include "rpfif/projective.hpp"
#include "rpfif/random.hpp"
#include "rpfif/rpifs.hpp"

namespace rpfif {

class PointCloud {
  public:
    explicit PointCloud(std::vector<ProjectivePoint> points) : points_(std::move(points)) {
        if (points_.empty()) throw ValidationError("PointCloud: must be nonempty");
    }
    PointCloud(std::initializer_list<ProjectivePoint> points) : PointCloud(std::vector<ProjectivePoint>(points)) {}

    std::size_t size() const noexcept { return points_.size(); }
    std::span<const ProjectivePoint> points() const noexcept { return points_; }
    const ProjectivePoint& operator[](std::size_t i) const { return points_[i]; }
    auto begin() const noexcept { return points_.begin(); }
    auto end() const noexcept { return points_.end(); }

    bool operator==(const PointCloud&) const = default;

  private:
    std::vector<ProjectivePoint> points_;
};

struct IterationTrace {
    std::vector<double> deltas;  // sup distance between successive iterates
    std::size_t iterations = 0;
    bool converged = false;
};

struct FixedPointResult {
    SampledGraph graph;
    IterationTrace trace;
};

/// Which subinterval owns canonical abscissa `u`: buckets [X_{n-1}, X_n), the
/// last one closed. Returns n in 1..N.
inline std::size_t locate_subinterval(const InterpolationData& data, double u) {
    const std::size_t last = data.intervals();
    for (std::size_t n = 1; n < last; ++n) {
        if (u < data.X(n)) return n;
    }
    return last;
}

/// Grid of m nodes that is uniform on every subinterval, so each X_n is a node.
/// Requires m = k N + 1; for equally spaced data this is the uniform grid.
inline std::vector<double> make_fif_grid(const InterpolationData& data, std::size_t m) {
    const std::size_t N = data.intervals();
    if (m < N + 1 || (m - 1) % N != 0) {
        std::ostringstream os;
        os << "grid size " << m << " is not of the form k*" << N << "+1; subinterval ends would fall off-grid";
        throw GridMismatchError(os.str());
    }
    const std::size_t per = (m - 1) / N;
    std::vector<double> u;
    u.reserve(m);
    for (std::size_t n = 1; n <= N; ++n) {
        const double lo = data.X(n - 1);
        const double step = (data.X(n) - lo) / static_cast<double>(per);
        for (std::size_t j = 0; j < per; ++j) u.push_back(lo + static_cast<double>(j) * step);
    }
    u.push_back(data.X(N));
    return u;
}

/// Piecewise-linear interpolant of the data at canonical abscissa u.
inline double data_interpolant(const InterpolationData& data, double u) {
    const std::size_t n = locate_subinterval(data, u);
    const double x0 = data.X(n - 1);
    const double x1 = data.X(n);
    const double t = (u - x0) / (x1 - x0);
    return data.Y(n - 1) + t * (data.Y(n) - data.Y(n - 1));
}

inline SampledGraph linear_interpolant(const InterpolationData& data, std::vector<double> grid) {
    std::vector<double> v;
    v.reserve(grid.size());
    for (double u : grid) v.push_back(data_interpolant(data, u));
    return SampledGraph::from_canonical(std::move(grid), std::move(v));
}

namespace detail {

/// Node index of every X_n on the graph's grid.
inline std::vector<std::size_t> knot_indices(const InterpolationData& data, const SampledGraph& f) {
    const auto u = f.u();
    const double tol = 1e-12 * (1.0 + std::abs(data.X(0)) + std::abs(data.X(data.intervals())));
    std::vector<std::size_t> idx;
    idx.reserve(data.size());
    for (std::size_t n = 0; n < data.size(); ++n) {
        const double x = data.X(n);
        const auto it = std::lower_bound(u.begin(), u.end(), x - tol);
        if (it == u.end() || std::abs(*it - x) > tol) {
            std::ostringstream os;
            os << "grid does not contain the subinterval end X_" << n << " = " << x;
            throw GridMismatchError(os.str());
        }
        idx.push_back(static_cast<std::size_t>(it - u.begin()));
    }
    if (idx.front() != 0 || idx.back() + 1 != u.size()) {
        throw GridMismatchError("grid endpoints do not match the data interval");
    }
    return idx;
}

inline double rb_value(const ProjectiveMap& m, const SampledGraph& f, double u) {
    const AxisPoint10 s = apply_l_inv(m, AxisPoint10::from_canonical(u));
    const AxisPoint01 fs = f(s);
    return apply_f(m, oplus(s.point(), fs.point())).v();
}

}  // namespace detail

/// One application of the operator on the grid of `f`.
inline SampledGraph rb_apply(const Rpifs& ifs, const SampledGraph& f) {
    const auto& data = ifs.data();
    const auto knots = detail::knot_indices(data, f);
    const auto u = f.u();
    std::vector<double> out(u.size());
    const std::size_t N = ifs.size();
    for (std::size_t n = 1; n <= N; ++n) {
        const auto& m = ifs.map(n);
        const std::size_t end = n == N ? knots[n] + 1 : knots[n];
        for (std::size_t i = knots[n - 1]; i < end; ++i) out[i] = detail::rb_value(m, f, u[i]);
#ifndef NDEBUG
        if (n < N) {
            // Interior knots are owned by map n+1; map n must give the same value.
            const double left = detail::rb_value(m, f, u[knots[n]]);
            const double right = detail::rb_value(ifs.map(n + 1), f, u[knots[n]]);
            assert(std::abs(left - right) <= 1e-9 * (1.0 + std::abs(left)));
        }
#endif
    }
    // T maps into the endpoint-pinned space; remove rounding at the two ends.
    out.front() = data.Y(0);
    out.back() = data.Y(N);
    return SampledGraph::from_canonical(std::vector<double>(u.begin(), u.end()), std::move(out));
}

inline FixedPointResult rb_fixed_point(const Rpifs& ifs, SampledGraph initial, double tol, std::size_t max_iter) {
    if (!(ifs.d_bound() < 1.0)) {
        throw ValidationError("rb_fixed_point: every |d_n| must be < 1");
    }
    IterationTrace trace;
    SampledGraph current = std::move(initial);
    while (trace.iterations < max_iter) {
        SampledGraph next = rb_apply(ifs, current);
        const double delta = graph_sup_dist(next, current);
        trace.deltas.push_back(delta);
        ++trace.iterations;
        current = std::move(next);
        if (delta < tol) {
            trace.converged = true;
            break;
        }
    }
    return {std::move(current), std::move(trace)};
}

/// Iterate from the linear interpolant on the grid of `grid_m` nodes until
/// successive iterates differ by less than `tol`.
inline FixedPointResult rb_fixed_point(const Rpifs& ifs, std::size_t grid_m, double tol = 1e-10,
                                       std::size_t max_iter = 200) {
    return rb_fixed_point(ifs, linear_interpolant(ifs.data(), make_fif_grid(ifs.data(), grid_m)), tol, max_iter);
}

/// Grid-free evaluation: pull p back through `depth` inverse maps, seed with the
/// linear interpolant there, push forward through the F_n. Error is at most
/// max|d_n|^depth times the sup distance between the interpolant and the RPFIF.
inline AxisPoint01 evaluate_rpfif(const Rpifs& ifs, const AxisPoint10& p, std::size_t depth) {
    if (!interval_contains(ifs.interval(), p)) {
        std::ostringstream os;
        os << "evaluate_rpfif: abscissa " << p.u() << " is outside [" << ifs.interval().u_lo() << ", "
           << ifs.interval().u_hi() << "]";
        throw OutsideIntervalError(os.str());
    }
    const auto& data = ifs.data();
    const double lo = data.X(0);
    const double hi = data.X(data.intervals());
    std::vector<std::size_t> address;
    std::vector<AxisPoint10> pulled;
    address.reserve(depth);
    pulled.reserve(depth);
    const double snap = 64 * std::numeric_limits<double>::epsilon() * std::max({std::abs(lo), std::abs(hi), hi - lo});
    double u = p.u();
    std::optional<double> landed;
    for (std::size_t k = 0; k < depth; ++k) {
        for (std::size_t j = 0; j <= data.intervals(); ++j) {
            if (std::abs(u - data.X(j)) <= snap) {
                landed = data.Y(j);
                break;
            }
        }
        if (landed) break;
        const std::size_t n = locate_subinterval(data, u);
        const AxisPoint10 s = apply_l_inv(ifs.map(n), AxisPoint10::from_canonical(u));
        u = std::clamp(s.u(), lo, hi);
        address.push_back(n);
        pulled.push_back(AxisPoint10::from_canonical(u));
    }
    AxisPoint01 value = AxisPoint01::from_canonical(landed ? *landed : data_interpolant(data, u));
    for (std::size_t k = address.size(); k-- > 0;) {
        value = apply_f(ifs.map(address[k]), oplus(pulled[k].point(), value.point()));
    }
    return value;
}

inline PointCloud graph_cloud(const SampledGraph& g) {
    std::vector<ProjectivePoint> pts;
    pts.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) pts.push_back(g.node(i));
    return PointCloud(std::move(pts));
}

/// `count` evenly spaced points on the segment from p to q, both included.
inline PointCloud segment_cloud(const ProjectivePoint& p, const ProjectivePoint& q, std::size_t count) {
    if (count < 2) throw ValidationError("segment_cloud: need at least 2 points");
    std::vector<ProjectivePoint> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        pts.push_back(oplus(odot(1.0 - t, p), odot(t, q)));
    }
    return PointCloud(std::move(pts));
}

struct HutchinsonOptions {
    /// Snap canonical coordinates to this resolution and drop duplicates; 0 disables.
    double snap_eps = 0.0;
    std::size_t max_points = 20'000'000;
};

namespace detail {

inline std::vector<ProjectivePoint> snap_unique(std::vector<ProjectivePoint> pts, double eps) {
    for (auto& p : pts) p = ProjectivePoint::from_canonical(std::round(p.u() / eps) * eps, std::round(p.v() / eps) * eps);
    std::sort(pts.begin(), pts.end(), [](const ProjectivePoint& a, const ProjectivePoint& b) {
        return a.u() < b.u() || (a.u() == b.u() && a.v() < b.v());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace detail

/// W(B) = union of W_n(B), ordered map by map.
inline PointCloud hutchinson_step(const Rpifs& ifs, const PointCloud& cloud, const HutchinsonOptions& options = {}) {
    std::vector<ProjectivePoint> out;
    out.reserve(cloud.size() * ifs.size());
    for (const auto& m : ifs.maps()) {
        for (const auto& p : cloud) out.push_back(apply_w(m, p));
    }
    if (options.snap_eps > 0.0) out = detail::snap_unique(std::move(out), options.snap_eps);
    return PointCloud(std::move(out));
}

inline PointCloud deterministic_attractor(const Rpifs& ifs, PointCloud initial, std::size_t steps,
                                          const HutchinsonOptions& options = {}) {
    for (std::size_t k = 0; k < steps; ++k) {
        if (initial.size() * ifs.size() > options.max_points) {
            std::ostringstream os;
            os << "deterministic_attractor: step " << k + 1 << " would produce " << initial.size() * ifs.size()
               << " points, above the cap " << options.max_points;
            throw SizeCapError(os.str());
        }
        initial = hutchinson_step(ifs, initial, options);
    }
    return initial;
}

/// Random iteration from P_0 with uniform map choice; the first `burn_in`
/// iterates are dropped. Deterministic for a given seed.
inline PointCloud chaos_game(const Rpifs& ifs, std::size_t n_points, std::size_t burn_in, std::uint64_t seed) {
    if (n_points < 1) throw ValidationError("chaos_game: need at least one point");
    SplitMix64 rng(seed);
    const std::uint64_t maps = ifs.size();
    ProjectivePoint p = canonicalize(ifs.data()[0]);
    std::vector<ProjectivePoint> out;
    out.reserve(n_points);
    for (std::size_t i = 0; i < burn_in + n_points; ++i) {
        p = apply_w(ifs.maps()[rng.below(maps)], p);
        if (i >= burn_in) out.push_back(p);
    }
    return PointCloud(std::move(out));
}

struct Metric {
    enum class Kind { projective, weighted };
    Kind kind = Kind::projective;
    double theta = 1.0;

    static Metric projective() { return {}; }
    static Metric weighted(double theta) {
        if (!(theta > 0.0)) throw ValidationError("weighted metric: theta must be positive");
        return {Kind::weighted, theta};
    }
};

namespace detail {

// Canonical coordinates sorted by u, so searches can stop once |du| alone
// exceeds the best distance found.
struct Canon {
    std::vector<double> u;
    std::vector<double> v;
};

inline Canon canon(const PointCloud& c) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(c.size());
    for (const auto& p : c) pts.emplace_back(p.u(), p.v());
    std::sort(pts.begin(), pts.end());
    Canon out;
    out.u.reserve(pts.size());
    out.v.reserve(pts.size());
    for (const auto& [u, v] : pts) {
        out.u.push_back(u);
        out.v.push_back(v);
    }
    return out;
}

inline double point_dist(const Metric& metric, double du, double dv) {
    if (metric.kind == Metric::Kind::projective) return std::hypot(du, dv);
    return std::abs(du) + metric.theta * std::abs(dv);
}

inline double nearest(const Canon& b, double ua, double va, const Metric& metric) {
    // Both metrics dominate |du|.
    double best = std::numeric_limits<double>::infinity();
    const auto mid = static_cast<std::size_t>(std::lower_bound(b.u.begin(), b.u.end(), ua) - b.u.begin());
    for (std::size_t j = mid; j < b.u.size() && b.u[j] - ua < best; ++j) {
        best = std::min(best, point_dist(metric, ua - b.u[j], va - b.v[j]));
    }
    for (std::size_t j = mid; j-- > 0 && ua - b.u[j] < best;) {
        best = std::min(best, point_dist(metric, ua - b.u[j], va - b.v[j]));
    }
    return best;
}

// sup over a in A of inf over b in B.
inline double directed_hausdorff(const Canon& a, const Canon& b, const Metric& metric) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.u.size(); ++i) worst = std::max(worst, nearest(b, a.u[i], a.v[i], metric));
    return worst;
}

inline double segment_dist(double pu, double pv, double u0, double v0, double u1, double v1) {
    const double du = u1 - u0;
    const double dv = v1 - v0;
    const double len2 = du * du + dv * dv;
    double t = len2 > 0.0 ? ((pu - u0) * du + (pv - v0) * dv) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(u0 + t * du - pu, v0 + t * dv - pv);
}

}  // namespace detail

/// Exact Hausdorff distance between two finite clouds.
inline double hausdorff_distance(const PointCloud& a, const PointCloud& b, const Metric& metric = Metric::projective()) {
    const auto ca = detail::canon(a);
    const auto cb = detail::canon(b);
    return std::max(detail::directed_hausdorff(ca, cb, metric), detail::directed_hausdorff(cb, ca, metric));
}

/// d_P Hausdorff distance between a cloud and the piecewise-linear graph
/// through the nodes of `g`. Cloud to graph is exact; graph to cloud is taken
/// over the nodes plus `subdivisions - 1` evenly spaced points per segment.
inline double hausdorff_to_polyline(const PointCloud& cloud, const SampledGraph& g, std::size_t subdivisions = 16) {
    if (subdivisions == 0) throw ValidationError("hausdorff_to_polyline: subdivisions must be positive");
    const auto u = g.u();
    const auto v = g.v();
    const std::size_t segs = u.size() - 1;
    double to_graph = 0.0;
    for (const auto& p : cloud) {
        const double pu = p.u();
        const double pv = p.v();
        const auto hit = std::upper_bound(u.begin(), u.end(), pu) - u.begin();
        const std::size_t start = hit == 0 ? 0 : std::min<std::size_t>(static_cast<std::size_t>(hit) - 1, segs - 1);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t s = start; s < segs && u[s] - pu < best; ++s) {
            best = std::min(best, detail::segment_dist(pu, pv, u[s], v[s], u[s + 1], v[s + 1]));
        }
        for (std::size_t s = start; s-- > 0 && pu - u[s + 1] < best;) {
            best = std::min(best, detail::segment_dist(pu, pv, u[s], v[s], u[s + 1], v[s + 1]));
        }
        to_graph = std::max(to_graph, best);
    }
    const auto cc = detail::canon(cloud);
    const Metric m = Metric::projective();
    double to_cloud = 0.0;
    for (std::size_t s = 0; s < segs; ++s) {
        for (std::size_t k = 0; k < subdivisions; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(subdivisions);
            to_cloud = std::max(to_cloud, detail::nearest(cc, u[s] + t * (u[s + 1] - u[s]), v[s] + t * (v[s + 1] - v[s]), m));
        }
    }
    to_cloud = std::max(to_cloud, detail::nearest(cc, u[segs], v[segs], m));
    return std::max(to_graph, to_cloud);
}

/// Points of the homogeneous rays through the cloud at height z = z0.
inline std::vector<Triple> slice_at_level(const PointCloud& cloud, double z0) {
    if (z0 == 0.0 || !std::isfinite(z0)) throw ValidationError("slice_at_level: z0 must be nonzero");
    std::vector<Triple> out;
    out.reserve(cloud.size());
    for (const auto& p : cloud) out.push_back({p.u() * z0, p.v() * z0, z0});
    return out;
}

}  // namespace rpfif
