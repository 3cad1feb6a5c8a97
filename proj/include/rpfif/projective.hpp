#pragma once
// Arithmetic on the projective plane with the hyperplane z = 0 removed.
//
// Every point (x:y:z) with z != 0 has the representative (x/z : y/z : 1). Under
// the operations below the set is a real vector space whose zero is (0:0:1),
// and the induced norm sqrt(x^2 + y^2) / |z| is the Euclidean norm of the
// canonical pair. All results are returned in canonical form.

#include <array>
#include <cmath>
#include <compare>
#include <sstream>
#include <utility>

#include "rpfif/errors.hpp"

namespace rpfif {

inline constexpr double kDefaultZFloor = 1e-12;
inline constexpr double kDefaultEquivTol = 1e-12;

using Triple = std::array<double, 3>;

namespace detail {

inline void check_z(double z, double z_floor) {
    if (!(std::abs(z) >= z_floor)) {
        std::ostringstream os;
        os << "third coordinate " << z << " is below the floor " << z_floor << " (point on z = 0)";
        throw HyperplanePointError(os.str());
    }
}

inline std::weak_ordering order(double a, double b) {
    if (a < b) return std::weak_ordering::less;
    if (a > b) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
}

}  // namespace detail

/// A point (x:y:z) off the hyperplane z = 0. Stores the representative it was
/// built from; `u()` and `v()` give the canonical coordinates.
class ProjectivePoint {
  public:
    ProjectivePoint(double x, double y, double z, double z_floor = kDefaultZFloor) : x_(x), y_(y), z_(z) {
        detail::check_z(z, z_floor);
    }
    explicit ProjectivePoint(const Triple& t, double z_floor = kDefaultZFloor)
        : ProjectivePoint(t[0], t[1], t[2], z_floor) {}

    static ProjectivePoint zero() { return {0.0, 0.0, 1.0}; }
    static ProjectivePoint from_canonical(double u, double v) { return {u, v, 1.0}; }

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }
    double z() const noexcept { return z_; }
    double u() const noexcept { return x_ / z_; }
    double v() const noexcept { return y_ / z_; }
    Triple triple() const noexcept { return {x_, y_, z_}; }

    bool is_canonical() const noexcept { return z_ == 1.0; }

    /// Bitwise representative equality; use `equiv` for projective equality.
    bool operator==(const ProjectivePoint&) const = default;

  private:
    double x_;
    double y_;
    double z_;
};

/// (x:0:z), a point on the horizontal axis subspace.
class AxisPoint10 {
  public:
    AxisPoint10(double x, double z, double z_floor = kDefaultZFloor) : x_(x), z_(z) { detail::check_z(z, z_floor); }
    static AxisPoint10 from_canonical(double u) { return {u, 1.0}; }

    double x() const noexcept { return x_; }
    double z() const noexcept { return z_; }
    double u() const noexcept { return x_ / z_; }
    AxisPoint10 canonical() const { return {u(), 1.0}; }
    ProjectivePoint point() const { return {x_, 0.0, z_}; }

    bool operator==(const AxisPoint10&) const = default;

  private:
    double x_;
    double z_;
};

/// (0:y:z), a point on the vertical axis subspace.
class AxisPoint01 {
  public:
    AxisPoint01(double y, double z, double z_floor = kDefaultZFloor) : y_(y), z_(z) { detail::check_z(z, z_floor); }
    static AxisPoint01 from_canonical(double v) { return {v, 1.0}; }

    double y() const noexcept { return y_; }
    double z() const noexcept { return z_; }
    double v() const noexcept { return y_ / z_; }
    AxisPoint01 canonical() const { return {v(), 1.0}; }
    ProjectivePoint point() const { return {0.0, y_, z_}; }

    bool operator==(const AxisPoint01&) const = default;

  private:
    double y_;
    double z_;
};

inline ProjectivePoint canonicalize(const ProjectivePoint& p) { return {p.x() / p.z(), p.y() / p.z(), 1.0}; }

/// Projective equality: canonical coordinates agree within `tol`.
inline bool equiv(const ProjectivePoint& p, const ProjectivePoint& q, double tol = kDefaultEquivTol) {
    return std::abs(p.u() - q.u()) <= tol && std::abs(p.v() - q.v()) <= tol;
}
inline bool equiv(const AxisPoint10& p, const AxisPoint10& q, double tol = kDefaultEquivTol) {
    return std::abs(p.u() - q.u()) <= tol;
}
inline bool equiv(const AxisPoint01& p, const AxisPoint01& q, double tol = kDefaultEquivTol) {
    return std::abs(p.v() - q.v()) <= tol;
}

inline ProjectivePoint oplus(const ProjectivePoint& p, const ProjectivePoint& q) {
    const double zz = p.z() * q.z();
    return {(p.x() * q.z() + q.x() * p.z()) / zz, (p.y() * q.z() + q.y() * p.z()) / zz, 1.0};
}

inline ProjectivePoint odot(double a, const ProjectivePoint& p) { return {a * p.x() / p.z(), a * p.y() / p.z(), 1.0}; }

inline ProjectivePoint negate(const ProjectivePoint& p) { return {-p.x() / p.z(), -p.y() / p.z(), 1.0}; }

inline ProjectivePoint ominus(const ProjectivePoint& p, const ProjectivePoint& q) {
    const double zz = p.z() * q.z();
    return {(p.x() * q.z() - q.x() * p.z()) / zz, (p.y() * q.z() - q.y() * p.z()) / zz, 1.0};
}

/// Componentwise product (x1 x2 : y1 y2 : z1 z2).
inline ProjectivePoint hadamard(const ProjectivePoint& p, const ProjectivePoint& q) {
    const double zz = p.z() * q.z();
    return {p.x() * q.x() / zz, p.y() * q.y() / zz, 1.0};
}

/// (x:y:z) = (x:0:z) (+) (0:y:z), both parts canonical.
inline std::pair<AxisPoint10, AxisPoint01> decompose(const ProjectivePoint& p) {
    return {AxisPoint10{p.u(), 1.0}, AxisPoint01{p.v(), 1.0}};
}

inline ProjectivePoint compose(const AxisPoint10& h, const AxisPoint01& v) { return oplus(h.point(), v.point()); }

inline double norm_p(const ProjectivePoint& p) { return std::sqrt(p.x() * p.x() + p.y() * p.y()) / std::abs(p.z()); }

/// Real projective metric: Euclidean distance of the canonical pairs.
inline double dist_p(const ProjectivePoint& p, const ProjectivePoint& q) {
    const double du = p.u() - q.u();
    const double dv = p.v() - q.v();
    return std::sqrt(du * du + dv * dv);
}
inline double dist_p(const AxisPoint10& p, const AxisPoint10& q) { return std::abs(p.u() - q.u()); }
inline double dist_p(const AxisPoint01& p, const AxisPoint01& q) { return std::abs(p.v() - q.v()); }

/// Weighted metric: horizontal part plus theta times the vertical part.
inline double dist_theta(const ProjectivePoint& p, const ProjectivePoint& q, double theta) {
    if (!(theta > 0.0)) {
        throw ValidationError("dist_theta: theta must be positive");
    }
    return std::abs(p.u() - q.u()) + theta * std::abs(p.v() - q.v());
}

/// Round metric on lines through the origin, sqrt(2 - 2|<p,q>| / (|p||q|)).
/// Evaluated as |p/|p| - s q/|q||, s = sign(<p,q>), which is the same quantity
/// without cancellation near zero.
inline double dist_round(const Triple& p, const Triple& q) {
    const double np = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    const double nq = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
    if (np == 0.0 || nq == 0.0) {
        throw ValidationError("dist_round: zero triple");
    }
    const double dot = p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
    const double s = dot < 0.0 ? -1.0 : 1.0;
    double acc = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double d = p[k] / np - s * q[k] / nq;
        acc += d * d;
    }
    return std::sqrt(acc);
}
inline double dist_round(const ProjectivePoint& p, const ProjectivePoint& q) { return dist_round(p.triple(), q.triple()); }

/// Order on the horizontal axis, x1 z2 <= x2 z1 once both z are made positive.
inline std::weak_ordering compare_h10(const AxisPoint10& p, const AxisPoint10& q) {
    const double s = (p.z() < 0.0) != (q.z() < 0.0) ? -1.0 : 1.0;
    return detail::order(s * (p.x() * q.z()), s * (q.x() * p.z()));
}
inline std::weak_ordering compare_h01(const AxisPoint01& p, const AxisPoint01& q) {
    const double s = (p.z() < 0.0) != (q.z() < 0.0) ? -1.0 : 1.0;
    return detail::order(s * (p.y() * q.z()), s * (q.y() * p.z()));
}

inline bool is_orthogonal(const Triple& p, const Triple& q, double tol = kDefaultEquivTol) {
    return std::abs(p[0] * q[0] + p[1] * q[1] + p[2] * q[2]) <= tol;
}

}  // namespace rpfif
