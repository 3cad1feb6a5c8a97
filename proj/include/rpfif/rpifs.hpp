#pragma once
// Real projective IFS built from interpolation data.
//
// For data P_0..P_N with canonical coordinates (X_k, Y_k) each map is
//   L_n(x:0:z)   = (a_n x + b_n z : 0 : z)
//   F_n(x:y:z)   = (0 : c_n x + d_n y + f_n z : z)
//   W_n(x:y:z)   = L_n(x:0:z) (+) F_n(x:y:z)
// with a_n, b_n, c_n, f_n fixed by the join-up conditions W_n(P_0) = P_{n-1},
// W_n(P_N) = P_n, and the vertical scale d_n chosen freely.

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "rpfif/errors.hpp"
#include "rpfif/geometry.hpp"
#include "rpfif/projective.hpp"

namespace rpfif {

/// Validated interpolation nodes, z made positive, abscissae strictly increasing.
class InterpolationData {
  public:
    /// Throws when N < 2, a point lies on z = 0, or the abscissae are not strictly increasing.
    explicit InterpolationData(std::span<const ProjectivePoint> points) {
        if (points.size() < 3) {
            throw ValidationError("interpolation data needs at least 3 points (N >= 2)");
        }
        points_.reserve(points.size());
        for (const auto& p : points) {
            detail::check_z(p.z(), kDefaultZFloor);
            points_.push_back(p.z() < 0.0 ? ProjectivePoint{-p.x(), -p.y(), -p.z()} : p);
        }
        for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
            const auto& p = points_[k];
            const auto& q = points_[k + 1];
            if (!(p.x() * q.z() < q.x() * p.z())) {
                std::ostringstream os;
                os << "abscissa ordering violated between points " << k << " and " << k + 1;
                throw OrderingError(os.str());
            }
        }
    }

    std::size_t size() const noexcept { return points_.size(); }
    /// Number of maps, one per subinterval.
    std::size_t intervals() const noexcept { return points_.size() - 1; }
    const ProjectivePoint& operator[](std::size_t k) const { return points_[k]; }
    std::span<const ProjectivePoint> points() const noexcept { return points_; }

    double X(std::size_t k) const { return points_[k].u(); }
    double Y(std::size_t k) const { return points_[k].v(); }

    ProjectiveInterval interval() const {
        return make_interval(AxisPoint10{points_.front().x(), points_.front().z()},
                             AxisPoint10{points_.back().x(), points_.back().z()});
    }

  private:
    std::vector<ProjectivePoint> points_;
};

inline InterpolationData validate_data(std::span<const ProjectivePoint> points) { return InterpolationData(points); }

inline InterpolationData validate_data(std::span<const Triple> triples) {
    std::vector<ProjectivePoint> points;
    points.reserve(triples.size());
    for (const auto& t : triples) points.emplace_back(t);
    return validate_data(std::span<const ProjectivePoint>(points));
}

/// One map W_n; the matrix form is [[a,0,b],[c,d,f],[0,0,1]].
struct ProjectiveMap {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double f = 0.0;

    std::array<std::array<double, 3>, 3> matrix() const {
        return {{{a, 0.0, b}, {c, d, f}, {0.0, 0.0, 1.0}}};
    }

    bool operator==(const ProjectiveMap&) const = default;
};

struct LCoefficients {
    double a;
    double b;
};

struct FCoefficients {
    double c;
    double f;
};

/// a_n, b_n for 1 <= n <= N.
inline LCoefficients compute_l_coeffs(const InterpolationData& data, std::size_t n) {
    if (n < 1 || n > data.intervals()) {
        throw ValidationError("compute_l_coeffs: map index out of range");
    }
    const std::size_t last = data.intervals();
    const double x0 = data.X(0);
    const double xN = data.X(last);
    const double span = xN - x0;
    return {(data.X(n) - data.X(n - 1)) / span, (xN * data.X(n - 1) - x0 * data.X(n)) / span};
}

/// c_n, f_n for 1 <= n <= N and a given vertical scale d_n.
inline FCoefficients compute_f_coeffs(const InterpolationData& data, std::size_t n, double d_n) {
    if (n < 1 || n > data.intervals()) {
        throw ValidationError("compute_f_coeffs: map index out of range");
    }
    const std::size_t last = data.intervals();
    const double x0 = data.X(0);
    const double xN = data.X(last);
    const double y0 = data.Y(0);
    const double yN = data.Y(last);
    const double span = xN - x0;
    const double c = (data.Y(n) - data.Y(n - 1)) / span - d_n * (yN - y0) / span;
    const double f = (xN * data.Y(n - 1) - x0 * data.Y(n)) / span - d_n * (xN * y0 - x0 * yN) / span;
    return {c, f};
}

inline AxisPoint10 apply_l(const ProjectiveMap& m, const AxisPoint10& p) {
    return AxisPoint10::from_canonical(m.a * p.u() + m.b);
}

/// L^{-1}(x:0:z) = (x - b z : 0 : a z).
inline AxisPoint10 apply_l_inv(const ProjectiveMap& m, const AxisPoint10& p) {
    return AxisPoint10{p.x() - m.b * p.z(), m.a * p.z()}.canonical();
}

inline AxisPoint01 apply_f(const ProjectiveMap& m, const ProjectivePoint& p) {
    return AxisPoint01::from_canonical(m.c * p.u() + m.d * p.v() + m.f);
}

/// W applied through the matrix form.
inline ProjectivePoint apply_w_matrix(const ProjectiveMap& m, const ProjectivePoint& p) {
    const auto M = m.matrix();
    const double x = M[0][0] * p.x() + M[0][1] * p.y() + M[0][2] * p.z();
    const double y = M[1][0] * p.x() + M[1][1] * p.y() + M[1][2] * p.z();
    const double z = M[2][0] * p.x() + M[2][1] * p.y() + M[2][2] * p.z();
    return canonicalize(ProjectivePoint{x, y, z});
}

/// W(p) = L(p_h) (+) F(p).
inline ProjectivePoint apply_w(const ProjectiveMap& m, const ProjectivePoint& p) {
    const auto [h, v] = decompose(p);
    const ProjectivePoint out = oplus(apply_l(m, h).point(), apply_f(m, p).point());
#ifndef NDEBUG
    {
        const ProjectivePoint via_matrix = apply_w_matrix(m, p);
        const double scale = 1.0 + std::abs(out.u()) + std::abs(out.v());
        assert(equiv(out, via_matrix, 1e-12 * scale));
    }
#endif
    return out;
}

struct BuildOptions {
    /// Permit d_n = 0 (singular W_n); the resulting function is the piecewise-linear interpolant.
    bool allow_zero_scales = false;
    double joinup_tol = 1e-9;
};

class Rpifs {
  public:
    Rpifs(InterpolationData data, std::vector<ProjectiveMap> maps, std::vector<std::string> warnings = {})
        : data_(std::move(data)), maps_(std::move(maps)), interval_(data_.interval()), warnings_(std::move(warnings)) {
        if (maps_.size() != data_.intervals()) {
            throw ValidationError("Rpifs: need exactly one map per subinterval");
        }
    }

    const InterpolationData& data() const noexcept { return data_; }
    std::span<const ProjectiveMap> maps() const noexcept { return maps_; }
    const ProjectiveMap& map(std::size_t n) const { return maps_.at(n - 1); }  // 1-based, like the data
    std::size_t size() const noexcept { return maps_.size(); }
    const ProjectiveInterval& interval() const noexcept { return interval_; }
    std::span<const std::string> warnings() const noexcept { return warnings_; }

    double d_bound() const {
        double d = 0.0;
        for (const auto& m : maps_) d = std::max(d, std::abs(m.d));
        return d;
    }
    double a_max() const {
        double a = 0.0;
        for (const auto& m : maps_) a = std::max(a, std::abs(m.a));
        return a;
    }

  private:
    InterpolationData data_;
    std::vector<ProjectiveMap> maps_;
    ProjectiveInterval interval_;
    std::vector<std::string> warnings_;
};

struct JoinUpReport {
    double max_residual = 0.0;
    std::vector<std::size_t> failed_maps;  // 1-based
    bool ok() const noexcept { return failed_maps.empty(); }
};

/// Checks W_n(P_0) ~ P_{n-1} and W_n(P_N) ~ P_n in the projective metric.
inline JoinUpReport verify_joinup(const Rpifs& ifs, double tol) {
    JoinUpReport report;
    const auto& data = ifs.data();
    const std::size_t last = data.intervals();
    for (std::size_t n = 1; n <= ifs.size(); ++n) {
        const auto& m = ifs.map(n);
        const double left = dist_p(apply_w(m, data[0]), data[n - 1]);
        const double right = dist_p(apply_w(m, data[last]), data[n]);
        const double r = std::max(left, right);
        report.max_residual = std::max(report.max_residual, r);
        if (!(r < tol)) report.failed_maps.push_back(n);
    }
    return report;
}

inline Rpifs build_ifs(const InterpolationData& data, std::span<const double> scales, const BuildOptions& options = {}) {
    if (scales.size() != data.intervals()) {
        std::ostringstream os;
        os << "expected " << data.intervals() << " scale factors for " << data.size() << " points, got "
           << scales.size();
        throw ValidationError(os.str());
    }
    std::vector<std::string> warnings;
    std::vector<ProjectiveMap> maps;
    maps.reserve(scales.size());
    for (std::size_t n = 1; n <= scales.size(); ++n) {
        const double d = scales[n - 1];
        if (!std::isfinite(d) || !(std::abs(d) < 1.0)) {
            std::ostringstream os;
            os << "scale factor d_" << n << " = " << d << " must satisfy |d| < 1";
            throw ValidationError(os.str());
        }
        if (d == 0.0) {
            if (!options.allow_zero_scales) {
                std::ostringstream os;
                os << "scale factor d_" << n << " is zero (singular map); enable allow_zero_scales to permit it";
                throw ValidationError(os.str());
            }
            warnings.push_back("d_" + std::to_string(n) + " = 0: map is singular, RPFIF degenerates to a polyline");
        }
        const auto [a, b] = compute_l_coeffs(data, n);
        const auto [c, f] = compute_f_coeffs(data, n, d);
        maps.push_back({a, b, c, d, f});
    }
    Rpifs ifs(data, std::move(maps), std::move(warnings));
    const auto report = verify_joinup(ifs, options.joinup_tol);
    if (!report.ok()) {
        std::ostringstream os;
        os << "join-up conditions fail (max residual " << report.max_residual << ")";
        throw NumericalError(os.str());
    }
    return ifs;
}

struct ContractionCertificate {
    double theta_max = 0.0;
    double theta_used = 0.0;
    double a_bound = 0.0;
    double d_bound = 0.0;
    double c_bound = 0.0;
    bool sufficient = false;
};

/// Sufficient condition for every W_n to contract the weighted metric d_theta:
/// 0 < theta <= min(1 - 2|c_n|) / max(2|a_n|) and max|d_n| < 1. A failed
/// certificate does not rule out the fixed point, which only needs |d_n| < 1.
inline ContractionCertificate contraction_certificate(const Rpifs& ifs, std::optional<double> theta = std::nullopt) {
    ContractionCertificate cert;
    double num = std::numeric_limits<double>::infinity();
    double den = 0.0;
    for (const auto& m : ifs.maps()) {
        num = std::min(num, 1.0 - 2.0 * std::abs(m.c));
        den = std::max(den, 2.0 * std::abs(m.a));
        cert.d_bound = std::max(cert.d_bound, std::abs(m.d));
    }
    cert.theta_max = num / den;
    if (theta) {
        if (!(*theta > 0.0)) throw ValidationError("contraction_certificate: theta must be positive");
        cert.theta_used = *theta;
    } else if (cert.theta_max > 0.0) {
        cert.theta_used = cert.theta_max / 2.0;
    }
    for (const auto& m : ifs.maps()) {
        cert.a_bound = std::max(cert.a_bound, std::abs(m.a) + cert.theta_used * std::abs(m.c));
    }
    cert.c_bound = std::max(cert.a_bound, cert.d_bound);
    cert.sufficient = cert.theta_max > 0.0 && cert.d_bound < 1.0 && cert.theta_used > 0.0 &&
                      cert.theta_used <= cert.theta_max;
    return cert;
}

}  // namespace rpfif
