#pragma once
// Classical affine fractal interpolation in plain real coordinates, kept
// deliberately separate from the projective code path so it can serve as a
// reference. Maps are w_n(x, y) = (a_n x + b_n, c_n x + d_n y + f_n); each is
// solved from its own join-up equations rather than from closed forms.

#include <cmath>
#include <cstddef>
#include <sstream>
#include <utility>
#include <vector>

#include "rpfif/errors.hpp"

namespace rpfif::classical {

struct AffineMap {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double f = 0.0;
};

struct FifSpec {
    std::vector<std::pair<double, double>> nodes;
    std::vector<AffineMap> maps;
};

/// Solves a x0 + b = xl, a xN + b = xr and c x0 + d y0 + f = yl, c xN + d yN + f = yr
/// for each map by elimination.
inline FifSpec make_spec(std::vector<std::pair<double, double>> nodes, const std::vector<double>& scales) {
    if (nodes.size() < 3 || scales.size() + 1 != nodes.size()) {
        throw ValidationError("classical FIF: need N+1 >= 3 nodes and N scales");
    }
    const auto [x0, y0] = nodes.front();
    const auto [xN, yN] = nodes.back();
    const double width = xN - x0;
    if (!(width > 0.0)) throw ValidationError("classical FIF: nodes must be increasing");
    FifSpec spec;
    for (std::size_t n = 1; n < nodes.size(); ++n) {
        const auto [xl, yl] = nodes[n - 1];
        const auto [xr, yr] = nodes[n];
        AffineMap m;
        m.d = scales[n - 1];
        // Subtract the left equation from the right one to isolate the slope.
        m.a = (xr - xl) / width;
        m.b = xl - m.a * x0;
        m.c = ((yr - m.d * yN) - (yl - m.d * y0)) / width;
        m.f = yl - m.d * y0 - m.c * x0;
        spec.maps.push_back(m);
    }
    spec.nodes = std::move(nodes);
    return spec;
}

/// Largest violation of w_n(x_0, y_0) = (x_{n-1}, y_{n-1}) and w_n(x_N, y_N) = (x_n, y_n).
inline double joinup_residual(const FifSpec& spec) {
    const auto [x0, y0] = spec.nodes.front();
    const auto [xN, yN] = spec.nodes.back();
    double worst = 0.0;
    for (std::size_t n = 1; n < spec.nodes.size(); ++n) {
        const auto& m = spec.maps[n - 1];
        const auto [xl, yl] = spec.nodes[n - 1];
        const auto [xr, yr] = spec.nodes[n];
        worst = std::max(worst, std::abs(m.a * x0 + m.b - xl));
        worst = std::max(worst, std::abs(m.c * x0 + m.d * y0 + m.f - yl));
        worst = std::max(worst, std::abs(m.a * xN + m.b - xr));
        worst = std::max(worst, std::abs(m.c * xN + m.d * yN + m.f - yr));
    }
    return worst;
}

struct Samples {
    std::vector<double> x;
    std::vector<double> y;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Iterates (Tg)(x) = c_n L_n^{-1}(x) + d_n g(L_n^{-1}(x)) + f_n from the
/// polyline through the nodes, on a grid of grid_m points uniform within each
/// node interval.
inline Samples fixed_point(const FifSpec& spec, std::size_t grid_m, double tol, std::size_t max_iter = 200) {
    const std::size_t N = spec.maps.size();
    if (joinup_residual(spec) > 1e-9) throw ValidationError("classical FIF: join-up conditions do not hold");
    if (grid_m < N + 1 || (grid_m - 1) % N != 0) throw GridMismatchError("classical FIF: grid_m must be k*N+1");
    const std::size_t per = (grid_m - 1) / N;

    Samples out;
    std::vector<double> h(N);
    for (std::size_t n = 0; n < N; ++n) {
        h[n] = (spec.nodes[n + 1].first - spec.nodes[n].first) / static_cast<double>(per);
        for (std::size_t j = 0; j < per; ++j) out.x.push_back(spec.nodes[n].first + static_cast<double>(j) * h[n]);
    }
    out.x.push_back(spec.nodes[N].first);

    auto interval_of = [&](double x) {
        std::size_t n = 0;
        while (n + 1 < N && x >= spec.nodes[n + 1].first) ++n;
        return n;
    };
    auto sample = [&](const std::vector<double>& g, double x) {
        const double lo = spec.nodes.front().first;
        const double hi = spec.nodes.back().first;
        if (x <= lo) return g.front();
        if (x >= hi) return g.back();
        const std::size_t n = interval_of(x);
        const double t = (x - spec.nodes[n].first) / h[n];
        std::size_t j = static_cast<std::size_t>(std::floor(t));
        if (j >= per) j = per - 1;
        const std::size_t k = n * per + j;
        const double frac = t - static_cast<double>(j);
        return frac == 0.0 ? g[k] : g[k] + frac * (g[k + 1] - g[k]);
    };

    std::vector<double> g(out.x.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const std::size_t n = interval_of(out.x[i]);
        const auto [xl, yl] = spec.nodes[n];
        const auto [xr, yr] = spec.nodes[n + 1];
        g[i] = yl + (out.x[i] - xl) / (xr - xl) * (yr - yl);
    }

    std::vector<double> next(g.size());
    while (out.iterations < max_iter) {
        double delta = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto& m = spec.maps[interval_of(out.x[i])];
            const double s = (out.x[i] - m.b) / m.a;
            next[i] = m.c * s + m.d * sample(g, s) + m.f;
            delta = std::max(delta, std::abs(next[i] - g[i]));
        }
        std::swap(g, next);
        ++out.iterations;
        if (delta < tol) {
            out.converged = true;
            break;
        }
    }
    out.y = std::move(g);
    return out;
}

}  // namespace rpfif::classical
