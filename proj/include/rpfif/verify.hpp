#pragma once
// Self-checks of a built IFS: join-up, the exact Lipschitz identities of L_n
// and F_n, agreement of the two W_n code paths, contraction of the operator,
// and agreement with the classical affine reference.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rpfif/classical_fif.hpp"
#include "rpfif/engine.hpp"
#include "rpfif/projective.hpp"
#include "rpfif/random.hpp"
#include "rpfif/rpifs.hpp"

namespace rpfif {

inline double uniform01(SplitMix64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
inline double uniform(SplitMix64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Random nonzero representative scale with |lambda| in [0.5, 2].
inline double random_scale(SplitMix64& rng) {
    const double mag = uniform(rng, 0.5, 2.0);
    return (rng() & 1U) ? mag : -mag;
}

/// Random point of the rectangle [u_lo, u_hi] x [v_lo, v_hi], non-canonical representative.
inline ProjectivePoint random_point(SplitMix64& rng, double u_lo, double u_hi, double v_lo, double v_hi) {
    const double lambda = random_scale(rng);
    return {lambda * uniform(rng, u_lo, u_hi), lambda * uniform(rng, v_lo, v_hi), lambda};
}

/// Endpoint-pinned random graph on the grid of `base`: base plus noise that
/// vanishes at both ends.
inline SampledGraph random_pinned_graph(SplitMix64& rng, const SampledGraph& base, double amplitude) {
    std::vector<double> v(base.v().begin(), base.v().end());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) v[i] += uniform(rng, -amplitude, amplitude);
    return SampledGraph::from_canonical(std::vector<double>(base.u().begin(), base.u().end()), std::move(v));
}

struct CheckResult {
    std::string name;
    double value = 0.0;      // worst observed residual or ratio
    double threshold = 0.0;  // pass iff value <= threshold (join-up: value < threshold)
    bool passed = false;
};

struct VerifyOptions {
    std::size_t samples_per_map = 10'000;
    std::size_t graph_pairs = 100;
    std::size_t contraction_grid_m = 257;
    std::size_t oracle_grid_m = 1025;
    double identity_tol = 1e-12;
    double oracle_tol = 1e-9;
    double fixed_point_tol = 1e-12;
    std::uint64_t seed = 1;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
    }
};

/// Worst |d_P(L p, L q) - |a| d_P(p, q)| and the two F_n slot identities over random inputs.
struct LipschitzResiduals {
    double l_map = 0.0;
    double f_first = 0.0;
    double f_second = 0.0;
    double w_paths = 0.0;
};

inline LipschitzResiduals lipschitz_residuals(const Rpifs& ifs, std::size_t samples, SplitMix64& rng) {
    const auto& data = ifs.data();
    const double u_lo = data.X(0);
    const double u_hi = data.X(data.intervals());
    double v_lo = data.Y(0);
    double v_hi = data.Y(0);
    for (std::size_t k = 0; k < data.size(); ++k) {
        v_lo = std::min(v_lo, data.Y(k));
        v_hi = std::max(v_hi, data.Y(k));
    }
    v_lo -= 1.0;
    v_hi += 1.0;
    LipschitzResiduals out;
    for (const auto& m : ifs.maps()) {
        for (std::size_t s = 0; s < samples; ++s) {
            const double l1 = random_scale(rng);
            const double l2 = random_scale(rng);
            const AxisPoint10 h1{l1 * uniform(rng, u_lo, u_hi), l1};
            const AxisPoint10 h2{l2 * uniform(rng, u_lo, u_hi), l2};
            const AxisPoint01 v1{l1 * uniform(rng, v_lo, v_hi), l1};
            const AxisPoint01 v2{l2 * uniform(rng, v_lo, v_hi), l2};

            out.l_map = std::max(out.l_map,
                                 std::abs(dist_p(apply_l(m, h1), apply_l(m, h2)) - std::abs(m.a) * dist_p(h1, h2)));

            const double first = dist_p(apply_f(m, compose(h1, v1)), apply_f(m, compose(h2, v1)));
            out.f_first = std::max(out.f_first, std::abs(first - std::abs(m.c) * dist_p(h1, h2)));

            const double second = dist_p(apply_f(m, compose(h1, v1)), apply_f(m, compose(h1, v2)));
            out.f_second = std::max(out.f_second, std::abs(second - std::abs(m.d) * dist_p(v1, v2)));

            const ProjectivePoint p = compose(h1, v2);
            out.w_paths = std::max(out.w_paths, dist_p(apply_w(m, p), apply_w_matrix(m, p)));
        }
    }
    return out;
}

/// Largest sup-distance ratio ||Tf - Tg|| / ||f - g|| over random pinned pairs.
inline double worst_contraction_ratio(const Rpifs& ifs, std::size_t grid_m, std::size_t pairs, SplitMix64& rng) {
    const SampledGraph base = linear_interpolant(ifs.data(), make_fif_grid(ifs.data(), grid_m));
    double worst = 0.0;
    for (std::size_t i = 0; i < pairs; ++i) {
        const SampledGraph f = random_pinned_graph(rng, base, 2.0);
        const SampledGraph g = random_pinned_graph(rng, base, 2.0);
        const double before = graph_sup_dist(f, g);
        if (before == 0.0) continue;
        worst = std::max(worst, graph_sup_dist(rb_apply(ifs, f), rb_apply(ifs, g)) / before);
    }
    return worst;
}

/// Max |RPFIF - classical FIF| over the shared grid nodes.
inline double oracle_difference(const Rpifs& ifs, std::size_t grid_m, double tol) {
    const auto& data = ifs.data();
    std::vector<std::pair<double, double>> nodes;
    for (std::size_t k = 0; k < data.size(); ++k) nodes.emplace_back(data.X(k), data.Y(k));
    std::vector<double> scales;
    for (const auto& m : ifs.maps()) scales.push_back(m.d);
    const auto spec = classical::make_spec(std::move(nodes), scales);
    const auto reference = classical::fixed_point(spec, grid_m, tol);
    const auto projective = rb_fixed_point(ifs, grid_m, tol);
    const auto u = projective.graph.u();
    const auto v = projective.graph.v();
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (std::abs(u[i] - reference.x[i]) > 1e-12) {
            throw GridMismatchError("oracle_difference: reference grid differs from the projective grid");
        }
        worst = std::max(worst, std::abs(v[i] - reference.y[i]));
    }
    return worst;
}

inline VerifyReport run_verification(const Rpifs& ifs, const VerifyOptions& opt = {}) {
    VerifyReport report;
    SplitMix64 rng(opt.seed);

    const auto joinup = verify_joinup(ifs, opt.identity_tol);
    report.checks.push_back({"join-up", joinup.max_residual, opt.identity_tol, joinup.ok()});

    const auto lip = lipschitz_residuals(ifs, opt.samples_per_map, rng);
    report.checks.push_back({"lipschitz-L", lip.l_map, opt.identity_tol, lip.l_map <= opt.identity_tol});
    report.checks.push_back({"lipschitz-F-first", lip.f_first, opt.identity_tol, lip.f_first <= opt.identity_tol});
    report.checks.push_back({"lipschitz-F-second", lip.f_second, opt.identity_tol, lip.f_second <= opt.identity_tol});
    report.checks.push_back({"matrix-form", lip.w_paths, opt.identity_tol, lip.w_paths <= opt.identity_tol});

    const double bound = ifs.d_bound() + 1e-9;
    const double ratio = worst_contraction_ratio(ifs, opt.contraction_grid_m, opt.graph_pairs, rng);
    report.checks.push_back({"rb-contraction", ratio, bound, ratio <= bound});

    const double diff = oracle_difference(ifs, opt.oracle_grid_m, opt.fixed_point_tol);
    report.checks.push_back({"oracle-equivalence", diff, opt.oracle_tol, diff <= opt.oracle_tol});
    return report;
}

}  // namespace rpfif
