#include <cmath>
#include <compare>
#include <vector>

#include <gtest/gtest.h>

#include "rpfif/projective.hpp"
#include "rpfif/random.hpp"
#include "rpfif/verify.hpp"

using namespace rpfif;

namespace {

constexpr double kTol = 1e-12;

void expect_canonical(const ProjectivePoint& p, double u, double v, double tol = kTol) {
    EXPECT_NEAR(p.u(), u, tol);
    EXPECT_NEAR(p.v(), v, tol);
}

// Scale-aware comparison for sums of moderately large coordinates.
bool close(const ProjectivePoint& p, const ProjectivePoint& q, double tol = kTol) {
    const double scale = std::max({1.0, std::abs(p.u()), std::abs(p.v())});
    return std::abs(p.u() - q.u()) <= tol * scale && std::abs(p.v() - q.v()) <= tol * scale;
}

}  // namespace

TEST(Canonicalize, Examples) {
    expect_canonical(canonicalize({2, 4, 2}), 1, 2);
    EXPECT_EQ(canonicalize({1, 2, 1}), ProjectivePoint(1, 2, 1));
    EXPECT_EQ(canonicalize({-3, 6, -3}), ProjectivePoint(1, -2, 1));
    EXPECT_TRUE(canonicalize({-3, 6, -3}).is_canonical());
}

TEST(ProjectivePoint, RejectsHyperplane) {
    EXPECT_THROW(ProjectivePoint(1, 2, 0), HyperplanePointError);
    EXPECT_THROW(ProjectivePoint(1, 2, 1e-13), HyperplanePointError);
    EXPECT_THROW(AxisPoint10(1, 0), HyperplanePointError);
    EXPECT_THROW(AxisPoint01(1, 0), HyperplanePointError);
    EXPECT_NO_THROW(ProjectivePoint(1, 2, 1e-11));
    EXPECT_NO_THROW(ProjectivePoint(1, 2, 1e-13, 1e-14));
}

TEST(Oplus, Examples) {
    expect_canonical(oplus({1, 2, 1}, {3, 4, 1}), 4, 6);
    expect_canonical(oplus({7, -3, 2}, {0, 0, 1}), 3.5, -1.5);
    expect_canonical(oplus({2, 4, 2}, {3, 4, 1}), 4, 6);
}

TEST(Odot, Examples) {
    expect_canonical(odot(2, {1, 3, 1}), 2, 6);
    expect_canonical(odot(0, {5, 7, 1}), 0, 0);
    const ProjectivePoint p(-4, 6, 2);
    EXPECT_TRUE(equiv(odot(1, p), p));
}

TEST(Ominus, Examples) {
    expect_canonical(ominus({4, 6, 1}, {3, 4, 1}), 1, 2);
    const ProjectivePoint p(3, -5, -7);
    expect_canonical(ominus(p, p), 0, 0);
    expect_canonical(ominus({0, 0, 1}, {1, 1, 1}), -1, -1);
}

TEST(Hadamard, Examples) {
    expect_canonical(hadamard({2, 3, 1}, {4, 5, 1}), 8, 15);
    const ProjectivePoint p(3, -9, 4);
    EXPECT_TRUE(equiv(hadamard(p, {1, 1, 1}), p));
    expect_canonical(hadamard({2, 3, 2}, {1, 1, 1}), 1, 1.5);
}

TEST(Decompose, Examples) {
    auto [h, v] = decompose({3, 4, 1});
    EXPECT_TRUE(equiv(h, AxisPoint10(3, 1)));
    EXPECT_TRUE(equiv(v, AxisPoint01(4, 1)));
    std::tie(h, v) = decompose({0, 0, 1});
    EXPECT_EQ(h.u(), 0.0);
    EXPECT_EQ(v.v(), 0.0);
    std::tie(h, v) = decompose({2, 6, 2});
    EXPECT_TRUE(equiv(h, AxisPoint10(1, 1)));
    EXPECT_TRUE(equiv(v, AxisPoint01(3, 1)));
}

TEST(Decompose, ComposeRoundTrip) {
    SplitMix64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_point(rng, -50, 50, -50, 50);
        const auto [h, v] = decompose(p);
        EXPECT_TRUE(close(compose(h, v), p));
    }
}

TEST(Norm, Examples) {
    EXPECT_NEAR(norm_p({3, 4, 1}), 5, kTol);
    EXPECT_EQ(norm_p({0, 0, -2.5}), 0);
    EXPECT_NEAR(norm_p({6, 8, 2}), 5, kTol);
    EXPECT_NEAR(norm_p({6, 8, -2}), 5, kTol);
}

TEST(DistP, Examples) {
    EXPECT_NEAR(dist_p(ProjectivePoint(1, 0, 1), ProjectivePoint(0, 0, 1)), 1, kTol);
    const ProjectivePoint p(3, 1, -2);
    EXPECT_EQ(dist_p(p, p), 0);
    EXPECT_NEAR(dist_p(ProjectivePoint(2, 0, 2), ProjectivePoint(0, 0, 1)), 1, kTol);
}

TEST(DistTheta, Examples) {
    EXPECT_NEAR(dist_theta({1, 1, 1}, {0, 0, 1}, 1.0), 2, kTol);
    EXPECT_NEAR(dist_theta({1, 0, 1}, {0, 0, 1}, 0.5), 1, kTol);
    for (double theta : {0.1, 3.0}) EXPECT_EQ(dist_theta({4, 2, 2}, {4, 2, 2}, theta), 0);
    EXPECT_THROW(dist_theta({1, 1, 1}, {0, 0, 1}, 0.0), ValidationError);
}

TEST(DistRound, Examples) {
    const ProjectivePoint p(1, 2, 3);
    EXPECT_NEAR(dist_round(p, p), 0, kTol);
    EXPECT_NEAR(dist_round(ProjectivePoint(1, 0, 1), ProjectivePoint(-1, 0, -1)), 0, kTol);
    EXPECT_NEAR(dist_round(ProjectivePoint(1, 0, 1), ProjectivePoint(0, 0, 1)), std::sqrt(2 - std::sqrt(2.0)), kTol);
    // Defined on all of RP^2, including the removed hyperplane.
    EXPECT_NEAR(dist_round(Triple{1, 0, 0}, Triple{-2, 0, 0}), 0, kTol);
}

TEST(DistRound, IsAMetricOnRays) {
    SplitMix64 rng(5);
    for (int i = 0; i < 2000; ++i) {
        const auto p = random_point(rng, -5, 5, -5, 5);
        const auto q = random_point(rng, -5, 5, -5, 5);
        const auto r = random_point(rng, -5, 5, -5, 5);
        const double pq = dist_round(p, q);
        EXPECT_NEAR(pq, dist_round(q, p), kTol);
        EXPECT_LE(pq, dist_round(p, r) + dist_round(r, q) + kTol);
        EXPECT_LE(pq, std::sqrt(2.0) + kTol);
        const double s = uniform(rng, -10, 10);
        if (s != 0) {
            EXPECT_NEAR(dist_round(p, {s * p.x(), s * p.y(), s * p.z()}), 0, 1e-7);
        }
    }
}

TEST(Order, Examples) {
    EXPECT_EQ(compare_h10({1, 1}, {2, 1}), std::weak_ordering::less);
    EXPECT_EQ(compare_h10({1, 1}, {2, 2}), std::weak_ordering::equivalent);
    EXPECT_EQ(compare_h10({1, -1}, {0, 1}), std::weak_ordering::less);
    EXPECT_EQ(compare_h10({-4, -2}, {1, 1}), std::weak_ordering::greater);
    EXPECT_EQ(compare_h01({3, -1}, {-2, 1}), std::weak_ordering::less);
    EXPECT_EQ(compare_h01({5, 5}, {1, 1}), std::weak_ordering::equivalent);
}

TEST(Order, AgreesWithCanonicalOrder) {
    SplitMix64 rng(8);
    for (int i = 0; i < 5000; ++i) {
        const double l1 = random_scale(rng);
        const double l2 = random_scale(rng);
        const double u1 = uniform(rng, -3, 3);
        const double u2 = uniform(rng, -3, 3);
        const auto got = compare_h10({l1 * u1, l1}, {l2 * u2, l2});
        EXPECT_EQ(got, u1 < u2 ? std::weak_ordering::less : std::weak_ordering::greater);
    }
}

TEST(Orthogonal, Examples) {
    EXPECT_TRUE(is_orthogonal({1, 2, 0}, {0, 0, 1}));
    EXPECT_FALSE(is_orthogonal({1, 2, 1}, {0, 0, 1}));
    EXPECT_TRUE(is_orthogonal({1, -1, 0}, {1, 1, 5}));
}

TEST(VectorSpace, AxiomsHoldOnRandomTriples) {
    SplitMix64 rng(2024);
    const ProjectivePoint zero = ProjectivePoint::zero();
    for (int i = 0; i < 10'000; ++i) {
        const auto p = random_point(rng, -10, 10, -10, 10);
        const auto q = random_point(rng, -10, 10, -10, 10);
        const auto r = random_point(rng, -10, 10, -10, 10);
        const double a = uniform(rng, -5, 5);
        const double b = uniform(rng, -5, 5);
        ASSERT_TRUE(close(oplus(oplus(p, q), r), oplus(p, oplus(q, r))));
        ASSERT_TRUE(close(oplus(p, q), oplus(q, p)));
        ASSERT_TRUE(close(oplus(p, zero), p));
        ASSERT_TRUE(close(oplus(p, negate(p)), zero));
        ASSERT_TRUE(close(odot(a, oplus(p, q)), oplus(odot(a, p), odot(a, q))));
        ASSERT_TRUE(close(odot(a + b, p), oplus(odot(a, p), odot(b, p))));
        ASSERT_TRUE(close(odot(a * b, p), odot(a, odot(b, p))));
        ASSERT_TRUE(close(odot(1.0, p), p));
    }
}

TEST(Metric, DistPAxioms) {
    SplitMix64 rng(99);
    for (int i = 0; i < 10'000; ++i) {
        const auto p = random_point(rng, -10, 10, -10, 10);
        const auto q = random_point(rng, -10, 10, -10, 10);
        const auto r = random_point(rng, -10, 10, -10, 10);
        const double pq = dist_p(p, q);
        ASSERT_GE(pq, 0);
        ASSERT_NEAR(dist_p(p, p), 0, kTol);
        ASSERT_NEAR(pq, dist_p(q, p), kTol);
        ASSERT_LE(pq, dist_p(p, r) + dist_p(r, q) + 1e-12);
        ASSERT_NEAR(pq, norm_p(ominus(p, q)), 1e-11);
    }
}

TEST(Metric, ThetaSandwich) {
    SplitMix64 rng(7);
    for (double theta : {0.1, 0.5, 1.0, 2.0}) {
        const double lo = std::min(1.0, theta);
        const double hi = std::sqrt(2.0) * std::max(1.0, theta);
        for (int i = 0; i < 10'000; ++i) {
            const auto p = random_point(rng, -10, 10, -10, 10);
            const auto q = random_point(rng, -10, 10, -10, 10);
            const double dp = dist_p(p, q);
            const double dt = dist_theta(p, q, theta);
            ASSERT_LE(lo * dp, dt + kTol);
            ASSERT_LE(dt, hi * dp + kTol);
        }
    }
}

TEST(Metric, CauchySequenceConvergesToItsCanonicalLimit) {
    // p_k = (1 + 2^-k : 2 - 2^-k : 1) with a wandering representative.
    const ProjectivePoint limit(1, 2, 1);
    double prev = INFINITY;
    for (int k = 1; k < 40; ++k) {
        const double e = std::ldexp(1.0, -k);
        const double lambda = (k % 2 ? -1.0 : 1.0) * (1 + k);
        const ProjectivePoint p(lambda * (1 + e), lambda * (2 - e), lambda);
        const double d = dist_p(p, limit);
        EXPECT_LT(d, prev);
        prev = d;
    }
    EXPECT_LT(prev, 1e-11);
}

TEST(Invariance, CoreOpsIgnoreRepresentative) {
    SplitMix64 rng(31337);
    for (int i = 0; i < 10'000; ++i) {
        const auto p = random_point(rng, -10, 10, -10, 10);
        const auto q = random_point(rng, -10, 10, -10, 10);
        double lambda = 0;
        while (lambda == 0) lambda = uniform(rng, -1e3, 1e3);
        const ProjectivePoint ps(lambda * p.x(), lambda * p.y(), lambda * p.z());
        ASSERT_TRUE(close(canonicalize(ps), canonicalize(p)));
        ASSERT_TRUE(close(oplus(ps, q), oplus(p, q)));
        ASSERT_TRUE(close(ominus(q, ps), ominus(q, p)));
        ASSERT_TRUE(close(odot(2.5, ps), odot(2.5, p)));
        ASSERT_TRUE(close(hadamard(ps, q), hadamard(p, q)));
        ASSERT_NEAR(norm_p(ps), norm_p(p), 1e-12 * std::max(1.0, norm_p(p)));
        ASSERT_NEAR(dist_p(ps, q), dist_p(p, q), 1e-12 * std::max(1.0, dist_p(p, q)));
        ASSERT_NEAR(dist_theta(ps, q, 0.5), dist_theta(p, q, 0.5), 1e-12 * std::max(1.0, dist_theta(p, q, 0.5)));
    }
}
