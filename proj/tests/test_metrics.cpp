#include <doctest.h>

#include "lidartwin/metrics.hpp"
#include "test_support.hpp"

using namespace lidartwin;
using namespace lidartwin::test;

namespace {

PointCloud cloud_of(std::vector<Vec3> pts) {
    PointCloud c;
    c.points = std::move(pts);
    return c;
}

}  // namespace

TEST_CASE("identical clouds have zero P95 Hausdorff") {
    TestRng rng(1);
    const PointCloud a = cloud_of(random_cloud(rng, 200));
    CHECK(hausdorff_p95(a, a) == 0.0);
}

TEST_CASE("single-point pair is the classic 3-4-5") {
    const PointCloud a = cloud_of({{0, 0, 0}});
    const PointCloud b = cloud_of({{3, 4, 0}});
    CHECK(hausdorff_p95(a, b) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("empty clouds are rejected") {
    const PointCloud empty;
    const PointCloud one = cloud_of({{1, 1, 1}});
    CHECK_THROWS_AS(hausdorff_p95(empty, one), Error);
    CHECK_THROWS_AS(js_divergence(one, empty, 0.5), Error);
}

TEST_CASE("accelerated P95 equals the brute-force double loop on random clouds") {
    TestRng rng(77);
    for (int i = 0; i < 25; ++i) {
        const std::size_t na = 1 + rng() % 500;
        const std::size_t nb = 1 + rng() % 500;
        const std::vector<Vec3> a = random_cloud(rng, na);
        const std::vector<Vec3> b = random_cloud(rng, nb);
        const double fast = hausdorff_p95(cloud_of(a), cloud_of(b));
        const double slow = brute_force_hausdorff_p95(a, b);
        CHECK(std::abs(fast - slow) <= 1e-9);
    }
}

TEST_CASE("hausdorff is symmetric exactly") {
    TestRng rng(78);
    const PointCloud a = cloud_of(random_cloud(rng, 321));
    const PointCloud b = cloud_of(random_cloud(rng, 123));
    CHECK(hausdorff_p95(a, b) == hausdorff_p95(b, a));
}

TEST_CASE("jsd of identical clouds is exactly zero") {
    TestRng rng(2);
    const PointCloud a = cloud_of(random_cloud(rng, 400));
    CHECK(js_divergence(a, a, 0.5) == 0.0);
}

TEST_CASE("jsd of disjoint supports reaches the base-2 bound") {
    TestRng rng(3);
    const PointCloud a = cloud_of(random_cloud(rng, 200, -10.0, -1.0));
    const PointCloud b = cloud_of(random_cloud(rng, 200, 50.0, 60.0));
    CHECK(js_divergence(a, b, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-cell textbook case evaluates to 0.31128") {
    // P = (1, 0), Q = (0.5, 0.5) on a unit voxel grid
    const PointCloud a = cloud_of({{0.25, 0.25, 0.25}});
    const PointCloud b = cloud_of({{0.75, 0.25, 0.25}, {1.5, 0.25, 0.25}});
    CHECK(std::abs(js_divergence(a, b, 1.0) - 0.31128) < 1e-5);
}

TEST_CASE("jsd matches an independent direct evaluation") {
    TestRng rng(4);
    for (int i = 0; i < 20; ++i) {
        const std::vector<Vec3> a = random_cloud(rng, 100 + rng() % 300);
        const std::vector<Vec3> b = random_cloud(rng, 100 + rng() % 300);
        const double mine = js_divergence(cloud_of(a), cloud_of(b), 0.7);
        const double reference = reference_jsd(a, b, 0.7);
        CHECK(std::abs(mine - reference) < 1e-12);
    }
}

TEST_CASE("jsd is symmetric exactly and bounded") {
    TestRng rng(5);
    const PointCloud a = cloud_of(random_cloud(rng, 257));
    const PointCloud b = cloud_of(random_cloud(rng, 258));
    const double ab = js_divergence(a, b, 0.5);
    const double ba = js_divergence(b, a, 0.5);
    CHECK(ab == ba);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
}

TEST_CASE("jsd is invariant under shared integer-voxel translations") {
    TestRng rng(6);
    const std::vector<Vec3> a = random_cloud(rng, 300);
    const std::vector<Vec3> b = random_cloud(rng, 280);
    const double voxel = 0.5;
    const double base = js_divergence(cloud_of(a), cloud_of(b), voxel);

    for (const Vec3 shift : {Vec3{voxel, 0, 0}, Vec3{3 * voxel, -2 * voxel, 5 * voxel},
                             Vec3{-7 * voxel, voxel, -voxel}}) {
        std::vector<Vec3> a2 = a, b2 = b;
        for (Vec3& p : a2) p += shift;
        for (Vec3& p : b2) p += shift;
        CHECK(js_divergence(cloud_of(a2), cloud_of(b2), voxel) == base);
    }
}

TEST_CASE("p2m mean: points on faces give zero, constant offset gives the offset") {
    const TriangleMesh ground = plane_mesh(50.0);
    const Bvh bvh = build_bvh(ground);

    PointCloud on;
    TestRng rng(8);
    std::uniform_real_distribution<double> d(-40.0, 40.0);
    for (int i = 0; i < 200; ++i) on.points.push_back({d(rng), d(rng), 0.0});
    CHECK(p2m_mean(on, bvh, ground) <= 1e-9);

    PointCloud above = on;
    for (Vec3& p : above.points) p.z = 0.795;
    CHECK(p2m_mean(above, bvh, ground) == doctest::Approx(0.795).epsilon(1e-12));
}

TEST_CASE("p2m equals the brute-force mean exactly") {
    TestRng rng(9);
    for (int i = 0; i < 10; ++i) {
        const TriangleMesh mesh = random_mesh(rng, 50 + rng() % 250);
        const Bvh bvh = build_bvh(mesh);
        const std::vector<Vec3> pts = random_cloud(rng, 1 + rng() % 500, -12, 12);

        std::vector<double> dist;
        const double fast = p2m_mean(cloud_of(pts), bvh, mesh, &dist);
        double slow = 0.0;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const double d = brute_force_point_to_mesh(pts[k], mesh);
            CHECK(dist[k] == d);
            slow += d;
        }
        slow /= static_cast<double>(pts.size());
        CHECK(fast == slow);
    }
}

TEST_CASE("rigid motion of both clouds leaves hausdorff and p2m unchanged") {
    TestRng rng(10);
    const std::vector<Vec3> a = random_cloud(rng, 300);
    const std::vector<Vec3> b = random_cloud(rng, 250);
    const TriangleMesh mesh = random_mesh(rng, 150);
    const Bvh bvh = build_bvh(mesh);

    const Mat3 rot = rotation_from_ypr_deg(33.0, 12.0, -7.0);
    const Vec3 shift{42.0, -17.0, 9.0};
    std::vector<Vec3> a2 = a, b2 = b;
    for (Vec3& p : a2) p = rot * p + shift;
    for (Vec3& p : b2) p = rot * p + shift;
    TriangleMesh mesh2 = mesh;
    for (Vec3& v : mesh2.vertices) v = rot * v + shift;
    const Bvh bvh2 = build_bvh(mesh2);

    const double h0 = hausdorff_p95(cloud_of(a), cloud_of(b));
    const double h1 = hausdorff_p95(cloud_of(a2), cloud_of(b2));
    CHECK(std::abs(h0 - h1) <= 1e-9 * (1.0 + h0));

    const double p0 = p2m_mean(cloud_of(a), bvh, mesh);
    const double p1 = p2m_mean(cloud_of(a2), bvh2, mesh2);
    CHECK(std::abs(p0 - p1) <= 1e-9 * (1.0 + p0));
}

TEST_CASE("growing gaussian perturbation increases P95 and p2m (sign test over seeds)") {
    TestRng rng(12);
    const std::vector<Vec3> base = random_cloud(rng, 400);
    const TriangleMesh mesh = random_mesh(rng, 200);
    const Bvh bvh = build_bvh(mesh);

    int h_wins = 0;
    int p_wins = 0;
    const int kSeeds = 20;
    for (int s = 0; s < kSeeds; ++s) {
        TestRng noise_rng(1000 + s);
        std::normal_distribution<double> small(0.0, 0.02);
        std::normal_distribution<double> large(0.0, 0.5);
        std::vector<Vec3> a_small = base, a_large = base;
        for (Vec3& p : a_small)
            p += Vec3{small(noise_rng), small(noise_rng), small(noise_rng)};
        for (Vec3& p : a_large)
            p += Vec3{large(noise_rng), large(noise_rng), large(noise_rng)};

        if (hausdorff_p95(cloud_of(a_large), cloud_of(base)) >
            hausdorff_p95(cloud_of(a_small), cloud_of(base)))
            ++h_wins;
        if (p2m_mean(cloud_of(a_large), bvh, mesh) > p2m_mean(cloud_of(a_small), bvh, mesh))
            ++p_wins;
    }
    // one-sided binomial: P(>=15 of 20 | p=1/2) ~ 2%, so 15 clears 95% confidence
    CHECK(h_wins >= 15);
    CHECK(p_wins >= 15);
}

TEST_CASE("nearest-rank percentile conventions") {
    CHECK(percentile_nearest_rank({3.0, 1.0, 2.0}, 0.95) == 3.0);
    CHECK(percentile_nearest_rank({1.0, 2.0}, 0.95) == 2.0);
    CHECK(percentile_nearest_rank({5.0}, 0.95) == 5.0);
    std::vector<double> twenty;
    for (int i = 1; i <= 20; ++i) twenty.push_back(i);
    CHECK(percentile_nearest_rank(twenty, 0.95) == 19.0);  // ceil(0.95*20) = 19
}
