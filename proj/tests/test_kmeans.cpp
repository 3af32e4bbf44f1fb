#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "speccl/errors.hpp"
#include "speccl/kmeans.hpp"
#include "test_support.hpp"

using namespace speccl;
using testsupport::make_matrix;

TEST_CASE("k = n puts every point in its own cluster with zero inertia") {
    SplitMix64 rng(1);
    const Matrix points = testsupport::random_points(6, 2, rng);
    KMeansParams params;
    params.k = 6;
    params.seed = 3;
    params.restarts = 5;
    const ClusteringResult result = kmeans(points, params);
    CHECK(result.inertia == doctest::Approx(0.0).scale(1.0));
    std::set<int> distinct(result.labels.begin(), result.labels.end());
    CHECK(distinct.size() == 6);
}

TEST_CASE("two tight pairs on a line split as expected") {
    const Matrix points = make_matrix(4, 1, {0.0, 0.1, 10.0, 10.1});
    KMeansParams params;
    params.k = 2;
    params.seed = 9;
    params.restarts = 10;
    const ClusteringResult result = kmeans(points, params);

    CHECK(result.labels[0] == result.labels[1]);
    CHECK(result.labels[2] == result.labels[3]);
    CHECK(result.labels[0] != result.labels[2]);
    CHECK(result.inertia == doctest::Approx(0.01).epsilon(1e-9));

    std::vector<double> centroids = {result.centroids(0, 0), result.centroids(1, 0)};
    std::sort(centroids.begin(), centroids.end());
    CHECK(centroids[0] == doctest::Approx(0.05));
    CHECK(centroids[1] == doctest::Approx(10.05));
}

TEST_CASE("k = 1 returns the mean and total variance") {
    SplitMix64 rng(5);
    const Matrix points = testsupport::random_points(9, 3, rng);
    KMeansParams params;
    params.k = 1;
    params.seed = 1;
    const ClusteringResult result = kmeans(points, params);

    for (std::size_t j = 0; j < 3; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < 9; ++i) mean += points(i, j);
        mean /= 9.0;
        CHECK(result.centroids(0, j) == doctest::Approx(mean).epsilon(1e-12));
    }
    double expected = 0.0;
    for (std::size_t i = 0; i < 9; ++i) {
        expected += squared_row_distance(points, i, result.centroids, 0);
    }
    CHECK(result.inertia == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("result invariants: centroids are means, inertia is consistent") {
    SplitMix64 rng(6);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 5 + rng.next_index(20);
        const std::size_t k = 1 + rng.next_index(std::min<std::size_t>(n, 6));
        const Matrix points = testsupport::random_points(n, 2, rng);
        KMeansParams params;
        params.k = k;
        params.seed = rng.next();
        params.restarts = 4;
        const ClusteringResult result = kmeans(points, params);

        std::vector<std::size_t> sizes(k, 0);
        Matrix means(k, 2);
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = static_cast<std::size_t>(result.labels[i]);
            CHECK(c < k);
            ++sizes[c];
            for (std::size_t j = 0; j < 2; ++j) means(c, j) += points(i, j);
            inertia += squared_row_distance(points, i, result.centroids, c);
        }
        for (std::size_t c = 0; c < k; ++c) {
            CHECK(sizes[c] > 0);  // no empty clusters
            for (std::size_t j = 0; j < 2; ++j) {
                CHECK(result.centroids(c, j) ==
                      doctest::Approx(means(c, j) / static_cast<double>(sizes[c])).epsilon(1e-9));
            }
        }
        CHECK(result.inertia == doctest::Approx(inertia).epsilon(1e-9));
    }
}

TEST_CASE("identical inputs produce identical results") {
    SplitMix64 rng(7);
    const Matrix points = testsupport::random_points(15, 2, rng);
    KMeansParams params;
    params.k = 4;
    params.seed = 1234;
    params.restarts = 8;
    const ClusteringResult a = kmeans(points, params);
    const ClusteringResult b = kmeans(points, params);
    CHECK(a.labels == b.labels);
    CHECK(a.inertia == b.inertia);
    CHECK(a.centroids == b.centroids);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("kmeanspp: single draw and exhaustive draw") {
    SplitMix64 rng1(99);
    const Matrix points = make_matrix(4, 1, {0.0, 1.0, 2.0, 3.0});
    const std::vector<std::size_t> one = kmeanspp_indices(points, 1, rng1);
    CHECK(one.size() == 1);
    CHECK(one[0] < 4);

    SplitMix64 rng2(100);
    const std::vector<std::size_t> all = kmeanspp_indices(points, 4, rng2);
    std::set<std::size_t> distinct(all.begin(), all.end());
    CHECK(distinct.size() == 4);  // D^2 weights vanish on already-chosen rows
}

TEST_CASE("kmeanspp: pinned index sequence for seed 42 on the 10x2 fixture") {
    // fixture rows: (i, i*i mod 7) for i = 0..9
    Matrix points(10, 2);
    for (std::size_t i = 0; i < 10; ++i) {
        points(i, 0) = static_cast<double>(i);
        points(i, 1) = static_cast<double>((i * i) % 7);
    }
    SplitMix64 rng(42);
    const std::vector<std::size_t> chosen = kmeanspp_indices(points, 4, rng);
    // golden sequence recorded once from this RNG and pinned
    CHECK(chosen == std::vector<std::size_t>{3, 2, 6, 1});
}

TEST_CASE("oracle: never below the exhaustive 2-partition optimum") {
    SplitMix64 rng(11);
    int exact = 0;
    const int rounds = 100;
    for (int round = 0; round < rounds; ++round) {
        const std::size_t n = 4 + rng.next_index(5);  // 4..8
        const Matrix points = testsupport::random_points(n, 2, rng);
        KMeansParams params;
        params.k = 2;
        params.seed = rng.next();
        params.restarts = 50;
        const ClusteringResult result = kmeans(points, params);
        const double optimum = testsupport::best_two_partition_inertia(points);
        CHECK(result.inertia >= optimum - 1e-9);
        if (result.inertia <= optimum + 1e-9) ++exact;
    }
    CHECK(exact >= 95);
}

TEST_CASE("permuted input reaches the same optimal inertia") {
    SplitMix64 rng(13);
    const std::size_t n = 7;
    const Matrix points = testsupport::random_points(n, 2, rng);
    Matrix permuted(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < 2; ++j) permuted(i, j) = points((i + 3) % n, j);
    }
    KMeansParams params;
    params.k = 2;
    params.seed = 77;
    params.restarts = 60;
    const double a = kmeans(points, params).inertia;
    const double b = kmeans(permuted, params).inertia;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
    const Matrix points = make_matrix(3, 1, {0.0, 1.0, 2.0});
    KMeansParams params;
    params.k = 0;
    CHECK_THROWS_AS(kmeans(points, params), KOutOfRangeError);
    params.k = 4;
    CHECK_THROWS_AS(kmeans(points, params), KOutOfRangeError);
    params.k = 2;
    params.restarts = 0;
    CHECK_THROWS_AS(kmeans(points, params), KOutOfRangeError);
    params.restarts = 1;
    params.tol = -1.0;
    CHECK_THROWS_AS(kmeans(points, params), InvalidToleranceError);
}
