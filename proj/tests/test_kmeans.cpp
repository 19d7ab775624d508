#include <doctest.h>

#include "loadclust/kmeans.hpp"
#include "oracles.hpp"

using namespace loadclust;

TEST_CASE("two well-separated pairs are recovered") {
    Matrix data{{0, 0}, {0, 1}, {10, 0}, {10, 1}};
    KmeansConfig cfg{2, 300, 10, 1};
    KmeansResult r = kmeans(data, cfg);
    CHECK(r.partition.assignment[0] == r.partition.assignment[1]);
    CHECK(r.partition.assignment[2] == r.partition.assignment[3]);
    CHECK(r.partition.assignment[0] != r.partition.assignment[2]);
    // centroids are (0, 0.5) and (10, 0.5) in some order
    for (const Vec& c : r.partition.centroids) CHECK(c[1] == doctest::Approx(0.5));
    std::vector<double> xs{r.partition.centroids[0][0], r.partition.centroids[1][0]};
    std::sort(xs.begin(), xs.end());
    CHECK(xs[0] == doctest::Approx(0.0));
    CHECK(xs[1] == doctest::Approx(10.0));
}

TEST_CASE("k equal to n gives singletons with zero sse") {
    Matrix data{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    KmeansConfig cfg{4, 300, 5, 3};
    KmeansResult r = kmeans(data, cfg);
    CHECK(r.objective == doctest::Approx(0.0));
    auto sizes = r.partition.sizes();
    for (std::size_t s : sizes) CHECK(s == 1);
}

TEST_CASE("k equal to 1 gives the data mean") {
    Matrix data{{0, 0}, {2, 0}, {4, 6}};
    KmeansConfig cfg{1, 300, 3, 0};
    KmeansResult r = kmeans(data, cfg);
    CHECK(r.partition.centroids[0][0] == doctest::Approx(2.0));
    CHECK(r.partition.centroids[0][1] == doctest::Approx(2.0));
}

TEST_CASE("argument validation") {
    Matrix data{{0, 0}, {1, 1}};
    CHECK_THROWS_AS(kmeans(data, KmeansConfig{0, 300, 10, 0}), input_error);
    CHECK_THROWS_AS(kmeans(data, KmeansConfig{3, 300, 10, 0}), input_error);
    CHECK_THROWS_AS(kmeans(data, KmeansConfig{1, 0, 10, 0}), config_error);
    CHECK_THROWS_AS(kmeans(data, KmeansConfig{1, 300, 0, 0}), config_error);
}

TEST_CASE("objective is non-increasing within every restart") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto data = oracles::random_matrix(40, 6, seed);
        KmeansResult r = kmeans(data, KmeansConfig{5, 300, 10, seed});
        REQUIRE(r.objective_trace.size() == 10);
        for (const auto& trace : r.objective_trace)
            for (std::size_t i = 1; i < trace.size(); ++i)
                CHECK(trace[i] <= trace[i - 1] + 1e-12);
    }
}

TEST_CASE("best-of-restarts reaches the brute-force optimum on toy instances") {
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        // two gaussian blobs of 5 points each
        Rng rng(seed * 31 + 7);
        Matrix data;
        for (int b = 0; b < 2; ++b)
            for (int i = 0; i < 5; ++i)
                data.push_back({b * 3.0 + 0.5 * rng.gauss(), 0.5 * rng.gauss()});
        KmeansResult r = kmeans(data, KmeansConfig{2, 300, 10, seed});
        double optimum = oracles::brute_force_sse2(data);
        if (r.objective <= optimum + 1e-9) ++hits;
    }
    CHECK(hits >= 9);
}

TEST_CASE("determinism for identical inputs") {
    auto data = oracles::random_matrix(30, 5, 4);
    KmeansConfig cfg{4, 300, 10, 99};
    KmeansResult a = kmeans(data, cfg);
    KmeansResult b = kmeans(data, cfg);
    CHECK(a.partition.assignment == b.partition.assignment);
    CHECK(a.partition.centroids == b.partition.centroids);
    CHECK(a.objective == b.objective);
}

TEST_CASE("spherical kmeans splits by direction") {
    Matrix data{{1, 0}, {2, 0}, {0, 1}, {0, 3}};
    KmeansConfig cfg{2, 300, 10, 2};
    KmeansResult r = spherical_kmeans(data, cfg);
    CHECK(r.partition.assignment[0] == r.partition.assignment[1]);
    CHECK(r.partition.assignment[2] == r.partition.assignment[3]);
    CHECK(r.partition.assignment[0] != r.partition.assignment[2]);
    CHECK(r.objective == doctest::Approx(oracles::brute_force_cosine2(data)).epsilon(1e-9));
    // centroids are unit length and axis-aligned
    for (const Vec& c : r.partition.centroids) {
        double nn = c[0] * c[0] + c[1] * c[1];
        CHECK(nn == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("spherical kmeans on parallel data has zero objective") {
    Matrix data{{1, 1}, {2, 2}, {0.5, 0.5}};
    KmeansResult r = spherical_kmeans(data, KmeansConfig{1, 300, 3, 0});
    CHECK(r.objective == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("spherical kmeans is scale invariant") {
    auto data = oracles::random_matrix(25, 4, 8, 0.1, 1.0);
    Matrix scaled = data;
    for (Vec& v : scaled)
        for (double& x : v) x *= 37.5;
    KmeansConfig cfg{3, 300, 10, 5};
    CHECK(spherical_kmeans(data, cfg).partition.assignment ==
          spherical_kmeans(scaled, cfg).partition.assignment);
}

TEST_CASE("spherical kmeans rejects zero vectors") {
    Matrix data{{1, 0}, {0, 0}};
    CHECK_THROWS_AS(spherical_kmeans(data, KmeansConfig{1, 300, 1, 0}), std::domain_error);
}

TEST_CASE("partition invariants hold on random data") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto data = oracles::random_matrix(50, 8, seed);
        for (std::size_t k : {2ul, 7ul, 20ul}) {
            KmeansResult r = kmeans(data, KmeansConfig{k, 300, 5, seed});
            CHECK(r.partition.n == 50);
            CHECK(r.partition.k == k);
            auto sizes = r.partition.sizes();
            for (std::size_t s : sizes) CHECK(s >= 1);
            CHECK(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) == 50);
        }
    }
}
