#include <doctest.h>

#include "loadclust/som.hpp"
#include "loadclust/validity.hpp"
#include "oracles.hpp"

using namespace loadclust;

namespace {

/// Four tight blobs far apart in 6 dimensions, 15 points each.
Matrix four_blobs(std::uint64_t seed, std::vector<int>* labels = nullptr) {
    Rng rng(seed);
    Matrix data;
    for (int b = 0; b < 4; ++b) {
        Vec center(6, 0.0);
        center[std::size_t(b)] = 10.0;
        for (int i = 0; i < 15; ++i) {
            Vec x = center;
            for (double& v : x) v += 0.1 * rng.gauss();
            data.push_back(std::move(x));
            if (labels) labels->push_back(b);
        }
    }
    return data;
}

}  // namespace

TEST_CASE("hexagonal lattice geometry") {
    SomGrid grid{10, 10};
    // interior unit (3, 4): unit index 34, odd row → offset
    int interior = 3 * 10 + 4;
    int neighbors = 0;
    for (int u = 0; u < grid.units(); ++u) {
        if (u == interior) continue;
        if (grid.lattice_distance(interior, u) < 1.0001) ++neighbors;
    }
    CHECK(neighbors == 6);
    // horizontal neighbors sit at exactly distance 1
    CHECK(grid.lattice_distance(0, 1) == doctest::Approx(1.0));
    // vertical pitch is sqrt(3)/2 with the half-column offset → distance 1
    CHECK(grid.lattice_distance(0, 10) == doctest::Approx(1.0));
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS((SomGrid{1, 1}).validate(), config_error);
    CHECK_THROWS_AS((SomGrid{0, 5}).validate(), config_error);
    CHECK_NOTHROW((SomGrid{1, 2}).validate());
}

TEST_CASE("bmu finds the nearest weight with low-index ties") {
    SomModel model;
    model.grid = {2, 2};
    model.weights = {{0, 0}, {1, 0}, {0, 1}, {5, 5}};
    CHECK(bmu(model, Vec{1, 0}) == 1);
    CHECK(bmu(model, Vec{4.9, 5.1}) == 3);
    // (0.5, 0.5) ties three ways between units 0, 1, 2 → lowest index
    CHECK(bmu(model, Vec{0.5, 0.5}) == 0);
    // (0.75, 0.75) ties only units 1 and 2 → unit 1 wins
    CHECK(bmu(model, Vec{0.75, 0.75}) == 1);
    // random probes match a direct scan
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto probe = oracles::random_matrix(1, 2, seed, -1.0, 6.0);
        int best = 0;
        double best_d = 1e300;
        for (std::size_t u = 0; u < model.weights.size(); ++u) {
            double d = oracles::odist(Metric::euclidean(), probe[0], model.weights[u]);
            if (d < best_d) {
                best_d = d;
                best = int(u);
            }
        }
        CHECK(bmu(model, probe[0]) == best);
    }
}

TEST_CASE("quantization and topographic error definitions") {
    SomModel model;
    model.grid = {2, 2};
    model.weights = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    Matrix data = model.weights;  // weights equal data
    CHECK(quantization_error(model, data) == doctest::Approx(0.0));
    CHECK(topographic_error(model, data) >= 0.0);
    CHECK_THROWS_AS(quantization_error(model, Matrix{}), std::domain_error);
    SomModel tiny;
    tiny.grid = {1, 1};
    tiny.weights = {{0, 0}};
    CHECK_THROWS_AS(topographic_error(tiny, data), std::domain_error);
}

TEST_CASE("training contracts toward a single repeated point") {
    Matrix data(20, Vec{0.3, 0.7, 0.1});
    SomModel model = train_som(data, SomGrid{3, 3}, TrainSchedule{}, 5);
    CHECK(quantization_error(model, data) < 1e-3);
}

TEST_CASE("a 1x2 grid separates two far points") {
    Matrix data{{0, 0}, {10, 10}};
    // on a 2-unit grid the units are permanent lattice neighbors, so
    // separation needs a long fine-tune phase with a tight radius
    TrainSchedule schedule;
    schedule.rough_epochs = 50;
    schedule.finetune_epochs = 400;
    schedule.finetune_radius_end = 0.2;
    SomModel model = train_som(data, SomGrid{1, 2}, schedule, 3);
    int b0 = bmu(model, data[0]);
    int b1 = bmu(model, data[1]);
    CHECK(b0 != b1);
    CHECK(quantization_error(model, data) < 1.0);
}

TEST_CASE("training is deterministic per seed") {
    auto data = oracles::random_matrix(40, 5, 2);
    SomModel a = train_som(data, SomGrid{4, 4}, TrainSchedule{}, 11);
    SomModel b = train_som(data, SomGrid{4, 4}, TrainSchedule{}, 11);
    CHECK(a.weights == b.weights);
    SomModel c = train_som(data, SomGrid{4, 4}, TrainSchedule{}, 12);
    CHECK(a.weights != c.weights);
}

TEST_CASE("rough-phase quantization error mostly decreases on blob data") {
    Matrix data = four_blobs(7);
    TrainSchedule schedule;
    SomModel model = train_som(data, SomGrid{6, 6}, schedule, 7);
    REQUIRE(int(model.meta.qe_per_epoch.size()) == schedule.rough_epochs + schedule.finetune_epochs);
    int non_increasing = 0;
    for (int e = 1; e < schedule.rough_epochs; ++e)
        if (model.meta.qe_per_epoch[std::size_t(e)] <=
            model.meta.qe_per_epoch[std::size_t(e - 1)] + 1e-12)
            ++non_increasing;
    CHECK(double(non_increasing) >= 0.8 * double(schedule.rough_epochs - 1));
}

TEST_CASE("som_kmeans recovers four blobs") {
    std::vector<int> labels;
    Matrix data = four_blobs(3, &labels);
    SomKmeansResult r = som_kmeans(data, SomGrid{10, 10}, 4, 3, TrainSchedule{}, KmeansConfig{});
    CHECK(r.effective_k == 4);
    CHECK(ground_truth_agreement(r.partition, labels) == doctest::Approx(1.0));
}

TEST_CASE("som_kmeans with k 1 puts everything together") {
    auto data = oracles::random_matrix(20, 4, 9);
    SomKmeansResult r = som_kmeans(data, SomGrid{3, 3}, 1, 9, TrainSchedule{}, KmeansConfig{});
    CHECK(r.partition.k == 1);
    CHECK(r.partition.sizes()[0] == 20);
}

TEST_CASE("som_kmeans validates k against the unit count") {
    auto data = oracles::random_matrix(20, 4, 9);
    CHECK_THROWS_AS(som_kmeans(data, SomGrid{2, 2}, 5, 0, TrainSchedule{}, KmeansConfig{}),
                    input_error);
    CHECK_THROWS_AS(som_kmeans(data, SomGrid{2, 2}, 0, 0, TrainSchedule{}, KmeansConfig{}),
                    input_error);
}

TEST_CASE("som_kmeans is deterministic and never emits empty clusters") {
    auto data = oracles::random_matrix(60, 6, 17);
    SomKmeansResult a = som_kmeans(data, SomGrid{5, 5}, 12, 17, TrainSchedule{}, KmeansConfig{});
    SomKmeansResult b = som_kmeans(data, SomGrid{5, 5}, 12, 17, TrainSchedule{}, KmeansConfig{});
    CHECK(a.partition.assignment == b.partition.assignment);
    CHECK(a.effective_k <= 12);
    for (std::size_t s : a.partition.sizes()) CHECK(s >= 1);
    // dense cluster ids
    for (int c : a.partition.assignment) {
        CHECK(c >= 0);
        CHECK(std::size_t(c) < a.partition.k);
    }
}
