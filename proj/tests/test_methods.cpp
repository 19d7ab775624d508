#include <doctest.h>

#include "loadclust/methods.hpp"
#include "oracles.hpp"

using namespace loadclust;

TEST_CASE("method shorthand names round trip") {
    for (MethodId m : kAllMethods) {
        auto parsed = parse_method(method_name(m));
        REQUIRE(parsed);
        CHECK(*parsed == m);
    }
    CHECK(!parse_method("kmeans"));
    CHECK(!parse_method(""));
    CHECK(!parse_method("HC-W2"));  // names are lowercase
}

TEST_CASE("hierarchical method specs match their abbreviations") {
    CHECK(hc_spec(MethodId::HcW2).linkage == Linkage::Ward);
    CHECK(hc_spec(MethodId::HcW2).metric.kind == MetricKind::Euclidean);
    CHECK(hc_spec(MethodId::HcS5).linkage == Linkage::Single);
    CHECK(hc_spec(MethodId::HcS5).metric.kind == MetricKind::Minkowski);
    CHECK(hc_spec(MethodId::HcS5).metric.p == 5.0);
    CHECK(hc_spec(MethodId::HcA2).linkage == Linkage::Average);
    CHECK(hc_spec(MethodId::HcSc).metric.kind == MetricKind::Cosine);
    CHECK(hc_spec(MethodId::HcAc).linkage == Linkage::Average);
    CHECK(hc_spec(MethodId::HcAc).metric.kind == MetricKind::Cosine);
    CHECK_THROWS_AS(hc_spec(MethodId::Km), config_error);
}

TEST_CASE("run_method produces valid partitions for every method") {
    auto data = oracles::random_matrix(40, 8, 5, 0.05, 1.0);
    for (MethodId m : kAllMethods) {
        MethodRun run = run_method(data, m, 5, 3);
        CHECK(run.requested_k == 5);
        CHECK(run.effective_k >= 1);
        CHECK(run.effective_k <= 5);
        CHECK(run.partition.n == 40);
        for (std::size_t s : run.partition.sizes()) CHECK(s >= 1);
    }
}

TEST_CASE("sweep engine matches one-shot runs for hierarchical methods") {
    auto data = oracles::random_matrix(30, 6, 2, 0.05, 1.0);
    SweepEngine engine(data, MethodId::HcA2, 7);
    for (std::size_t k : {2ul, 5ul, 9ul}) {
        MethodRun cached = engine.at(k);
        MethodRun direct = run_method(data, MethodId::HcA2, k, 7);
        CHECK(cached.partition.assignment == direct.partition.assignment);
    }
}

TEST_CASE("run_sweep emits one row per method and k") {
    auto data = oracles::random_matrix(25, 6, 9, 0.05, 1.0);
    std::vector<MethodId> methods{MethodId::Km, MethodId::HcW2};
    auto rows = run_sweep(data, methods, 2, 5, 1);
    REQUIRE(rows.size() == 8);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(rows[i].method_tag == "km");
        CHECK(rows[i].requested_k == i + 2);
    }
    for (std::size_t i = 4; i < 8; ++i) CHECK(rows[i].method_tag == "hc-w2");
}

TEST_CASE("run_sweep validates the k range") {
    auto data = oracles::random_matrix(10, 4, 0);
    std::vector<MethodId> methods{MethodId::Km};
    CHECK_THROWS_AS(run_sweep(data, methods, 1, 5, 0), input_error);
    CHECK_THROWS_AS(run_sweep(data, methods, 5, 2, 0), input_error);
    CHECK_THROWS_AS(run_sweep(data, methods, 2, 10, 0), input_error);
    CHECK_NOTHROW(run_sweep(data, methods, 2, 9, 0));
}

TEST_CASE("run_sweep is deterministic per seed") {
    auto data = oracles::random_matrix(20, 5, 4, 0.05, 1.0);
    std::vector<MethodId> methods{MethodId::Som, MethodId::Skm};
    auto a = run_sweep(data, methods, 2, 6, 11);
    auto b = run_sweep(data, methods, 2, 6, 11);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].cdi == b[i].cdi);
        CHECK(a[i].mdi == b[i].mdi);
        CHECK(a[i].dbi == b[i].dbi);
        CHECK(a[i].mia == b[i].mia);
        CHECK(a[i].effective_k == b[i].effective_k);
    }
}
