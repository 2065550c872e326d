#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <numeric>
#include <string>

#include "doctest.h"
#include "latticeforge/latticeforge.hpp"

using namespace latticeforge;

namespace {

bool mentions(const ValidationError& e, const std::string& needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
}

ProductWeights weights_list(std::vector<double> head) {
    ProductWeights w;
    w.head = std::move(head);
    return w;
}

ReductionSchedule schedule_list(std::vector<int> head) {
    ReductionSchedule r;
    r.head = std::move(head);
    return r;
}

}  // namespace

TEST_CASE("config invariants") {
    CHECK(LatticeConfig(2, 3).n == 8);
    CHECK(LatticeConfig(3, 4).n == 81);
    CHECK(LatticeConfig(4, 2).violations().size() == 1);
    CHECK(LatticeConfig(2, 0).violations().size() == 1);
    CHECK(!LatticeConfig(2, 63).violations().empty());  // past the 2^62 cap
    CHECK(LatticeConfig(2, 61).violations().empty());
}

TEST_CASE("validate_instance accepts the reference instance") {
    const auto inst = validate_instance(LatticeConfig(2, 3), weights_list({1.0, 0.5}),
                                        schedule_list({0, 1}), 2);
    CHECK(inst.config.n == 8);
    CHECK(inst.weights.beta(1) == 2.0);
    CHECK(inst.schedule.w(2) == 1);
}

TEST_CASE("validate_instance reports every violation") {
    try {
        validate_instance(LatticeConfig(4, 2), weights_list({0.5, 0.9}),
                          schedule_list({1, 0}), 2);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(mentions(e, "not prime"));
        CHECK(mentions(e, "non-increasing"));
        CHECK(mentions(e, "non-decreasing"));
    }
    CHECK_THROWS_AS(validate_instance(LatticeConfig(2, 3), weights_list({1.5}),
                                      schedule_list({0}), 1),
                    ValidationError);
    // head too short without a tail
    CHECK_THROWS_AS(validate_instance(LatticeConfig(2, 3), weights_list({1.0}),
                                      schedule_list({0}), 3),
                    ValidationError);
}

TEST_CASE("weight tails") {
    ProductWeights poly;
    poly.tail = ProductWeights::Tail::polynomial;
    poly.tail_param = 2.0;
    CHECK(poly.violations().empty());
    CHECK(poly.gamma(1) == 1.0);
    CHECK(poly.gamma(3) == doctest::Approx(1.0 / 9.0));

    ProductWeights geo;
    geo.tail = ProductWeights::Tail::geometric;
    geo.tail_param = 0.5;
    CHECK(geo.gamma(1) == 0.5);  // empty head anchors at gamma_0 = 1
    CHECK(geo.gamma(4) == doctest::Approx(0.0625));

    ProductWeights mixed = weights_list({1.0, 0.5});
    mixed.tail = ProductWeights::Tail::geometric;
    mixed.tail_param = 0.25;
    CHECK(mixed.gamma(2) == 0.5);
    CHECK(mixed.gamma(4) == doctest::Approx(0.5 * 0.0625));

    // polynomial tail that jumps above the head end is rejected
    ProductWeights bad = weights_list({0.001});
    bad.tail = ProductWeights::Tail::polynomial;
    bad.tail_param = 2.0;  // gamma_2 = 1/4 > 0.001
    CHECK(!bad.violations().empty());

    ProductWeights headless = weights_list({});
    CHECK(!headless.violations().empty());
    CHECK_THROWS_AS(weights_list({1.0}).gamma(2), std::out_of_range);
}

TEST_CASE("subset weight accessor") {
    const auto w = weights_list({1.0, 0.5, 0.25});
    CHECK(w.gamma_subset({}) == 1.0);
    CHECK(w.gamma_subset({1}) == 1.0);
    CHECK(w.gamma_subset({1, 2, 3}) == doctest::Approx(0.125));
}

TEST_CASE("schedule tails and threshold") {
    ReductionSchedule r = schedule_list({0, 1, 2});
    CHECK(r.threshold_t(3, 3) == 3);
    CHECK(r.threshold_t(2, 3) == 2);
    CHECK(r.threshold_t(1, 3) == 1);
    CHECK(r.threshold_t(5, 3) == 3);

    ReductionSchedule high = schedule_list({4, 5});
    CHECK(high.threshold_t(3, 2) == 0);

    ReductionSchedule lin = schedule_list({1});
    lin.tail = ReductionSchedule::Tail::linear;
    lin.tail_step = 1;
    CHECK(lin.w(1) == 1);
    CHECK(lin.w(5) == 5);

    ReductionSchedule cst = schedule_list({0, 2});
    cst.tail = ReductionSchedule::Tail::constant;
    CHECK(cst.w(10) == 2);

    CHECK_THROWS_AS(schedule_list({0}).w(2), std::out_of_range);
    CHECK(ReductionSchedule::zero().w(1000) == 0);
}

TEST_CASE("generating vector invariants") {
    const LatticeConfig cfg(2, 3);
    const auto g = GeneratingVector::make(cfg, {{0, 1}, {1, 3}, {3, 1}});
    CHECK(g.components[0].c == 1);
    CHECK(g.components[1].c == 6);
    CHECK(g.components[2].c == 0);  // w >= m collapses the coordinate
    CHECK_THROWS_AS(GeneratingVector::make(cfg, {{0, 2}}), ValidationError);   // even z
    CHECK_THROWS_AS(GeneratingVector::make(cfg, {{1, 5}}), ValidationError);   // out of range
    CHECK_THROWS_AS(GeneratingVector::make(cfg, {{3, 3}}), ValidationError);   // z != 1
    CHECK(GeneratingVector::make(cfg, {{60, 1}}).components[0].c == 0);        // huge w
}

TEST_CASE("lattice points, 1D quarter steps") {
    const LatticeConfig cfg(2, 2);
    const auto g = GeneratingVector::make(cfg, {{0, 1}});
    const auto p = lattice_points(cfg, g);
    REQUIRE(p.n == 4);
    CHECK(p.at(0, 0) == 0.0);
    CHECK(p.at(1, 0) == 0.25);
    CHECK(p.at(2, 0) == 0.5);
    CHECK(p.at(3, 0) == 0.75);
}

TEST_CASE("lattice points, scaled second coordinate") {
    const LatticeConfig cfg(2, 3);
    const auto g = GeneratingVector::make(cfg, {{0, 1}, {1, 1}});
    const auto p = lattice_points(cfg, g);
    for (std::int64_t k = 0; k < 8; ++k)
        CHECK(p.at(k, 1) == doctest::Approx(static_cast<double>(2 * k % 8) / 8.0));
}

TEST_CASE("degenerate coordinate is identically zero") {
    const LatticeConfig cfg(2, 3);
    const auto g = GeneratingVector::make(cfg, {{3, 1}});
    const auto p = lattice_points(cfg, g);
    for (std::int64_t k = 0; k < 8; ++k) CHECK(p.at(k, 0) == 0.0);
}

TEST_CASE("every entry is a multiple of 1/N") {
    const LatticeConfig cfg(3, 2);
    const auto g = GeneratingVector::make(cfg, {{0, 5}, {1, 2}});
    const auto p = lattice_points(cfg, g);
    for (std::int64_t k = 0; k < p.n; ++k)
        for (int j = 0; j < p.dims; ++j) {
            const double scaled = p.at(k, j) * static_cast<double>(cfg.n);
            CHECK(scaled == doctest::Approx(std::round(scaled)).epsilon(1e-12));
            CHECK(p.at(k, j) >= 0.0);
            CHECK(p.at(k, j) < 1.0);
        }
}

TEST_CASE("column multiset is the cyclic orbit of gcd(c, N)") {
    const LatticeConfig cfg(2, 4);
    const auto g = GeneratingVector::make(cfg, {{2, 3}});  // c = 12, gcd(12,16) = 4
    const auto p = lattice_points(cfg, g);
    const std::int64_t gcd = std::gcd(g.components[0].c, cfg.n);
    std::vector<double> column, orbit;
    for (std::int64_t k = 0; k < cfg.n; ++k) {
        column.push_back(p.at(k, 0));
        orbit.push_back(static_cast<double>(k * gcd % cfg.n) / static_cast<double>(cfg.n));
    }
    std::sort(column.begin(), column.end());
    std::sort(orbit.begin(), orbit.end());
    CHECK(column == orbit);
}

TEST_CASE("exact numerators") {
    const LatticeConfig cfg(2, 2);
    const auto g = GeneratingVector::make(cfg, {{0, 3}});
    CHECK(point_numerator(cfg, g, 0, 0) == 0);
    CHECK(point_numerator(cfg, g, 1, 0) == 3);
    CHECK(point_numerator(cfg, g, 2, 0) == 2);
    CHECK(point_numerator(cfg, g, 3, 0) == 1);
}

TEST_CASE("projection keeps rows aligned") {
    const LatticeConfig cfg(2, 2);
    const auto g = GeneratingVector::make(cfg, {{0, 1}, {0, 3}, {2, 1}});
    const auto p = lattice_points(cfg, g);
    const auto proj = p.project({2, 0});
    REQUIRE(proj.dims == 2);
    for (std::int64_t k = 0; k < p.n; ++k) {
        CHECK(proj.at(k, 0) == p.at(k, 2));
        CHECK(proj.at(k, 1) == p.at(k, 0));
    }
}
