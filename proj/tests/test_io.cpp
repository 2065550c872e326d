#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "latticeforge/latticeforge.hpp"

using namespace latticeforge;

TEST_CASE("weight grammar") {
    SUBCASE("plain list") {
        const auto w = parse_weights("list:1,0.5,0.25");
        CHECK(w.head == std::vector<double>{1.0, 0.5, 0.25});
        CHECK(!w.has_tail());
        CHECK(format_weights(w) == "list:1,0.5,0.25");
    }
    SUBCASE("list with polynomial tail") {
        const auto w = parse_weights("list:1,0.5+poly:2");
        CHECK(w.tail == ProductWeights::Tail::polynomial);
        CHECK(w.gamma(3) == doctest::Approx(1.0 / 9.0));
        CHECK(format_weights(w) == "list:1,0.5+poly:2");
    }
    SUBCASE("bare tails") {
        CHECK(parse_weights("poly:2").gamma(2) == doctest::Approx(0.25));
        CHECK(parse_weights("geo:0.5").gamma(3) == doctest::Approx(0.125));
        CHECK(format_weights(parse_weights("geo:0.5")) == "geo:0.5");
    }
    SUBCASE("rejects junk") {
        CHECK_THROWS_AS(parse_weights("listy:1"), ValidationError);
        CHECK_THROWS_AS(parse_weights("list:1+exp:2"), ValidationError);
        CHECK_THROWS_AS(parse_weights("poly:2+poly:3"), ValidationError);
        CHECK_THROWS_AS(parse_weights("list:abc"), ValidationError);
    }
}

TEST_CASE("reduction grammar") {
    const auto r = parse_reduction("list:0,1,2");
    CHECK(r.head == std::vector<int>{0, 1, 2});
    CHECK(format_reduction(r) == "list:0,1,2");

    const auto c = parse_reduction("list:0,2+const");
    CHECK(c.w(9) == 2);
    CHECK(format_reduction(c) == "list:0,2+const");

    const auto l = parse_reduction("list:1+linear:2");
    CHECK(l.w(3) == 5);
    CHECK(format_reduction(l) == "list:1+linear:2");

    CHECK_THROWS_AS(parse_reduction("range:0,1"), ValidationError);
    CHECK_THROWS_AS(parse_reduction("list:0+linear"), ValidationError);
}

TEST_CASE("instance text round trip") {
    const std::string text =
        "# toy instance\n"
        "base 2\n"
        "m 3\n"
        "dims 2\n"
        "weights list:1,0.5\n"
        "reduction list:0,1\n";
    const auto inst = parse_instance_text(text);
    CHECK(inst.config.n == 8);
    CHECK(inst.dims == 2);
    const auto again = parse_instance_text(format_instance(inst));
    CHECK(again.config.b == inst.config.b);
    CHECK(again.weights.head == inst.weights.head);
    CHECK(again.schedule.head == inst.schedule.head);
}

TEST_CASE("instance text errors") {
    CHECK_THROWS_AS(parse_instance_text("base 2\nm 3\ndims 2\nweights list:1,0.5\n"),
                    ValidationError);  // missing reduction
    CHECK_THROWS_AS(parse_instance_text("base 2\nm 3\ndims 1\nweights list:1\n"
                                        "reduction list:0\nbogus 7\n"),
                    ValidationError);  // unknown key
    CHECK_THROWS_AS(parse_instance_text("base 4\nm 2\ndims 1\nweights list:1\n"
                                        "reduction list:0\n"),
                    ValidationError);  // composite base
}

TEST_CASE("vector file round trip") {
    const auto inst = parse_instance_text(
        "base 2\nm 4\ndims 3\nweights list:1,0.25,0.111111\nreduction list:0,1,2\n");
    const auto result = reduced_cbc(inst);
    const std::string text = format_vector_file(inst, result);
    const auto file = parse_vector_file(text);
    CHECK(file.instance.config.n == 16);
    for (int j = 0; j < 3; ++j) {
        CHECK(file.vector.components[static_cast<std::size_t>(j)].z ==
              result.vector.components[static_cast<std::size_t>(j)].z);
        CHECK(file.vector.components[static_cast<std::size_t>(j)].c ==
              result.vector.components[static_cast<std::size_t>(j)].c);
    }
    REQUIRE(file.step_r.size() == 3);
    for (int d = 0; d < 3; ++d)
        CHECK(file.step_r[static_cast<std::size_t>(d)] ==
              result.step_r[static_cast<std::size_t>(d)]);  // g17 round-trips exactly
}

TEST_CASE("vector file rejects tampering") {
    const auto inst =
        parse_instance_text("base 2\nm 3\ndims 1\nweights list:1\nreduction list:0\n");
    const auto result = reduced_cbc(inst);
    std::string text = format_vector_file(inst, result);
    const auto pos = text.find("1 0 1 1");
    REQUIRE(pos != std::string::npos);
    std::string bad = text;
    bad.replace(pos, 7, "1 0 1 3");  // c no longer equals b^w z mod N
    CHECK_THROWS_AS(parse_vector_file(bad), ValidationError);
    std::string wrong_w = text;
    wrong_w.replace(pos, 7, "1 1 1 2");  // w disagrees with the schedule
    CHECK_THROWS_AS(parse_vector_file(wrong_w), ValidationError);
}

TEST_CASE("points csv") {
    const LatticeConfig cfg(2, 2);
    const auto z = GeneratingVector::make(cfg, {{0, 1}});
    std::ostringstream out;
    write_points_csv(cfg, z, out);
    CHECK(out.str() == "0/4\n1/4\n2/4\n3/4\n");

    const LatticeConfig cfg8(2, 3);
    const auto z2 = GeneratingVector::make(cfg8, {{0, 1}, {3, 1}});
    std::ostringstream out2;
    write_points_csv(cfg8, z2, out2);
    std::istringstream lines(out2.str());
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK(line.substr(line.find(',') + 1) == "0/8");  // degenerate column
        ++rows;
    }
    CHECK(rows == 8);
}

TEST_CASE("bound report rendering") {
    const auto inst = parse_instance_text(
        "base 2\nm 2\ndims 1\nweights list:1\nreduction list:0\n");
    const auto report = cbc_bound(inst, 1);
    const std::string text = format_bound_text(report);
    CHECK(text.find("kind cbc\n") == 0);
    CHECK(text.find("value 2.375\n") != std::string::npos);
    CHECK(text.find("component.r_bound 2.375\n") != std::string::npos);
    const std::string csv = format_bound_csv(report);
    CHECK(csv.find("kind,key,value\n") == 0);
    CHECK(csv.find("cbc,value,2.375\n") != std::string::npos);
}

TEST_CASE("g17 formatting round-trips doubles") {
    for (double v : {0.1, 1.0 / 3.0, 2.375, -7.25e-13, 3.9166666666666665}) {
        CHECK(std::stod(format_g17(v)) == v);
    }
}
