#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "weakkam/brute.hpp"
#include "weakkam/space.hpp"

using namespace weakkam;

TEST_CASE("validate_space accepts the canonical instances") {
    CHECK(fixtures::I1<Rat>().n == 1);
    CHECK(fixtures::I3<Rat>().n == 2);
    CHECK(fixtures::I2<double>().n == 2);
}

TEST_CASE("validate_space rejects each malformed input with its own diagnostic") {
    CHECK_THROWS_WITH_AS(validate_space<Rat>({"a", "b"}, {{Rat(0), Rat(1), Rat(2)},
                                                          {Rat(0), Rat(1), Rat(2)}}),
                         doctest::Contains("non-square"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(validate_space<Rat>({"a", "a"}, {{Rat(0), Rat(1)}, {Rat(0), Rat(1)}}),
                         doctest::Contains("duplicate label"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(validate_space<Rat>({}, {}), doctest::Contains("at least one point"),
                         std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_WITH_AS(validate_space<double>({"a"}, {{inf}}),
                         doctest::Contains("non-finite"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(validate_space<double>({"a"}, {{std::nan("")}}),
                         doctest::Contains("non-finite"), std::invalid_argument);
}

TEST_CASE("path_cost sums step costs in the y->x orientation") {
    auto i3 = fixtures::I3<Rat>();
    CHECK(path_cost(i3, {0, 1}) == Rat(2));
    CHECK(path_cost(i3, {1, 0, 1}) == Rat(5));
    CHECK(path_cost(fixtures::I1<Rat>(), {0, 0, 0}) == Rat(10));
    CHECK_THROWS_AS(path_cost(i3, {0}), std::invalid_argument);
}

TEST_CASE("path_cost is additive under concatenation at a shared endpoint") {
    auto i3 = fixtures::I3<Rat>();
    Path whole{1, 0, 1, 1, 0};
    Path left{1, 0, 1};
    Path right{1, 1, 0};
    CHECK(path_cost(i3, whole) == path_cost(i3, left) + path_cost(i3, right));
}

TEST_CASE("brute_cn enumerates all fixed-length paths") {
    auto i3 = fixtures::I3<Rat>();
    // 2-step paths 1 -> 1: {1,0,1} costs 5, {1,1,1} costs 2
    CHECK(brute_cn(i3, 1, 1, 2) == Rat(2));
    CHECK(brute_cn(fixtures::I2<Rat>(), 0, 0, 2) == Rat(0));
    CHECK(brute_cn(fixtures::I1<Rat>(), 0, 0, 3) == Rat(15));
    CHECK_THROWS_WITH_AS(brute_cn(i3, 0, 0, 13), doctest::Contains("min_plus_power"),
                         std::invalid_argument);
}

TEST_CASE("brute_cn is subadditive over intermediate points") {
    for (auto sp : {fixtures::I2<Rat>(), fixtures::I3<Rat>()}) {
        for (int x = 0; x < 2; ++x)
            for (int z = 0; z < 2; ++z)
                for (int a = 1; a <= 3; ++a)
                    for (int b = 1; b <= 3; ++b)
                        for (int y = 0; y < 2; ++y)
                            CHECK(brute_cn(sp, x, z, a + b) <=
                                  brute_cn(sp, x, y, a) + brute_cn(sp, y, z, b));
    }
}

TEST_CASE("brute_min_mean_cycle with deterministic tie-breaking") {
    auto m1 = brute_min_mean_cycle(fixtures::I1<Rat>());
    CHECK(m1.mean == Rat(5));
    CHECK(m1.cycle == Path{0, 0});

    auto m2 = brute_min_mean_cycle(fixtures::I2<Rat>());
    CHECK(m2.mean == Rat(0));
    CHECK(m2.cycle == Path{0, 1, 0});

    auto m3 = brute_min_mean_cycle(fixtures::I3<Rat>());
    CHECK(m3.mean == Rat(0));
    CHECK(m3.cycle == Path{0, 0});
}

TEST_CASE("rational operations are bit-identical across runs") {
    auto a = brute_min_mean_cycle(fixtures::I3<Rat>());
    auto b = brute_min_mean_cycle(fixtures::I3<Rat>());
    CHECK(a.mean.get_str() == b.mean.get_str());
    CHECK(a.cycle == b.cycle);
}
