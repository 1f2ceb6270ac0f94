#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "weakkam/lax_oleinik.hpp"

using namespace weakkam;

namespace {
SolverConfig<Rat> rcfg;
SolverConfig<double> fcfg;

std::vector<Rat> rvec(std::initializer_list<Rat> v) { return {v}; }
}  // namespace

TEST_CASE("apply_T evaluates min_y u(y) + c(y,x)") {
    auto i3 = fixtures::I3<Rat>();
    CHECK(apply_T(i3, rvec({Rat(0), Rat(2)})).values == rvec({Rat(0), Rat(2)}));
    CHECK(apply_T(fixtures::I1<Rat>(), rvec({Rat(0)})).values == rvec({Rat(5)}));
    CHECK(apply_T(fixtures::I2<Rat>(), rvec({Rat(0), Rat(0)})).values == rvec({Rat(0), Rat(0)}));
}

TEST_CASE("apply_T_discounted and the (0,1) discount guard") {
    auto i3 = fixtures::I3<Rat>();
    CHECK(apply_T_discounted(i3, rvec({Rat(0), Rat(2)}), rat_from(3, 4)).values ==
          rvec({Rat(0), Rat(2)}));
    CHECK(apply_T_discounted(i3, rvec({Rat(0), Rat(2)}), rat_from(1, 4)).values ==
          rvec({Rat(0), rat_from(3, 2)}));
    // lambda*0 vanishes: T_lambda(0)(x) = min_y c(y,x)
    CHECK(apply_T_discounted(i3, rvec({Rat(0), Rat(0)}), rat_from(1, 2)).values ==
          rvec({Rat(0), Rat(1)}));
    CHECK_THROWS_AS(apply_T_discounted(i3, rvec({Rat(0), Rat(0)}), Rat(1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_T_discounted(i3, rvec({Rat(0), Rat(0)}), Rat(0)),
                    std::invalid_argument);
}

TEST_CASE("argmin ties resolve to the lowest index") {
    // both predecessors give the same value at x=0
    auto sp = validate_space<Rat>({"a", "b"}, {{Rat(1), Rat(0)}, {Rat(1), Rat(2)}});
    auto t = apply_T(sp, rvec({Rat(0), Rat(0)}));
    CHECK(t.values[0] == Rat(1));
    CHECK(t.argmin[0] == 0);
}

TEST_CASE("solve_discounted: exact fixed points in rational mode") {
    auto i3 = fixtures::I3<Rat>();
    auto s1 = solve_discounted(i3, rat_from(3, 4), Rat(0), rcfg);
    CHECK(s1.u == rvec({Rat(0), Rat(2)}));
    CHECK(s1.residual == Rat(0));

    auto s2 = solve_discounted(i3, rat_from(1, 4), Rat(0), rcfg);
    CHECK(s2.u == rvec({Rat(0), rat_from(4, 3)}));

    auto s3 = solve_discounted(fixtures::I1<Rat>(), rat_from(1, 2), Rat(0), rcfg);
    CHECK(s3.u == rvec({Rat(10)}));
}

TEST_CASE("solve_discounted float mode meets the residual contract") {
    auto i3 = fixtures::I3<double>();
    auto s = solve_discounted(i3, 0.75, 0.0, fcfg);
    CHECK(s.residual <= fcfg.tol);
    CHECK(s.u[0] == doctest::Approx(0.0));
    CHECK(s.u[1] == doctest::Approx(2.0));
}

TEST_CASE("solver agrees with the discounted series within its tail bound") {
    auto i1 = fixtures::I1<Rat>();
    auto sv = discounted_series_value(i1, rat_from(1, 2), Rat(0), 0, 4);
    CHECK(sv.value == rat_from(75, 8));
    CHECK(sv.tail_bound == rat_from(10, 16));

    auto i3 = fixtures::I3<Rat>();
    CHECK(discounted_series_value(i3, rat_from(1, 2), Rat(0), 0, 10).value == Rat(0));
    auto i2 = fixtures::I2<Rat>();
    CHECK(discounted_series_value(i2, rat_from(9, 10), Rat(0), 0, 20).value == Rat(0));
    CHECK(discounted_series_value(i2, rat_from(9, 10), Rat(0), 1, 20).value == Rat(0));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        Rat lambda = rat_from(1 + static_cast<long>(rng() % 8), 10);
        auto sol = solve_discounted(i3, lambda, Rat(1), rcfg);
        for (int x = 0; x < i3.n; ++x) {
            auto s = discounted_series_value(i3, lambda, Rat(1), x, 30);
            CHECK(abs_val<Rat>(s.value - sol.u[x]) <= s.tail_bound);
        }
    }
}

TEST_CASE("sub/supersolution checks with worst violation reporting") {
    auto i3 = fixtures::I3<Rat>();
    CHECK(check_subsolution(i3, rvec({Rat(0), Rat(2)}), std::optional<Rat>{}, Rat(0)).ok);
    auto bad = check_subsolution(i3, rvec({Rat(0), Rat(3)}), std::optional<Rat>{}, Rat(0));
    CHECK_FALSE(bad.ok);
    CHECK(bad.point == 1);
    CHECK(bad.worst == Rat(1));
    // equality case: u = 0 with lambda=1/2, beta=-5 on I1
    CHECK(check_subsolution(fixtures::I1<Rat>(), rvec({Rat(0)}),
                            std::optional<Rat>(rat_from(1, 2)), Rat(-5))
              .ok);

    CHECK(check_supersolution(i3, rvec({Rat(0), Rat(2)}), std::optional<Rat>{}, Rat(0)).ok);
    auto bad2 = check_supersolution(i3, rvec({Rat(0), Rat(1)}), std::optional<Rat>{}, Rat(0));
    CHECK_FALSE(bad2.ok);
    CHECK(bad2.point == 1);
    CHECK(check_supersolution(fixtures::I1<Rat>(), rvec({Rat(10)}),
                              std::optional<Rat>(rat_from(1, 2)), Rat(0))
              .ok);
}

TEST_CASE("comparison sandwich") {
    auto i3 = fixtures::I3<Rat>();
    CHECK(comparison_sandwich(i3, rat_from(3, 4), Rat(0), rvec({Rat(-1), Rat(1)}),
                              rvec({Rat(1), Rat(3)}), rcfg));
    CHECK(comparison_sandwich(fixtures::I1<Rat>(), rat_from(1, 2), Rat(0), rvec({Rat(10)}),
                              rvec({Rat(10)}), rcfg));
    CHECK(comparison_sandwich(fixtures::I2<Rat>(), rat_from(1, 2), Rat(0),
                              rvec({Rat(0), Rat(0)}), rvec({Rat(0), Rat(0)}), rcfg));
    CHECK_THROWS_WITH_AS(
        comparison_sandwich(i3, rat_from(3, 4), Rat(0), rvec({Rat(5), Rat(9)}),
                            rvec({Rat(9), Rat(9)}), rcfg),
        doctest::Contains("not a subsolution"), std::invalid_argument);
}

TEST_CASE("beta shift identity is exact") {
    CHECK(beta_shift_identity(fixtures::I1<Rat>(), rat_from(1, 2), Rat(0), Rat(-5), rcfg) ==
          Rat(0));
    CHECK(beta_shift_identity(fixtures::I3<Rat>(), rat_from(3, 4), Rat(0), Rat(0), rcfg) ==
          Rat(0));
    CHECK(beta_shift_identity(fixtures::I2<Rat>(), rat_from(1, 2), Rat(1), Rat(0), rcfg) ==
          Rat(0));
}

TEST_CASE("monotonicity and contraction on random pairs") {
    auto i3 = fixtures::I3<Rat>();
    std::mt19937_64 rng(7);
    auto rnd = [&] {
        std::vector<Rat> u(2);
        for (auto& v : u) v = rat_from(static_cast<long>(rng() % 41) - 20, 4);
        return u;
    };
    for (int trial = 0; trial < 50; ++trial) {
        auto f = rnd(), g = rnd();
        auto hi = f;
        for (int i = 0; i < 2; ++i)
            if (g[i] > hi[i]) hi[i] = g[i];
        auto tf = apply_T(i3, f).values, thi = apply_T(i3, hi).values;
        for (int i = 0; i < 2; ++i) CHECK(tf[i] <= thi[i]);

        Rat lambda = rat_from(2, 3);
        auto a = apply_T_discounted(i3, f, lambda).values;
        auto b = apply_T_discounted(i3, g, lambda).values;
        Rat lhs(0), rhs(0);
        for (int i = 0; i < 2; ++i) {
            if (abs_val<Rat>(a[i] - b[i]) > lhs) lhs = abs_val<Rat>(a[i] - b[i]);
            if (abs_val<Rat>(f[i] - g[i]) > rhs) rhs = abs_val<Rat>(f[i] - g[i]);
        }
        CHECK(lhs <= lambda * rhs);
    }
}

TEST_CASE("max_iterations overflow carries the last iterate") {
    auto i1 = fixtures::I1<double>();
    SolverConfig<double> tiny;
    tiny.max_iterations = 1;
    tiny.tol = 1e-16;
    try {
        solve_discounted(i1, 0.999999, 0.0, tiny);
        FAIL("expected SolverError");
    } catch (const SolverError<double>& e) {
        CHECK(e.last_iterate.size() == 1);
        CHECK(e.residual > 0.0);
    }
}
