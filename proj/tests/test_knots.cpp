#include "igam/knots.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace igam;

TEST_CASE("open knot vector construction and dimension") {
    const KnotVector kv = make_open_knot_vector(2, 4);
    CHECK(kv.degree == 2);
    CHECK(kv.dim() == 6); // n + p
    CHECK(kv.num_elements() == 4);
    const auto brk = kv.breakpoints();
    REQUIRE(brk.size() == 5);
    CHECK(brk[1] == doctest::Approx(0.25));
    CHECK(brk[4] == doctest::Approx(1.0));
}

TEST_CASE("knot vector validation") {
    CHECK_THROWS(KnotVector(2, {0, 0, 1, 1}));                   // ends not open
    CHECK_THROWS(KnotVector(1, {0, 0, 1, 0.5, 1, 1}));           // not sorted
    CHECK_THROWS(KnotVector(2, {0, 0, 0, 0.5, 0.5, 0.5, 1, 1, 1})); // interior mult > p
}

TEST_CASE("single-element quadratic basis is Bernstein") {
    const KnotVector kv = make_open_knot_vector(2, 1);
    const auto t = eval_basis(kv, 0.5, 1);
    CHECK(t.first_index == 0);
    CHECK(t.ders(0, 0) == doctest::Approx(0.25));
    CHECK(t.ders(0, 1) == doctest::Approx(0.5));
    CHECK(t.ders(0, 2) == doctest::Approx(0.25));
    CHECK(t.ders(1, 0) == doctest::Approx(-1.0));
    CHECK(t.ders(1, 1) == doctest::Approx(0.0));
    CHECK(t.ders(1, 2) == doctest::Approx(1.0));
}

TEST_CASE("partition of unity and derivative sums") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int p = 1; p <= 5; ++p) {
        const KnotVector kv = make_open_knot_vector(p, 7);
        for (int trial = 0; trial < 20; ++trial) {
            const double x = unif(rng);
            const auto t = eval_basis(kv, x, std::min(p, 2));
            double s0 = 0.0, s1 = 0.0;
            for (int j = 0; j <= p; ++j) {
                CHECK(t.ders(0, j) >= -1e-14);
                s0 += t.ders(0, j);
                s1 += t.ders(1, j);
            }
            CHECK(s0 == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(s1 == doctest::Approx(0.0).epsilon(1e-11));
        }
    }
}

TEST_CASE("boundary interpolation of open knot vectors") {
    const KnotVector kv = make_open_knot_vector(3, 5);
    const auto t0 = eval_basis(kv, 0.0, 0);
    CHECK(t0.first_index == 0);
    CHECK(t0.ders(0, 0) == doctest::Approx(1.0));
    const auto t1 = eval_basis(kv, 1.0, 0);
    CHECK(t1.first_index + 3 == kv.dim() - 1);
    CHECK(t1.ders(0, 3) == doctest::Approx(1.0));
}

TEST_CASE("evaluation outside the parametric domain throws") {
    const KnotVector kv = make_open_knot_vector(2, 3);
    CHECK_THROWS_AS(eval_basis(kv, -0.1, 0), std::domain_error);
    CHECK_THROWS_AS(eval_basis(kv, 1.1, 0), std::domain_error);
}

TEST_CASE("derivative orders beyond the degree are zero") {
    const KnotVector kv = make_open_knot_vector(1, 4);
    const auto t = eval_basis(kv, 0.3, 2);
    CHECK(t.ders(2, 0) == 0.0);
    CHECK(t.ders(2, 1) == 0.0);
}

TEST_CASE("greville abscissae are sorted and span [0,1]") {
    for (int p = 1; p <= 4; ++p) {
        const KnotVector kv = make_open_knot_vector(p, 6);
        const auto g = kv.greville();
        REQUIRE(static_cast<int>(g.size()) == kv.dim());
        CHECK(g.front() == doctest::Approx(0.0));
        CHECK(g.back() == doctest::Approx(1.0));
        for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1] - 1e-14);
    }
}

TEST_CASE("h_refine bisects every span") {
    const KnotVector kv = make_open_knot_vector(2, 3);
    const KnotVector fine = h_refine(kv);
    CHECK(fine.num_elements() == 6);
    CHECK(fine.degree == 2);
    const auto diff = knot_difference(kv, fine);
    REQUIRE(diff.size() == 3);
    CHECK(diff[0] == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("find_span locates the containing element") {
    const KnotVector kv = make_open_knot_vector(2, 4);
    CHECK(kv.find_span(0.0) == 2);
    CHECK(kv.find_span(0.3) == 3);
    CHECK(kv.find_span(1.0) == 5); // last nonempty span
}
