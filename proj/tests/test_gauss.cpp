#include "igam/gauss.hpp"

#include <doctest.h>

#include <cmath>

using namespace igam;

TEST_CASE("gauss rule integrates polynomials of degree 2n-1 exactly") {
    for (int n = 1; n <= 8; ++n) {
        const auto rule = gauss_legendre(n, 0.0, 1.0);
        double wsum = 0.0;
        for (double w : rule.weights) wsum += w;
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
        // integral of x^d on [0,1] is 1/(d+1)
        const int d = 2 * n - 1;
        double val = 0.0;
        for (std::size_t q = 0; q < rule.points.size(); ++q)
            val += rule.weights[q] * std::pow(rule.points[q], d);
        CHECK(val == doctest::Approx(1.0 / (d + 1)).epsilon(1e-13));
    }
}

TEST_CASE("gauss rule on shifted interval") {
    const auto rule = gauss_legendre(4, 2.0, 5.0);
    double len = 0.0, lin = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        CHECK(rule.points[q] > 2.0);
        CHECK(rule.points[q] < 5.0);
        len += rule.weights[q];
        lin += rule.weights[q] * rule.points[q];
    }
    CHECK(len == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(lin == doctest::Approx(10.5).epsilon(1e-13)); // integral of x over [2,5]
}
