#pragma once

#include <vector>

namespace igam {

/// One-dimensional Gauss-Legendre rule on a given interval.
struct GaussRule {
    std::vector<double> points;
    std::vector<double> weights;
};

/// Gauss-Legendre rule with `n` points on [a, b], exact for polynomials
/// of degree <= 2n-1.
GaussRule gauss_legendre(int n, double a = 0.0, double b = 1.0);

} // namespace igam
