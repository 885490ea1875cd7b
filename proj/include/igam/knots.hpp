#pragma once

#include <Eigen/Dense>
#include <vector>

namespace igam {

/// Open knot vector of degree p on [0,1].
///
/// The first and last knots are repeated exactly p+1 times and interior
/// multiplicities stay <= p, so boundary basis functions interpolate and
/// the space dimension is #knots - p - 1.
struct KnotVector {
    int degree = 1;
    std::vector<double> knots;

    KnotVector() = default;
    KnotVector(int p, std::vector<double> k);

    int dim() const { return static_cast<int>(knots.size()) - degree - 1; }
    int num_elements() const;

    /// Distinct knot values (element breakpoints).
    std::vector<double> breakpoints() const;

    /// Greville abscissae g_i = mean(knots[i+1 .. i+p]).
    std::vector<double> greville() const;

    /// Index i of the nonempty span [knots[i], knots[i+1]) containing x
    /// (the last span for x = 1).
    int find_span(double x) const;
};

/// Uniform open knot vector with breakpoints at i/n_elements.
KnotVector make_open_knot_vector(int p, int n_elements, int interior_multiplicity = 1);

/// Basis values at one point: the p+1 active functions, rows are derivative
/// orders 0..max_deriv. first_index is the global index of the first active
/// function.
struct BasisTable {
    int first_index = 0;
    Eigen::MatrixXd ders; // (max_deriv+1) x (p+1)
};

/// Cox-de Boor evaluation with the standard derivative recurrence.
/// Order-0 values sum to 1, higher orders sum to 0. Derivative orders
/// beyond the degree evaluate to zero rows.
BasisTable eval_basis(const KnotVector& kv, double x, int max_deriv);

/// Bisect every nonempty knot span.
KnotVector h_refine(const KnotVector& kv);

/// Knots of `fine` that have to be inserted into `coarse` (with multiplicity).
std::vector<double> knot_difference(const KnotVector& coarse, const KnotVector& fine);

} // namespace igam
