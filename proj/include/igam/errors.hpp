#pragma once

#include "igam/field.hpp"

#include <functional>
#include <vector>

namespace igam {

struct ErrorNorms {
    double l2 = 0.0;
    double h1 = 0.0; ///< broken H1 seminorm part included in the full norm
    double h2 = 0.0; ///< 0 unless Hessians were requested
};

using ScalarFn = std::function<double(const Eigen::VectorXd&)>;
using GradFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using HessFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Broken L2/H1/H2 errors of a discrete scalar field against an exact
/// solution. Pass nullptr gradients/Hessians to skip the higher norms.
/// Reported values are full norms: h1 includes l2, h2 includes h1.
ErrorNorms error_norms(const MultiPatch& mp, const Eigen::VectorXd& coeffs, const ScalarFn& exact,
                       const GradFn& exact_grad = nullptr, const HessFn& exact_hess = nullptr,
                       int quad_pts = -1);

/// Observed orders: rate[i] = log(err[i-1]/err[i]) / log(h[i-1]/h[i]),
/// rate[0] = NaN. Non-positive errors give NaN.
std::vector<double> convergence_rates(const std::vector<double>& h,
                                      const std::vector<double>& err);

} // namespace igam
