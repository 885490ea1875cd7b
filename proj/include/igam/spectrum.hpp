#pragma once

#include "igam/assembly.hpp"

#include <functional>

namespace igam {

/// Number of leading eigenvalues kept by the outlier filter: scan the upper
/// half of the ascending spectrum for the largest index i with
/// values[i+1]/values[i] > ratio and cut there. No such gap keeps everything.
int filter_split(const Eigen::VectorXd& values, double ratio = 100.0);

/// values[i] / exact(i+first_mode), elementwise.
Eigen::VectorXd normalize_spectrum(const Eigen::VectorXd& values,
                                   const std::function<double(int)>& exact, int first_mode = 1);

/// Relative M-norm distance of t from span(U), U with M-orthonormal columns:
/// || t - U U^T M t ||_M / || t ||_M.
double reduced_space_projection_error(const Eigen::MatrixXd& U, const SpMat& M,
                                      const Eigen::VectorXd& t);

/// Flip eigenvector signs so the entry of largest magnitude is positive.
void fix_sign(Eigen::MatrixXd& vectors);

} // namespace igam
