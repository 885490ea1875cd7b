#pragma once

#include "igam/multipatch.hpp"

#include <functional>

namespace igam {

/// Value and derivatives of a discrete scalar field at one parametric point.
struct FieldValue {
    double value = 0.0;
    Eigen::VectorXd grad; ///< physical gradient
    Eigen::MatrixXd hess; ///< physical Hessian (order >= 2)
};

/// Evaluate the field with patch-local coefficients `coeffs` on `patch`.
FieldValue eval_field(const Patch& patch, const Eigen::VectorXd& coeffs,
                      const std::array<double, 2>& zeta, int order = 1);

/// Patch-local slice of stacked scalar coefficients.
Eigen::VectorXd patch_coefficients(const MultiPatch& mp, const Eigen::VectorXd& coeffs, int k);

/// Greville interpolant of a smooth function of the physical coordinates,
/// one patch. Returns patch-local coefficients.
Eigen::VectorXd interpolate_on_patch(const Patch& patch,
                                     const std::function<double(const Eigen::VectorXd&)>& f);

/// Greville interpolants on all patches, stacked in the global scalar layout.
Eigen::VectorXd interpolate(const MultiPatch& mp,
                            const std::function<double(const Eigen::VectorXd&)>& f);

} // namespace igam
