#include "igam/field.hpp"

#include <Eigen/Dense>

namespace igam {

FieldValue eval_field(const Patch& patch, const Eigen::VectorXd& coeffs,
                      const std::array<double, 2>& zeta, int order) {
    const int d = patch.geometry.dim();
    SpaceEval basis = patch.space.eval(zeta, order);
    GeometryEval geo = patch.geometry.eval(zeta, order);
    PhysEval phys = physical_derivatives(basis, geo, order);

    FieldValue out;
    out.grad = Eigen::VectorXd::Zero(d);
    if (order >= 2) out.hess = Eigen::MatrixXd::Zero(d, d);
    for (int a = 0; a < static_cast<int>(basis.indices.size()); ++a) {
        const double c = coeffs[basis.indices[a]];
        out.value += c * basis.values[a];
        if (order >= 1) out.grad += c * phys.grad.row(a).transpose();
        if (order >= 2) out.hess += c * phys.hess[a];
    }
    return out;
}

Eigen::VectorXd patch_coefficients(const MultiPatch& mp, const Eigen::VectorXd& coeffs, int k) {
    const std::vector<int> off = mp.patch_offsets();
    return coeffs.segment(off[k], mp.patches[k].space.dim());
}

Eigen::VectorXd interpolate_on_patch(const Patch& patch,
                                     const std::function<double(const Eigen::VectorXd&)>& f) {
    const std::vector<std::array<double, 2>> pts = patch.space.greville();
    const int n = patch.space.dim();
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
        SpaceEval basis = patch.space.eval(pts[i], 0);
        for (int a = 0; a < static_cast<int>(basis.indices.size()); ++a)
            C(i, basis.indices[a]) = basis.values[a];
        rhs[i] = f(patch.geometry.point(pts[i]));
    }
    // collocation at Greville points is nonsingular for open knot vectors
    return C.partialPivLu().solve(rhs);
}

Eigen::VectorXd interpolate(const MultiPatch& mp,
                            const std::function<double(const Eigen::VectorXd&)>& f) {
    Eigen::VectorXd out(mp.total_dim());
    const std::vector<int> off = mp.patch_offsets();
    for (int k = 0; k < mp.num_patches(); ++k)
        out.segment(off[k], mp.patches[k].space.dim()) = interpolate_on_patch(mp.patches[k], f);
    return out;
}

} // namespace igam
