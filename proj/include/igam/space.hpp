#pragma once

#include "igam/knots.hpp"

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace igam {

/// Values of all active tensor-product basis functions at one parametric
/// point, with parametric gradients and Hessians up to the requested order.
struct SpaceEval {
    std::vector<int> indices;           ///< global basis indices, (p1+1)*(p2+1) entries
    Eigen::VectorXd values;
    Eigen::MatrixXd grad;               ///< n_active x d
    std::vector<Eigen::MatrixXd> hess;  ///< n_active entries of d x d (order >= 2 only)
};

/// Tensor-product B-spline space in 1 or 2 parametric directions on (0,1)^d.
class TensorSplineSpace {
public:
    TensorSplineSpace() = default;
    explicit TensorSplineSpace(KnotVector kv);
    TensorSplineSpace(KnotVector kv_x, KnotVector kv_y);

    int parametric_dim() const { return static_cast<int>(kvs_.size()); }
    int dim() const;
    const KnotVector& knot_vector(int dir) const { return kvs_.at(dir); }
    int degree(int dir) const { return kvs_.at(dir).degree; }

    /// Flattened tensor index, first direction fastest.
    int index(int i, int j = 0) const;

    /// All active basis functions at zeta with derivatives up to `order`.
    SpaceEval eval(const std::array<double, 2>& zeta, int order) const;

    /// Greville points of the tensor basis (parametric), in index order.
    std::vector<std::array<double, 2>> greville() const;

    TensorSplineSpace refined() const;

private:
    std::vector<KnotVector> kvs_;
};

} // namespace igam
