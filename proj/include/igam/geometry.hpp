#pragma once

#include "igam/space.hpp"

#include <Eigen/Dense>

namespace igam {

/// Point evaluation of a geometry map: physical point, Jacobian and the
/// parametric second derivatives of each map component.
struct GeometryEval {
    Eigen::VectorXd x;                  ///< physical point (d)
    Eigen::MatrixXd jacobian;           ///< d x d
    std::vector<Eigen::MatrixXd> hess;  ///< per component, d x d
    double det = 0.0;
};

/// Physical derivatives of mapped basis functions at one point.
struct PhysEval {
    std::vector<int> indices;
    Eigen::VectorXd values;
    Eigen::MatrixXd grad;               ///< n_active x d
    std::vector<Eigen::MatrixXd> hess;  ///< n_active of d x d (order >= 2)
};

/// NURBS parametrization of a patch: control points and weights over a
/// tensor spline space. Unit weights give a polynomial B-spline map.
struct GeometryMap {
    TensorSplineSpace space;
    Eigen::MatrixXd control_points; ///< space.dim() x d
    Eigen::VectorXd weights;        ///< space.dim(), all positive

    int dim() const { return space.parametric_dim(); }

    /// Map, Jacobian and second derivatives at a parametric point.
    /// Throws on nonpositive Jacobian determinant.
    GeometryEval eval(const std::array<double, 2>& zeta, int order = 2) const;

    /// Physical point only.
    Eigen::VectorXd point(const std::array<double, 2>& zeta) const;
};

/// Affine/bilinear 1D map of [0,1] onto [a,b] with degree-1 basis.
GeometryMap make_line_geometry(double a, double b);

/// Bilinear map onto the quadrilateral with corners (x0,y0)..(x1,y1)
/// (axis-aligned rectangle).
GeometryMap make_rectangle_geometry(double x0, double y0, double x1, double y1);

/// Exact NURBS annulus sector: 90-degree arc (quadratic, middle weight
/// sqrt(2)/2) times a linear radial direction from r0 to r1.
GeometryMap make_annulus_sector_geometry(double r0, double r1);

/// Insert knots into one direction, updating control points and weights so
/// the mapped geometry is unchanged.
GeometryMap insert_knots(const GeometryMap& map, int dir, const std::vector<double>& new_knots);

/// Bisect every span in every direction (geometry preserved).
GeometryMap h_refine(const GeometryMap& map);

/// Chain rule: physical gradients and Hessians of mapped basis functions
/// from their parametric derivatives and the geometry evaluation.
PhysEval physical_derivatives(const SpaceEval& basis, const GeometryEval& geo, int order);

} // namespace igam
