#pragma once

#include "igam/geometry.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace igam {

/// Patch side, identified by the fixed parametric coordinate.
/// 1D patches use West (zeta=0) and East (zeta=1).
enum class Side { West = 0, East = 1, South = 2, North = 3 };

std::array<double, 2> side_point(Side s, double t);

/// Parametric direction running along the side (2D).
int side_tangent_dir(Side s);

/// Outward parametric normal direction of the side.
Eigen::Vector2d side_parametric_normal(Side s);

struct SideTag {
    bool dirichlet = false; ///< u = 0 imposed strongly (Gamma_D)
    bool penalized = false; ///< member of the penalty boundary Gamma_BC
};

struct Patch {
    GeometryMap geometry;
    TensorSplineSpace space; ///< discrete scalar space on the same parametric domain
};

struct InterfaceSpec {
    int slave_patch = 0;
    Side slave_side = Side::East;
    int master_patch = 0;
    Side master_side = Side::West;
};

struct Interface {
    int id = 0;
    InterfaceSpec spec;
    bool reversed = false;                  ///< correspondence s -> 1-s
    std::vector<double> element_arclength;  ///< per slave trace element
    double length = 0.0;                    ///< total slave arclength (0 for point interfaces)
};

struct TopologyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Multi-patch domain: patches, slave/master interfaces, boundary tags and
/// crosspoints. Immutable after build_multipatch.
struct MultiPatch {
    std::vector<Patch> patches;
    std::vector<Interface> interfaces;
    std::vector<std::array<SideTag, 4>> tags;
    std::vector<Eigen::VectorXd> crosspoints;
    double tolerance = 0.0;

    int dim() const { return patches.front().geometry.dim(); }
    int num_patches() const { return static_cast<int>(patches.size()); }

    /// Scalar dof layout: offset of each patch and the total dimension.
    std::vector<int> patch_offsets() const;
    int total_dim() const;

    /// Knot vector of the slave trace space of interface l.
    const KnotVector& slave_trace_kv(int l) const;

    /// Global scalar dof of patch `k` carrying the j-th trace basis function
    /// of `side` (boundary dof layer; `layer` = 0 on the side, 1 next to it).
    int side_layer_dof(int k, Side side, int j, int layer = 0) const;

    /// Whether `side` of patch `k` is used by any interface.
    bool side_on_interface(int k, Side side) const;

    /// Physical arclength of a boundary side element [a,b] in trace parameter.
    double side_arclength(int k, Side side, double a, double b) const;
};

MultiPatch build_multipatch(std::vector<Patch> patches, const std::vector<InterfaceSpec>& specs,
                            std::vector<std::array<SideTag, 4>> tags, double tol = -1.0);

/// Mortar multiplier space on an interface: slave trace space of the same
/// degree with endpoint degree reduction (first/last basis function dropped).
struct MortarSpace {
    int interface_id = 0;
    bool point_interface = false; ///< 1D: single point-value multiplier
    KnotVector trace;
    bool reduce_begin = true;
    bool reduce_end = true;

    int dim() const;

    /// Multiplier basis values at trace parameter s: pairs of
    /// (multiplier index, value), dropped end functions excluded.
    std::vector<std::pair<int, double>> eval(double s) const;
};

enum class EndpointReduction { All, CrosspointsOnly };

MortarSpace build_mortar_space(const MultiPatch& mp, int l,
                               EndpointReduction rule = EndpointReduction::All);

/// One quadrature node on an interface, mapped to both sides.
struct InterfaceNode {
    double s = 0.0; ///< slave trace parameter
    std::array<double, 2> zeta_slave{};
    std::array<double, 2> zeta_master{};
    double weight = 0.0;        ///< physical arclength weight
    Eigen::VectorXd normal;     ///< slave outward unit normal
};

/// Quadrature for one slave trace element: merged slave/master breakpoint
/// segments, each with Gauss points.
struct InterfaceElementRule {
    int elem = 0;
    double a = 0.0, b = 0.0;
    double h_s = 0.0; ///< physical arclength of the slave element
    std::vector<InterfaceNode> nodes;
};

std::vector<InterfaceElementRule> interface_quadrature(const MultiPatch& mp, int l,
                                                       int points_per_segment);

/// Boundary quadrature for one side, grouped per boundary element.
struct BoundaryNode {
    std::array<double, 2> zeta{};
    double weight = 0.0;
    Eigen::VectorXd normal;
};
struct BoundaryElementRule {
    int elem = 0;
    double a = 0.0, b = 0.0;
    double h = 0.0;
    std::vector<BoundaryNode> nodes;
};

std::vector<BoundaryElementRule> boundary_quadrature(const MultiPatch& mp, int k, Side side,
                                                     int points_per_element);

} // namespace igam
