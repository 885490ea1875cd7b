#pragma once

#include "igam/multipatch.hpp"

#include <Eigen/Sparse>
#include <functional>

namespace igam {

using SpMat = Eigen::SparseMatrix<double>;

/// Constants and scaling order of the hybrid penalty
/// c_h = C_BC c_BC + sum_m C^m c^m + C_CP c_CP. `half_order` is n (1 for
/// second order problems, 2 for plates); interface_constants[m-1] is C^m for
/// the m-th normal derivative jump, m = 1..2.
struct PenaltyConfig {
    int half_order = 1;
    std::vector<double> interface_constants;
    double boundary_constant = 0.0;
    double crosspoint_constant = 0.0;

    /// All constants equal to C, derivative orders m = 1..min(degree-1, 2).
    static PenaltyConfig uniform(double C, int half_order, int degree);

    void validate() const; ///< throws std::invalid_argument
};

SpMat assemble_mass(const MultiPatch& mp, int ncomp = 1, int quad_pts = -1);
SpMat assemble_stiffness_laplace(const MultiPatch& mp, int quad_pts = -1);

/// Plane strain, sigma = 2 mu eps + lambda tr(eps) I. Throws for nu >= 0.5.
SpMat assemble_stiffness_elasticity(const MultiPatch& mp, double E, double nu, int quad_pts = -1);

/// Bending form: integral of D^2 u : D^2 v. Requires degree >= 2.
SpMat assemble_bending(const MultiPatch& mp, int quad_pts = -1);

Eigen::VectorXd assemble_load(const MultiPatch& mp,
                              const std::function<double(const Eigen::VectorXd&)>& f,
                              int quad_pts = -1);

/// Offsets of each mortar space in the stacked multiplier layout; the last
/// entry is the total scalar multiplier dimension.
std::vector<int> multiplier_offsets(const std::vector<MortarSpace>& mortar);

/// Mortar coupling B(i,j) = integral over gamma_l of psi_i [phi_j].
/// Vector problems repeat the scalar block per component.
SpMat assemble_mortar_coupling(const MultiPatch& mp, const std::vector<MortarSpace>& mortar,
                               int ncomp = 1);

/// Penalty in factored form P = R^T diag(weights) R: each row of `rows` is
/// one penalized functional (an elementwise mean or a point evaluation), the
/// weight carries the penalty constant and the mesh-dependent scaling. The
/// factored form lets solvers avoid assembling the badly scaled product.
struct PenaltyTerms {
    SpMat rows; ///< nterms x ndof
    Eigen::VectorXd weights;

    int count() const { return static_cast<int>(rows.rows()); }
    void append(const PenaltyTerms& other);
};

SpMat penalty_matrix(const PenaltyTerms& terms);

/// Interface penalty: elementwise means of normal derivative jumps plus
/// crosspoint evaluations at interface endpoints.
PenaltyTerms interface_penalty_terms(const MultiPatch& mp, const PenaltyConfig& cfg);
SpMat assemble_interface_penalty(const MultiPatch& mp, const PenaltyConfig& cfg);

/// Boundary penalty on the sides tagged penalized (first normal derivative).
PenaltyTerms boundary_penalty_terms(const MultiPatch& mp, const PenaltyConfig& cfg);
SpMat assemble_boundary_penalty(const MultiPatch& mp, const PenaltyConfig& cfg);

/// Elasticity variants: the normal derivative is replaced by the traction
/// sigma(u) n, jumped componentwise.
PenaltyTerms interface_penalty_terms_elasticity(const MultiPatch& mp, const PenaltyConfig& cfg,
                                                double E, double nu);
PenaltyTerms boundary_penalty_terms_elasticity(const MultiPatch& mp, const PenaltyConfig& cfg,
                                               double E, double nu);
SpMat assemble_interface_penalty_elasticity(const MultiPatch& mp, const PenaltyConfig& cfg,
                                            double E, double nu);
SpMat assemble_boundary_penalty_elasticity(const MultiPatch& mp, const PenaltyConfig& cfg,
                                           double E, double nu);

/// Nitsche consistency terms for the bending form: interface terms
/// -({d_nn u}[d_n v] + [d_n u]{d_nn v}) and the analogous one-sided terms on
/// dirichlet+penalized boundary sides.
SpMat assemble_biharmonic_consistency(const MultiPatch& mp, int quad_pts = -1);

/// Restriction of the global dof set after strong essential conditions.
struct DofReduction {
    int full_dim = 0;
    std::vector<int> keep; ///< kept global dofs, ascending

    int dim() const { return static_cast<int>(keep.size()); }
    SpMat reduce_matrix(const SpMat& A) const; ///< keep rows and columns
    SpMat reduce_cols(const SpMat& B) const;   ///< keep columns only
    Eigen::VectorXd reduce_vector(const Eigen::VectorXd& v) const;
    Eigen::VectorXd expand(const Eigen::VectorXd& v) const; ///< zeros elsewhere
};

/// Eliminate u = 0 on dirichlet sides (boundary dof layer, all components).
/// `strong_normal` additionally removes the second layer to impose
/// d_n u = 0 strongly; requires dirichlet sides free of interfaces.
DofReduction essential_bc(const MultiPatch& mp, int ncomp = 1, bool strong_normal = false);

} // namespace igam
