#pragma once

#include "igam/errors.hpp"
#include "igam/linalg.hpp"

namespace igam {

enum class Operator { Laplace, Elasticity, Bending };

struct ProblemOptions {
    Operator op = Operator::Laplace;
    double penalty = 0.0;       ///< uniform constant C (0 disables all penalties)
    double E = 1.0;             ///< elasticity
    double nu = 0.3;
    bool strong_normal = false; ///< plates: impose d_n u = 0 strongly
    bool consistency = true;    ///< plates: Nitsche consistency terms
    int quad_pts = -1;
};

int operator_components(Operator op);
int operator_half_order(Operator op);

/// Stiffness (with penalties and consistency terms), mass and mortar
/// coupling in the full coefficient layout, plus the essential boundary
/// reduction of the problem. dim_V counts the kept dofs.
struct AssembledProblem {
    SpMat A;               ///< stiffness including penalty contributions
    SpMat A0;              ///< stiffness without the penalty part
    PenaltyTerms penalty;  ///< A = A0 + R^T diag(w) R
    SpMat M, B;
    DofReduction reduction;
    int dim_V = 0;
    int dim_M = 0;

    SpMat A_reduced() const { return reduction.reduce_matrix(A); }
    SpMat A0_reduced() const { return reduction.reduce_matrix(A0); }
    SpMat M_reduced() const { return reduction.reduce_matrix(M); }
    SpMat B_reduced() const { return reduction.reduce_cols(B); }
    PenaltyTerms penalty_reduced() const {
        return {reduction.reduce_cols(penalty.rows), penalty.weights};
    }
};

AssembledProblem assemble_problem(const MultiPatch& mp, const ProblemOptions& opt);

struct EigenResult {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors; ///< reduced layout, M-orthonormal columns
    DofReduction reduction;
    int dim_V = 0;
    int dim_M = 0;
    int physical_count = 0; ///< leading eigenvalues kept by the outlier filter
};

EigenResult solve_eigenproblem(const MultiPatch& mp, const ProblemOptions& opt);

struct SourceResult {
    Eigen::VectorXd u; ///< full (unreduced) coefficient layout
    int dim_V = 0;
    int dim_M = 0;
};

/// Source problem A u = f with mortar constraints (saddle point solve).
SourceResult solve_source(const MultiPatch& mp, const ProblemOptions& opt, const ScalarFn& f);

/// Source problem with inhomogeneous Dirichlet data: the eliminated boundary
/// coefficients are fixed to the Greville interpolant of `g` (exact for
/// splines of degree <= p) and lifted into the right-hand side.
SourceResult solve_source_lifted(const MultiPatch& mp, const ProblemOptions& opt,
                                 const ScalarFn& f, const ScalarFn& g);

} // namespace igam
