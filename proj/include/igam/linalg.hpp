#pragma once

#include "igam/assembly.hpp"

namespace igam {

/// Orthonormal basis of ker(B) as columns (dense SVD). Throws if the rows of
/// B are linearly dependent (degenerate constraints). B with zero rows gives
/// the identity.
Eigen::MatrixXd nullspace_basis(const SpMat& B);

struct SaddleSolution {
    Eigen::VectorXd u;
    Eigen::VectorXd multiplier;
};

/// Solve the saddle point system [A B^T; B 0] (u, tau) = (rhs, crhs);
/// an empty `crhs` means homogeneous constraints.
SaddleSolution solve_saddle_source(const SpMat& A, const SpMat& B, const Eigen::VectorXd& rhs,
                                   const Eigen::VectorXd& crhs = Eigen::VectorXd());

/// Solve (A0 + R^T diag(w) R) u = rhs subject to B u = crhs, with the penalty
/// part kept factored: the augmented system
///   [A0 B^T R^T; B 0 0; R 0 -diag(1/w)]
/// has entries of moderate size even for large penalty weights, avoiding the
/// roundoff floor of the assembled product for stiff penalties.
/// `prhs`, if nonempty, is the right-hand side of the penalty rows (used to
/// lift inhomogeneous boundary data through the penalized functionals).
SaddleSolution solve_saddle_source_penalized(const SpMat& A0, const SpMat& B,
                                             const PenaltyTerms& penalty,
                                             const Eigen::VectorXd& rhs,
                                             const Eigen::VectorXd& crhs = Eigen::VectorXd(),
                                             const Eigen::VectorXd& prhs = Eigen::VectorXd());

struct EigenSolution {
    Eigen::VectorXd values;  ///< ascending
    Eigen::MatrixXd vectors; ///< M-orthonormal, lifted to the unconstrained layout
};

/// Generalized eigenproblem A u = lambda M u restricted to ker(B),
/// via the projected dense pencil (Z^T A Z, Z^T M Z).
EigenSolution solve_constrained_eigen(const SpMat& A, const SpMat& M, const SpMat& B);

struct SaddleEigenResult {
    Eigen::VectorXd values; ///< finite real eigenvalues, ascending
    int spurious_count = 0; ///< infinite (beta ~ 0) eigenvalues of the pencil
};

/// QZ on the full saddle point pencil ([A B^T; B 0], [M 0; 0 0]).
SaddleEigenResult solve_saddle_eigen(const SpMat& A, const SpMat& M, const SpMat& B);

/// Spectral condition number of a symmetric positive definite matrix.
/// Throws std::runtime_error if the matrix is not positive definite.
double condition_estimate(const SpMat& S);

} // namespace igam
