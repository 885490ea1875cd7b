#include "igam/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <stdexcept>

namespace igam {

Eigen::MatrixXd nullspace_basis(const SpMat& B) {
    const int n = static_cast<int>(B.cols());
    if (B.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd Bd(B);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Bd, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double tol = std::max(B.rows(), B.cols()) * 1e-14 * (sv.size() ? sv[0] : 0.0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > tol) ++rank;
    if (rank < B.rows())
        throw std::runtime_error("nullspace_basis: constraint rows are linearly dependent");
    return svd.matrixV().rightCols(n - rank);
}

SaddleSolution solve_saddle_source(const SpMat& A, const SpMat& B, const Eigen::VectorXd& rhs,
                                   const Eigen::VectorXd& crhs) {
    const int n = static_cast<int>(A.rows());
    const int m = static_cast<int>(B.rows());
    SaddleSolution sol;
    if (m == 0) {
        Eigen::SimplicialLDLT<SpMat> ldlt(A);
        if (ldlt.info() != Eigen::Success)
            throw std::runtime_error("solve_saddle_source: factorization failed");
        sol.u = ldlt.solve(rhs);
        // iterative refinement recovers accuracy lost to penalty-induced
        // ill-conditioning
        for (int pass = 0; pass < 2; ++pass)
            sol.u += ldlt.solve(Eigen::VectorXd(rhs - A * sol.u));
        sol.multiplier.resize(0);
        return sol;
    }
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(A.nonZeros() + 2 * B.nonZeros());
    for (int col = 0; col < A.outerSize(); ++col)
        for (SpMat::InnerIterator it(A, col); it; ++it)
            trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    for (int col = 0; col < B.outerSize(); ++col)
        for (SpMat::InnerIterator it(B, col); it; ++it) {
            trip.emplace_back(n + static_cast<int>(it.row()), static_cast<int>(it.col()),
                              it.value());
            trip.emplace_back(static_cast<int>(it.col()), n + static_cast<int>(it.row()),
                              it.value());
        }
    SpMat K(n + m, n + m);
    K.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<SpMat> lu;
    lu.analyzePattern(K);
    lu.factorize(K);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("solve_saddle_source: saddle point system is singular");
    Eigen::VectorXd ext = Eigen::VectorXd::Zero(n + m);
    ext.head(n) = rhs;
    if (crhs.size() > 0) ext.tail(m) = crhs;
    Eigen::VectorXd x = lu.solve(ext);
    // iterative refinement recovers accuracy lost to penalty-induced
    // ill-conditioning
    for (int pass = 0; pass < 3; ++pass)
        x += lu.solve(Eigen::VectorXd(ext - K * x));
    sol.u = x.head(n);
    sol.multiplier = x.tail(m);
    return sol;
}

SaddleSolution solve_saddle_source_penalized(const SpMat& A0, const SpMat& B,
                                             const PenaltyTerms& penalty,
                                             const Eigen::VectorXd& rhs,
                                             const Eigen::VectorXd& crhs,
                                             const Eigen::VectorXd& prhs) {
    const int t = penalty.count();
    if (t == 0) return solve_saddle_source(A0, B, rhs, crhs);
    const int n = static_cast<int>(A0.rows());
    const int m = static_cast<int>(B.rows());
    const SpMat& R = penalty.rows;

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(A0.nonZeros() + 2 * B.nonZeros() + 2 * R.nonZeros() + t);
    for (int col = 0; col < A0.outerSize(); ++col)
        for (SpMat::InnerIterator it(A0, col); it; ++it)
            trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    for (int col = 0; col < B.outerSize(); ++col)
        for (SpMat::InnerIterator it(B, col); it; ++it) {
            trip.emplace_back(n + static_cast<int>(it.row()), static_cast<int>(it.col()),
                              it.value());
            trip.emplace_back(static_cast<int>(it.col()), n + static_cast<int>(it.row()),
                              it.value());
        }
    for (int col = 0; col < R.outerSize(); ++col)
        for (SpMat::InnerIterator it(R, col); it; ++it) {
            trip.emplace_back(n + m + static_cast<int>(it.row()), static_cast<int>(it.col()),
                              it.value());
            trip.emplace_back(static_cast<int>(it.col()), n + m + static_cast<int>(it.row()),
                              it.value());
        }
    for (int i = 0; i < t; ++i) trip.emplace_back(n + m + i, n + m + i, -1.0 / penalty.weights[i]);

    SpMat K(n + m + t, n + m + t);
    K.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<SpMat> lu;
    lu.analyzePattern(K);
    lu.factorize(K);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("solve_saddle_source_penalized: augmented system is singular");
    Eigen::VectorXd ext = Eigen::VectorXd::Zero(n + m + t);
    ext.head(n) = rhs;
    if (crhs.size() > 0) ext.segment(n, m) = crhs;
    if (prhs.size() > 0) ext.tail(t) = prhs;
    Eigen::VectorXd x = lu.solve(ext);
    for (int pass = 0; pass < 2; ++pass)
        x += lu.solve(Eigen::VectorXd(ext - K * x));
    SaddleSolution sol;
    sol.u = x.head(n);
    sol.multiplier = x.segment(n, m);
    return sol;
}

EigenSolution solve_constrained_eigen(const SpMat& A, const SpMat& M, const SpMat& B) {
    const Eigen::MatrixXd Z = nullspace_basis(B);
    const Eigen::MatrixXd Ad = Z.transpose() * Eigen::MatrixXd(A) * Z;
    const Eigen::MatrixXd Md = Z.transpose() * Eigen::MatrixXd(M) * Z;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Ad, Md,
                                                                 Eigen::ComputeEigenvectors |
                                                                     Eigen::Ax_lBx);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("solve_constrained_eigen: eigensolver failed");
    EigenSolution sol;
    sol.values = es.eigenvalues();
    sol.vectors = Z * es.eigenvectors();
    return sol;
}

SaddleEigenResult solve_saddle_eigen(const SpMat& A, const SpMat& M, const SpMat& B) {
    const int n = static_cast<int>(A.rows());
    const int m = static_cast<int>(B.rows());
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n + m, n + m);
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n + m, n + m);
    S.topLeftCorner(n, n) = Eigen::MatrixXd(A);
    S.bottomLeftCorner(m, n) = Eigen::MatrixXd(B);
    S.topRightCorner(n, m) = Eigen::MatrixXd(B).transpose();
    T.topLeftCorner(n, n) = Eigen::MatrixXd(M);

    Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges(S, T, false);
    if (ges.info() != Eigen::Success)
        throw std::runtime_error("solve_saddle_eigen: QZ iteration failed");
    const auto alphas = ges.alphas();
    const auto betas = ges.betas();
    double beta_max = 0.0;
    for (int i = 0; i < betas.size(); ++i) beta_max = std::max(beta_max, std::abs(betas[i]));
    const double tol = 1e-8 * beta_max;

    SaddleEigenResult out;
    std::vector<double> finite;
    for (int i = 0; i < betas.size(); ++i) {
        if (std::abs(betas[i]) <= tol) {
            ++out.spurious_count;
            continue;
        }
        const std::complex<double> lam = alphas[i] / betas[i];
        if (std::abs(lam.imag()) > 1e-8 * (1.0 + std::abs(lam.real())) ||
            std::abs(lam) > 1e12) {
            ++out.spurious_count;
            continue;
        }
        finite.push_back(lam.real());
    }
    std::sort(finite.begin(), finite.end());
    out.values = Eigen::Map<Eigen::VectorXd>(finite.data(), static_cast<int>(finite.size()));
    return out;
}

double condition_estimate(const SpMat& S) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(S),
                                                      Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("condition_estimate: eigensolver failed");
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (lo <= 0.0)
        throw std::runtime_error("condition_estimate: matrix is not positive definite");
    return hi / lo;
}

} // namespace igam
