#include "igam/linalg.hpp"

#include <doctest.h>

using namespace igam;

namespace {
SpMat sparse(const Eigen::MatrixXd& D) {
    SpMat S(D.rows(), D.cols());
    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < D.rows(); ++i)
        for (int j = 0; j < D.cols(); ++j)
            if (D(i, j) != 0.0) trip.emplace_back(i, j, D(i, j));
    S.setFromTriplets(trip.begin(), trip.end());
    return S;
}
} // namespace

TEST_CASE("nullspace of a single constraint row") {
    Eigen::MatrixXd B(1, 3);
    B << 1.0, 1.0, 0.0;
    const Eigen::MatrixXd Z = nullspace_basis(sparse(B));
    CHECK(Z.cols() == 2);
    CHECK((B * Z).norm() == doctest::Approx(0.0).epsilon(1e-13));
    CHECK((Z.transpose() * Z - Eigen::MatrixXd::Identity(2, 2)).norm() ==
          doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("degenerate constraints are rejected") {
    Eigen::MatrixXd B(2, 3);
    B << 1.0, 1.0, 0.0, 2.0, 2.0, 0.0;
    CHECK_THROWS(nullspace_basis(sparse(B)));
}

TEST_CASE("saddle point source solve enforces the constraint") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(3, 3) * 2.0;
    Eigen::MatrixXd B(1, 3);
    B << 1.0, -1.0, 0.0;
    Eigen::VectorXd rhs(3);
    rhs << 1.0, 3.0, 2.0;
    const SaddleSolution sol = solve_saddle_source(sparse(A), sparse(B), rhs);
    CHECK(sol.u[0] == doctest::Approx(sol.u[1]));
    CHECK(sol.u[2] == doctest::Approx(1.0));
    CHECK(sol.u[0] == doctest::Approx(1.0)); // (1+3)/2 split evenly / 2
    CHECK(sol.multiplier.size() == 1);
}

TEST_CASE("factored penalty solve matches the assembled penalty matrix") {
    Eigen::MatrixXd A(3, 3);
    A << 4.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0;
    Eigen::MatrixXd B(1, 3);
    B << 1.0, 0.0, -1.0;
    Eigen::MatrixXd R(2, 3);
    R << 1.0, -1.0, 0.0, 0.0, 1.0, -1.0;
    PenaltyTerms pen{sparse(R), Eigen::Vector2d(1e6, 3.0)};
    Eigen::VectorXd rhs(3);
    rhs << 1.0, 2.0, -1.0;

    const SpMat Apen = sparse(A) + penalty_matrix(pen);
    const SaddleSolution direct = solve_saddle_source(Apen, sparse(B), rhs);
    const SaddleSolution factored =
        solve_saddle_source_penalized(sparse(A), sparse(B), pen, rhs);
    CHECK((direct.u - factored.u).norm() == doctest::Approx(0.0).epsilon(1e-8));
    // empty penalty falls back to the plain saddle solve
    const SaddleSolution plain = solve_saddle_source_penalized(
        sparse(A), sparse(B), PenaltyTerms{SpMat(0, 3), Eigen::VectorXd()}, rhs);
    const SaddleSolution ref = solve_saddle_source(sparse(A), sparse(B), rhs);
    CHECK((plain.u - ref.u).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("unconstrained saddle solve falls back to a direct factorization") {
    Eigen::MatrixXd A(2, 2);
    A << 2.0, 1.0, 1.0, 2.0;
    Eigen::VectorXd rhs(2);
    rhs << 3.0, 3.0;
    const SaddleSolution sol = solve_saddle_source(sparse(A), SpMat(0, 2), rhs);
    CHECK(sol.u[0] == doctest::Approx(1.0));
    CHECK(sol.u[1] == doctest::Approx(1.0));
}

TEST_CASE("constrained eigenproblem on a diagonal pencil") {
    Eigen::MatrixXd A = Eigen::VectorXd::LinSpaced(3, 1.0, 3.0).asDiagonal();
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(3, 3);
    Eigen::MatrixXd B(1, 3);
    B << 0.0, 0.0, 1.0; // remove the third axis
    const EigenSolution sol = solve_constrained_eigen(sparse(A), sparse(M), sparse(B));
    REQUIRE(sol.values.size() == 2);
    CHECK(sol.values[0] == doctest::Approx(1.0));
    CHECK(sol.values[1] == doctest::Approx(2.0));
    // vectors lifted into the full space, M-orthonormal
    CHECK((sol.vectors.transpose() * M * sol.vectors - Eigen::MatrixXd::Identity(2, 2)).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sol.vectors.row(2).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("saddle eigenproblem classifies spurious modes") {
    Eigen::MatrixXd A = Eigen::VectorXd::LinSpaced(4, 1.0, 4.0).asDiagonal();
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(4, 4);
    Eigen::MatrixXd B(1, 4);
    B << 1.0, 0.0, 0.0, 0.0;
    const SaddleEigenResult res = solve_saddle_eigen(sparse(A), sparse(M), sparse(B));
    CHECK(res.spurious_count == 2); // twice the multiplier dimension
    REQUIRE(res.values.size() == 3);
    CHECK(res.values[0] == doctest::Approx(2.0));
    CHECK(res.values[2] == doctest::Approx(4.0));
}

TEST_CASE("condition estimate") {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2, 2);
    D(0, 0) = 1.0;
    D(1, 1) = 4.0;
    CHECK(condition_estimate(sparse(D)) == doctest::Approx(4.0));
    D(0, 0) = -1.0;
    CHECK_THROWS(condition_estimate(sparse(D)));
}
