#include "igam/presets.hpp"
#include "igam/problems.hpp"

#include <doctest.h>

#include <cmath>

using namespace igam;

namespace {
MultiPatch preset(const std::string& name, int p, int n, BoundaryMode bc) {
    PresetSpec spec;
    spec.name = name;
    spec.degree = p;
    spec.elements = n;
    spec.bc = bc;
    return make_preset(spec);
}
} // namespace

TEST_CASE("1d Dirichlet Laplace eigenvalues approximate n^2 pi^2") {
    const MultiPatch mp = preset("unit-line-1patch", 3, 16, BoundaryMode::Dirichlet);
    ProblemOptions opt;
    const EigenResult res = solve_eigenproblem(mp, opt);
    for (int i = 0; i < 4; ++i) {
        const double exact = (i + 1.0) * (i + 1.0) * M_PI * M_PI;
        CHECK(res.values[i] == doctest::Approx(exact).epsilon(1e-4));
    }
}

TEST_CASE("two-patch mortar coupling reproduces single-patch eigenvalues") {
    const MultiPatch mp = preset("unit-line-2patch", 2, 8, BoundaryMode::Dirichlet);
    ProblemOptions opt;
    const EigenResult res = solve_eigenproblem(mp, opt);
    CHECK(res.dim_M == 1);
    for (int i = 0; i < 4; ++i) {
        const double exact = (i + 1.0) * (i + 1.0) * M_PI * M_PI;
        CHECK(res.values[i] == doctest::Approx(exact).epsilon(1e-3));
    }
    // eigenvectors are mass-orthonormal in the reduced layout
    CHECK(res.vectors.cols() == res.dim_V - res.dim_M);
}

TEST_CASE("pure Neumann Laplace has one zero mode") {
    const MultiPatch mp = preset("unit-line-1patch", 2, 10, BoundaryMode::Neumann);
    ProblemOptions opt;
    const EigenResult res = solve_eigenproblem(mp, opt);
    CHECK(std::abs(res.values[0]) < 1e-10);
    CHECK(res.values[1] == doctest::Approx(M_PI * M_PI).epsilon(1e-4));
}

TEST_CASE("1d source problem converges to sin(pi x)") {
    const MultiPatch mp = preset("unit-line-2patch", 2, 8, BoundaryMode::Dirichlet);
    ProblemOptions opt;
    const SourceResult sol = solve_source(mp, opt, [](const Eigen::VectorXd& x) {
        return M_PI * M_PI * std::sin(M_PI * x[0]);
    });
    const ErrorNorms e = error_norms(mp, sol.u, [](const Eigen::VectorXd& x) {
        return std::sin(M_PI * x[0]);
    });
    CHECK(e.l2 < 1e-4);
}

TEST_CASE("penalty lowers the largest normalized eigenvalue in 1d") {
    PresetSpec spec;
    spec.name = "unit-line-2patch";
    spec.degree = 2;
    spec.elements = 12;
    spec.bc = BoundaryMode::Neumann;
    spec.penalize_neumann = true;
    const MultiPatch mp = make_preset(spec);
    ProblemOptions plain;
    const EigenResult unpen = solve_eigenproblem(mp, plain);
    ProblemOptions pen = plain;
    pen.penalty = 100.0;
    const EigenResult withpen = solve_eigenproblem(mp, pen);
    // normalized against (n pi)^2, skipping the zero mode
    const auto top_norm = [](const EigenResult& r) {
        double worst = 0.0;
        const int phys = r.physical_count;
        for (int i = 1; i < phys; ++i) {
            const double exact = i * M_PI * i * M_PI;
            worst = std::max(worst, r.values[i] / exact);
        }
        return worst;
    };
    CHECK(top_norm(withpen) < top_norm(unpen));
}

TEST_CASE("elasticity eigenproblem on a clamped strip has positive spectrum") {
    const MultiPatch mp = preset("rect-2patch-matching", 2, 3, BoundaryMode::ClampedWest);
    ProblemOptions opt;
    opt.op = Operator::Elasticity;
    opt.penalty = 10.0;
    const EigenResult res = solve_eigenproblem(mp, opt);
    CHECK(res.values[0] > 0.0);
    for (int i = 1; i < res.values.size(); ++i) CHECK(res.values[i] >= res.values[i - 1] - 1e-9);
}

TEST_CASE("plate eigenproblem on the clamped square is positive") {
    PresetSpec spec;
    spec.name = "unit-square-1patch";
    spec.degree = 3;
    spec.elements = 4;
    spec.bc = BoundaryMode::Dirichlet;
    spec.penalize_dirichlet = true;
    const MultiPatch mp = make_preset(spec);
    ProblemOptions opt;
    opt.op = Operator::Bending;
    opt.penalty = 100.0;
    const EigenResult res = solve_eigenproblem(mp, opt);
    // first clamped plate eigenvalue on the unit square is about 1294.934
    CHECK(res.values[0] == doctest::Approx(1294.934).epsilon(0.05));
}
