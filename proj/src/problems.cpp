#include "igam/problems.hpp"

#include "igam/spectrum.hpp"

#include <stdexcept>

namespace igam {

int operator_components(Operator op) { return op == Operator::Elasticity ? 2 : 1; }

int operator_half_order(Operator op) { return op == Operator::Bending ? 2 : 1; }

AssembledProblem assemble_problem(const MultiPatch& mp, const ProblemOptions& opt) {
    const int ncomp = operator_components(opt.op);
    const int n = operator_half_order(opt.op);
    const int degree = mp.patches.front().space.degree(0);

    SpMat A;
    switch (opt.op) {
        case Operator::Laplace: A = assemble_stiffness_laplace(mp, opt.quad_pts); break;
        case Operator::Elasticity:
            A = assemble_stiffness_elasticity(mp, opt.E, opt.nu, opt.quad_pts);
            break;
        case Operator::Bending:
            A = assemble_bending(mp, opt.quad_pts);
            if (opt.consistency) A = A + assemble_biharmonic_consistency(mp, opt.quad_pts);
            break;
    }

    PenaltyTerms penalty;
    if (opt.penalty > 0.0) {
        const PenaltyConfig cfg = PenaltyConfig::uniform(opt.penalty, n, degree);
        if (opt.op == Operator::Elasticity) {
            penalty = interface_penalty_terms_elasticity(mp, cfg, opt.E, opt.nu);
            penalty.append(boundary_penalty_terms_elasticity(mp, cfg, opt.E, opt.nu));
        } else {
            penalty = interface_penalty_terms(mp, cfg);
            penalty.append(boundary_penalty_terms(mp, cfg));
        }
    }

    std::vector<MortarSpace> mortar;
    for (int l = 0; l < static_cast<int>(mp.interfaces.size()); ++l)
        mortar.push_back(build_mortar_space(mp, l));

    AssembledProblem out;
    out.reduction = essential_bc(mp, ncomp, opt.strong_normal);
    out.A0 = A;
    out.penalty = std::move(penalty);
    out.A = out.penalty.count() > 0 ? SpMat(A + penalty_matrix(out.penalty)) : std::move(A);
    out.M = assemble_mass(mp, ncomp, opt.quad_pts);
    out.B = assemble_mortar_coupling(mp, mortar, ncomp);
    out.dim_V = out.reduction.dim();
    out.dim_M = static_cast<int>(out.B.rows());
    return out;
}

EigenResult solve_eigenproblem(const MultiPatch& mp, const ProblemOptions& opt) {
    const AssembledProblem ap = assemble_problem(mp, opt);
    EigenSolution es = solve_constrained_eigen(ap.A_reduced(), ap.M_reduced(), ap.B_reduced());
    fix_sign(es.vectors);
    EigenResult out;
    out.values = std::move(es.values);
    out.vectors = std::move(es.vectors);
    out.reduction = ap.reduction;
    out.dim_V = ap.dim_V;
    out.dim_M = ap.dim_M;
    out.physical_count = filter_split(out.values);
    return out;
}

SourceResult solve_source(const MultiPatch& mp, const ProblemOptions& opt, const ScalarFn& f) {
    if (opt.op == Operator::Elasticity)
        throw std::invalid_argument("solve_source: scalar right-hand sides only");
    const AssembledProblem ap = assemble_problem(mp, opt);
    const Eigen::VectorXd rhs = ap.reduction.reduce_vector(assemble_load(mp, f, opt.quad_pts));
    const SaddleSolution ss = solve_saddle_source_penalized(ap.A0_reduced(), ap.B_reduced(),
                                                            ap.penalty_reduced(), rhs);
    SourceResult out;
    out.u = ap.reduction.expand(ss.u);
    out.dim_V = ap.dim_V;
    out.dim_M = ap.dim_M;
    return out;
}

SourceResult solve_source_lifted(const MultiPatch& mp, const ProblemOptions& opt,
                                 const ScalarFn& f, const ScalarFn& g) {
    if (opt.op == Operator::Elasticity)
        throw std::invalid_argument("solve_source_lifted: scalar right-hand sides only");
    const AssembledProblem ap = assemble_problem(mp, opt);

    // coefficients of the lifting: interpolant of g on the eliminated dofs
    const Eigen::VectorXd gi = interpolate(mp, g);
    Eigen::VectorXd lift = gi - ap.reduction.expand(ap.reduction.reduce_vector(gi));

    const Eigen::VectorXd load = assemble_load(mp, f, opt.quad_pts);
    const Eigen::VectorXd rhs =
        ap.reduction.reduce_vector(load - Eigen::VectorXd(ap.A0 * lift));
    const Eigen::VectorXd crhs = -Eigen::VectorXd(ap.B * lift);
    Eigen::VectorXd prhs;
    if (ap.penalty.count() > 0) prhs = -Eigen::VectorXd(ap.penalty.rows * lift);
    const SaddleSolution ss = solve_saddle_source_penalized(
        ap.A0_reduced(), ap.B_reduced(), ap.penalty_reduced(), rhs, crhs, prhs);

    SourceResult out;
    out.u = ap.reduction.expand(ss.u) + lift;
    out.dim_V = ap.dim_V;
    out.dim_M = ap.dim_M;
    return out;
}

} // namespace igam
