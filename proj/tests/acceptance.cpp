// End-to-end acceptance checks for the mortar/penalty solver. Each check
// prints exactly one PASS/FAIL line; the exit code is the number of failures.

#include "igam/presets.hpp"
#include "igam/problems.hpp"
#include "igam/spectrum.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace igam;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s: criterion %2d (%s): %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

MultiPatch preset(const std::string& name, int p, int n, BoundaryMode bc,
                  bool pen_dirichlet = false, bool pen_neumann = false) {
    PresetSpec spec;
    spec.name = name;
    spec.degree = p;
    spec.elements = n;
    spec.bc = bc;
    spec.penalize_dirichlet = pen_dirichlet;
    spec.penalize_neumann = pen_neumann;
    return make_preset(spec);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// manufactured clamped-plate solution on (0,2)x(0,1)
double pg(double x) { return 1.0 - std::cos(M_PI * x / 2.0) - x + std::sin(M_PI * x) / M_PI; }
double pg1(double x) { return (M_PI / 2.0) * std::sin(M_PI * x / 2.0) - 1.0 + std::cos(M_PI * x); }
double pg2(double x) {
    return (M_PI * M_PI / 4.0) * std::cos(M_PI * x / 2.0) - M_PI * std::sin(M_PI * x);
}
double pg4(double x) {
    return -(std::pow(M_PI, 4) / 16.0) * std::cos(M_PI * x / 2.0) +
           std::pow(M_PI, 3) * std::sin(M_PI * x);
}
double pq(double y) { return 1.0 - std::cos(2.0 * M_PI * y); }
double pq1(double y) { return 2.0 * M_PI * std::sin(2.0 * M_PI * y); }
double pq2(double y) { return 4.0 * M_PI * M_PI * std::cos(2.0 * M_PI * y); }
double pq4(double y) { return -16.0 * std::pow(M_PI, 4) * std::cos(2.0 * M_PI * y); }

double plate_u(const Eigen::VectorXd& x) { return pg(x[0]) * pq(x[1]); }
Eigen::VectorXd plate_grad(const Eigen::VectorXd& x) {
    Eigen::VectorXd g(2);
    g << pg1(x[0]) * pq(x[1]), pg(x[0]) * pq1(x[1]);
    return g;
}
Eigen::MatrixXd plate_hess(const Eigen::VectorXd& x) {
    Eigen::MatrixXd h(2, 2);
    h(0, 0) = pg2(x[0]) * pq(x[1]);
    h(0, 1) = h(1, 0) = pg1(x[0]) * pq1(x[1]);
    h(1, 1) = pg(x[0]) * pq2(x[1]);
    return h;
}
double plate_f(const Eigen::VectorXd& x) {
    return pg4(x[0]) * pq(x[1]) + 2.0 * pg2(x[0]) * pq2(x[1]) + pg(x[0]) * pq4(x[1]);
}

std::vector<ErrorNorms> plate_sweep(int p, double C, const std::vector<int>& ns) {
    std::vector<ErrorNorms> out;
    for (int n : ns) {
        const MultiPatch mp = preset("rect-2patch-nonmatching", p, n, BoundaryMode::Dirichlet,
                                     /*pen_dirichlet=*/true);
        ProblemOptions opt;
        opt.op = Operator::Bending;
        opt.penalty = C;
        const SourceResult sol = solve_source(mp, opt, plate_f);
        out.push_back(error_norms(mp, sol.u, plate_u, plate_grad, plate_hess));
    }
    return out;
}

// ---------------------------------------------------------------------------

void criterion_1() {
    const auto t0 = Clock::now();
    const MultiPatch mp = preset("unit-line-2patch", 2, 16, BoundaryMode::Dirichlet);
    ProblemOptions opt;
    const EigenResult er = solve_eigenproblem(mp, opt);
    const Eigen::VectorXd norm = normalize_spectrum(
        er.values, [](int n) { return n * n * M_PI * M_PI; });
    const double first = norm[0] - 1.0;
    const double lo = norm.minCoeff();
    const double dt = seconds_since(t0);
    const bool pass = first <= 1e-4 && first >= 0.0 - 1e-8 && lo >= 1.0 - 1e-8 && dt < 1.0;
    report(1, "1d dirichlet spectrum accuracy", pass,
           "lambda1/pi^2-1=" + fmt(first) + ", min normalized=" + fmt(lo) + ", " + fmt(dt) + "s");
}

// skip the zero mode, normalize against n^2 pi^2 over the physical band
double max_normalized_neumann(const EigenResult& er) {
    double m = 0.0;
    for (int i = 1; i < er.physical_count; ++i) {
        const double exact = static_cast<double>(i) * i * M_PI * M_PI;
        m = std::max(m, er.values[i] / exact);
    }
    return m;
}

void criterion_2() {
    const auto t0 = Clock::now();
    bool pass = true;
    std::ostringstream detail;
    for (int p : {2, 3}) {
        ProblemOptions unpen;
        ProblemOptions pen;
        pen.penalty = 100.0;
        const EigenResult e0 = solve_eigenproblem(
            preset("unit-line-2patch", p, 50, BoundaryMode::Neumann, false, true), unpen);
        const EigenResult ec = solve_eigenproblem(
            preset("unit-line-2patch", p, 50, BoundaryMode::Neumann, false, true), pen);
        const EigenResult es = solve_eigenproblem(
            preset("unit-line-1patch", p, 100, BoundaryMode::Neumann, false, true), unpen);
        const double m0 = max_normalized_neumann(e0);
        const double mc = max_normalized_neumann(ec);
        const double ms = max_normalized_neumann(es);
        pass = pass && mc < m0 && mc < ms;
        detail << "p=" << p << ": C=100 " << fmt(mc) << " vs unpenalized " << fmt(m0)
               << " / smooth " << fmt(ms) << "; ";
    }
    const double dt = seconds_since(t0);
    detail << fmt(dt) << "s";
    report(2, "1d neumann outlier reduction", pass && dt < 5.0, detail.str());
}

void criterion_3() {
    const auto t0 = Clock::now();
    const std::vector<int> ns{2, 4, 8, 16, 32};
    std::vector<double> hs;
    for (int n : ns) hs.push_back(1.0 / n);
    bool pass = true;
    std::ostringstream detail;

    const auto e3 = plate_sweep(3, 100.0, ns);
    const auto e2 = plate_sweep(2, 100.0, ns);
    auto l2 = [](const std::vector<ErrorNorms>& e) {
        std::vector<double> v;
        for (const auto& x : e) v.push_back(x.l2);
        return v;
    };
    const auto r3 = convergence_rates(hs, l2(e3));
    const auto r2 = convergence_rates(hs, l2(e2));
    for (std::size_t i = 2; i < r3.size(); ++i) pass = pass && r3[i] >= 3.7;
    for (std::size_t i = 2; i < r2.size(); ++i) pass = pass && r2[i] >= 1.8 && r2[i] <= 2.6;
    detail << "p=3 L2 rates " << fmt(r3[2]) << "/" << fmt(r3[3]) << "/" << fmt(r3[4])
           << ", p=2 " << fmt(r2[2]) << "/" << fmt(r2[3]) << "/" << fmt(r2[4]);

    // H1/H2 orders at the finest pair
    std::vector<double> h1_3, h2_3, h1_2, h2_2;
    for (const auto& x : e3) h1_3.push_back(x.h1), h2_3.push_back(x.h2);
    for (const auto& x : e2) h1_2.push_back(x.h1), h2_2.push_back(x.h2);
    const double rh1_3 = convergence_rates(hs, h1_3).back();
    const double rh2_3 = convergence_rates(hs, h2_3).back();
    const double rh1_2 = convergence_rates(hs, h1_2).back();
    const double rh2_2 = convergence_rates(hs, h2_2).back();
    pass = pass && std::abs(rh1_3 - 3.0) <= 0.3 && std::abs(rh2_3 - 2.0) <= 0.3;
    pass = pass && std::abs(rh1_2 - 2.0) <= 0.3 && std::abs(rh2_2 - 1.0) <= 0.3;
    detail << ", H1/H2 " << fmt(rh1_3) << "/" << fmt(rh2_3) << " and " << fmt(rh1_2) << "/"
           << fmt(rh2_2);

    // published L2 error magnitude at comparable resolution (C=100)
    const double reference = 1.55e-7;
    const double ratio = e3.back().l2 / reference;
    pass = pass && ratio < 5.0 && ratio > 0.2;
    const double dt = seconds_since(t0);
    detail << ", L2=" << fmt(e3.back().l2) << " vs ref " << fmt(reference) << ", " << fmt(dt)
           << "s";
    report(3, "plate convergence", pass && dt < 120.0, detail.str());
}

void criterion_4() {
    const auto t0 = Clock::now();
    const std::vector<int> ns{4, 8, 16, 32, 64};
    std::vector<std::vector<ErrorNorms>> sweeps;
    for (double C : {1.0, 100.0, 1e4}) sweeps.push_back(plate_sweep(3, C, ns));
    bool pass = true;
    double worst = 1.0;
    for (std::size_t lev = 0; lev < ns.size(); ++lev)
        for (std::size_t a = 0; a < sweeps.size(); ++a)
            for (std::size_t b = a + 1; b < sweeps.size(); ++b) {
                const double r = sweeps[a][lev].l2 / sweeps[b][lev].l2;
                worst = std::max({worst, r, 1.0 / r});
            }
    pass = worst <= 3.0;
    const double dt = seconds_since(t0);
    report(4, "plate penalty robustness", pass && dt < 120.0,
           "worst pairwise L2 ratio over C in {1,100,1e4}: " + fmt(worst) + ", " + fmt(dt) + "s");
}

void criterion_5() {
    bool pass = true;
    std::ostringstream detail;
    for (int n : {2, 3, 4}) {
        const MultiPatch mp = preset("rect-2patch-nonmatching", 2, n, BoundaryMode::Dirichlet);
        ProblemOptions opt;
        const AssembledProblem ap = assemble_problem(mp, opt);
        const SaddleEigenResult se =
            solve_saddle_eigen(ap.A_reduced(), ap.M_reduced(), ap.B_reduced());
        pass = pass && se.spurious_count == 2 * ap.dim_M;
        detail << n << "x" << n + 1 << ": " << se.spurious_count << "=2*" << ap.dim_M << "; ";
    }
    report(5, "saddle spurious mode count", pass, detail.str());
}

void criterion_6() {
    const auto t0 = Clock::now();
    PresetSpec spec;
    spec.name = "unit-line-2patch";
    spec.degree = 2;
    spec.elements = 10;
    spec.bc = BoundaryMode::Dirichlet;
    const MultiPatch mp = make_preset(spec);

    // targets are members of the single smooth spline space on the same
    // breakpoints (no derivative jump at the interface)
    PresetSpec ss = spec;
    ss.name = "unit-line-1patch";
    ss.elements = 20;
    const MultiPatch smooth = make_preset(ss);

    const std::vector<double> cs{0.0, 0.01, 1.0, 10.0, 100.0, 1e4};
    bool pass = true;
    std::ostringstream detail;
    int constrained = 0;
    for (const auto& [name, raw] :
         std::vector<std::pair<std::string, ScalarFn>>{
             {"bump",
              [](const Eigen::VectorXd& x) {
                  return std::exp(-(x[0] - 0.37) * (x[0] - 0.37) / 0.004);
              }},
             {"mix", [](const Eigen::VectorXd& x) {
                  return std::sin(3.0 * M_PI * x[0]) * std::exp(x[0]) +
                         0.5 * std::sin(9.0 * M_PI * x[0]);
              }}}) {
        const Eigen::VectorXd coeffs = interpolate_on_patch(smooth.patches[0], raw);
        const ScalarFn target = [&](const Eigen::VectorXd& x) {
            return eval_field(smooth.patches[0], coeffs, {x[0], 0.0}, 0).value;
        };
        std::vector<double> errs;
        for (double c : cs) {
            ProblemOptions opt;
            opt.penalty = c;
            const AssembledProblem ap = assemble_problem(mp, opt);
            constrained = ap.dim_V - ap.dim_M;
            EigenSolution es =
                solve_constrained_eigen(ap.A_reduced(), ap.M_reduced(), ap.B_reduced());
            const Eigen::VectorXd t = ap.reduction.reduce_vector(interpolate(mp, target));
            errs.push_back(
                reduced_space_projection_error(es.vectors.leftCols(20), ap.M_reduced(), t));
        }
        bool dec = true;
        for (std::size_t i = 0; i + 1 < errs.size(); ++i) dec = dec && errs[i + 1] < errs[i];
        const double drop = errs.front() / errs.back();
        pass = pass && dec && drop >= 1e4;
        detail << name << ": " << (dec ? "decreasing" : "NOT decreasing") << ", drop "
               << fmt(drop) << "; ";
    }
    pass = pass && constrained == 21;
    const double dt = seconds_since(t0);
    detail << constrained << " constrained dofs, " << fmt(dt) << "s";
    report(6, "reduced-basis projection study", pass && dt < 1.0, detail.str());
}

void criterion_7() {
    bool pass = true;
    std::ostringstream detail;
    {
        // second order: u = x^2 y (1-y), full quadratic reproduction
        const auto u = [](const Eigen::VectorXd& x) {
            return x[0] * x[0] * x[1] * (1.0 - x[1]);
        };
        const auto f = [](const Eigen::VectorXd& x) {
            return -2.0 * x[1] * (1.0 - x[1]) + 2.0 * x[0] * x[0];
        };
        for (const char* name : {"rect-2patch-matching", "rect-2patch-nonmatching"}) {
            const MultiPatch mp = preset(name, 2, 3, BoundaryMode::Dirichlet);
            ProblemOptions opt;
            opt.penalty = 100.0;
            const SourceResult sol = solve_source_lifted(mp, opt, f, u);
            const double err = error_norms(mp, sol.u, u).l2;
            pass = pass && err <= 1e-9;
            detail << "laplace " << fmt(err) << "; ";
        }
    }
    {
        // clamped plate: cubic whose effective interface shear vanishes at
        // the interface endpoints, boundary data imposed strongly
        const auto u = [](const Eigen::VectorXd& x) {
            const double X = x[0], Y = x[1];
            return X * X * X * Y * Y * Y - 7.0 * X * X * X * Y + 2.0 * X * Y + Y * Y;
        };
        const auto f = [](const Eigen::VectorXd& x) { return 72.0 * x[0] * x[1]; };
        const MultiPatch mp = preset("rect-2patch-nonmatching", 3, 3, BoundaryMode::Dirichlet);
        ProblemOptions opt;
        opt.op = Operator::Bending;
        opt.penalty = 100.0;
        opt.strong_normal = true;
        const SourceResult sol = solve_source_lifted(mp, opt, f, u);
        const double err = error_norms(mp, sol.u, u).l2;
        pass = pass && err <= 1e-9;
        detail << "plate " << fmt(err);
    }
    report(7, "polynomial patch tests", pass, detail.str());
}

void criterion_8() {
    std::ostringstream detail;
    bool pass = true;
    for (double C : {0.0, 100.0}) {
        std::vector<double> lh, lc;
        for (int n : {4, 8, 16, 32}) {
            const MultiPatch mp = preset("unit-line-2patch", 2, n, BoundaryMode::Dirichlet);
            ProblemOptions opt;
            opt.penalty = C;
            const AssembledProblem ap = assemble_problem(mp, opt);
            const Eigen::MatrixXd Z = nullspace_basis(ap.B_reduced());
            const Eigen::MatrixXd Ak =
                Z.transpose() * Eigen::MatrixXd(ap.A_reduced()) * Z;
            lh.push_back(std::log(0.5 / n));
            lc.push_back(std::log(condition_estimate(Ak.sparseView())));
        }
        // least squares slope of log(cond) against log(1/h)
        const int m = static_cast<int>(lh.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < m; ++i) {
            sx += -lh[i];
            sy += lc[i];
            sxx += lh[i] * lh[i];
            sxy += -lh[i] * lc[i];
        }
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        const bool ok = slope >= 1.7 && slope <= 2.3;
        pass = pass && ok;
        detail << "C=" << C << ": slope " << fmt(slope) << (ok ? "" : " (outside [1.7,2.3])")
               << "; ";
    }
    report(8, "condition number growth", pass, detail.str());
}

void criterion_9() {
    bool pass = true;
    std::ostringstream detail;
    ProblemOptions unpen;
    unpen.op = Operator::Elasticity;
    {
        const MultiPatch mp = preset("rect-2patch-nonmatching", 2, 4, BoundaryMode::Neumann);
        const EigenResult er = solve_eigenproblem(mp, unpen);
        int zeros = 0;
        const double tol = 1e-8 * er.values.maxCoeff();
        for (int i = 0; i < er.values.size(); ++i)
            if (std::abs(er.values[i]) < tol) ++zeros;
        pass = pass && zeros == 3;
        detail << zeros << " rigid modes; ";
    }
    {
        ProblemOptions pen = unpen;
        pen.penalty = 1e5;
        const EigenResult ref = solve_eigenproblem(
            preset("rect-2patch-nonmatching", 2, 8, BoundaryMode::ClampedWest, false, true), pen);
        const EigenResult ec = solve_eigenproblem(
            preset("rect-2patch-nonmatching", 2, 4, BoundaryMode::ClampedWest, false, true), pen);
        const EigenResult e0 = solve_eigenproblem(
            preset("rect-2patch-nonmatching", 2, 4, BoundaryMode::ClampedWest, false, true),
            unpen);
        // the penalty shifts the constrained modes far above the physical
        // band; the spectral comparison is over the physical modes
        double mc = 0.0, m0 = 0.0;
        for (int i = 0; i < ec.physical_count; ++i)
            mc = std::max(mc, ec.values[i] / ref.values[i]);
        for (int i = 0; i < e0.values.size(); ++i)
            m0 = std::max(m0, e0.values[i] / ref.values[i]);
        pass = pass && mc < m0;
        detail << "max normalized C=1e5 " << fmt(mc) << " vs unpenalized " << fmt(m0) << "; ";
        const int s = ec.physical_count;
        const double gap =
            (s > 0 && s < ec.values.size()) ? ec.values[s] / ec.values[s - 1] : 0.0;
        pass = pass && gap >= 100.0;
        detail << "separation gap " << fmt(gap);
    }
    report(9, "elasticity spectra", pass, detail.str());
}

void criterion_10() {
    bool pass = true;
    std::ostringstream detail;
    std::vector<double> one, two;
    for (int n : {2, 4, 8}) {
        ProblemOptions strong;
        strong.op = Operator::Bending;
        strong.strong_normal = true;
        one.push_back(solve_eigenproblem(
                          preset("unit-square-1patch", 3, n, BoundaryMode::Dirichlet), strong)
                          .values[0]);
        ProblemOptions weak;
        weak.op = Operator::Bending;
        weak.penalty = 100.0;
        two.push_back(
            solve_eigenproblem(
                preset("unit-square-2patch", 3, n, BoundaryMode::Dirichlet, true), weak)
                .values[0]);
    }
    const double shrink1 = (one[0] - one[1]) / (one[1] - one[2]);
    const double shrink2 = (two[0] - two[1]) / (two[1] - two[2]);
    const double agree = std::abs(one[2] - two[2]) / one[2];
    pass = shrink1 >= 8.0 && shrink2 >= 8.0 && agree <= 1e-3;
    detail << "lambda1 shrink factors " << fmt(shrink1) << "/" << fmt(shrink2)
           << ", one- vs two-patch agreement " << fmt(agree);
    report(10, "clamped plate eigenvalue self-consistency", pass, detail.str());
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures > 0) std::printf("%d of 10 criteria failed\n", failures);
    return failures;
}
