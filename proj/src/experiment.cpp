#include "igam/experiment.hpp"

#include "igam/errors.hpp"
#include "igam/presets.hpp"
#include "igam/problems.hpp"
#include "igam/spectrum.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace igam {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_c(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

/// Whole-file atomic write: temp file in the same directory, then rename.
void write_atomic(const fs::path& dir, const std::string& name, const std::string& content) {
    const fs::path tmp = dir / (name + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
    }
    fs::rename(tmp, dir / name);
}

struct Csv {
    std::ostringstream os;
    explicit Csv(const std::vector<std::string>& header) {
        for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
        os << "\n";
    }
    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        os << "\n";
    }
    std::string str() const { return os.str(); }
};

BoundaryMode parse_bc(const std::string& s) {
    if (s == "dirichlet") return BoundaryMode::Dirichlet;
    if (s == "neumann") return BoundaryMode::Neumann;
    if (s == "clamped-west") return BoundaryMode::ClampedWest;
    throw ConfigError("config: key 'bc' must be dirichlet, neumann or clamped-west");
}

std::vector<double> penalty_list(const Config& cfg, std::vector<double> fallback) {
    if (cfg.has("penalties")) return cfg.numbers("penalties");
    if (cfg.has("penalty")) return {cfg.number("penalty")};
    return fallback;
}

json config_echo(const Config& cfg) {
    json j = json::object();
    for (const auto& [key, value] : cfg.entries())
        std::visit([&](const auto& v) { j[key] = v; }, value);
    return j;
}

struct Runner {
    const Config& cfg;
    fs::path dir;
    ExperimentResult result;
    json manifest;
    Clock::time_point t0 = Clock::now();

    Runner(const Config& c, const std::string& outdir) : cfg(c), dir(outdir) {
        fs::create_directories(dir);
        manifest["config"] = config_echo(cfg);
        manifest["timings_ms"] = json::object();
    }

    void emit(const std::string& name, const Csv& csv) {
        write_atomic(dir, name, csv.str());
        result.outputs.push_back(name);
    }

    void time_mark(const std::string& label) {
        manifest["timings_ms"][label] = ms_since(t0);
        t0 = Clock::now();
    }

    void dims(int dim_V, int dim_M) {
        manifest["dims"] = {{"dim_V", dim_V}, {"dim_M", dim_M}};
    }

    void finish(const std::string& kind) {
        result.kind = kind;
        manifest["kind"] = kind;
        manifest["outputs"] = result.outputs;
        write_atomic(dir, "run.json", manifest.dump(2) + "\n");
        result.outputs.push_back("run.json");
    }
};

/// spectrum.csv for one eigen run. `exact` may be null (no reference): the
/// lambda_exact / normalized columns are omitted.
Csv spectrum_csv(const EigenResult& er, const std::function<double(int)>& exact) {
    std::vector<std::string> header{"index", "lambda_h"};
    if (exact) {
        header.push_back("lambda_exact");
        header.push_back("normalized");
    }
    header.push_back("physical_flag");
    Csv csv(header);
    for (int i = 0; i < er.values.size(); ++i) {
        std::vector<std::string> cells{std::to_string(i + 1), fmt17(er.values[i])};
        if (exact) {
            const double ex = exact(i + 1);
            cells.push_back(fmt17(ex));
            cells.push_back(ex != 0.0 ? fmt17(er.values[i] / ex) : "nan");
        }
        cells.push_back(i < er.physical_count ? "1" : "0");
        csv.row(cells);
    }
    return csv;
}

void run_spectrum1d(Runner& r) {
    const Config& cfg = r.cfg;
    PresetSpec spec;
    spec.name = cfg.str_or("preset", "unit-line-2patch");
    spec.degree = cfg.integer("degree");
    spec.elements = cfg.integer_or("elements", 100);
    spec.bc = parse_bc(cfg.str_or("bc", "neumann"));
    spec.penalize_neumann = true;

    const bool dirichlet = spec.bc == BoundaryMode::Dirichlet;
    const std::function<double(int)> exact = [dirichlet](int n) {
        const double k = dirichlet ? n : n - 1;
        return k * k * M_PI * M_PI;
    };

    const std::vector<double> cs = penalty_list(cfg, {0.0});
    for (double c : cs) {
        const MultiPatch mp = make_preset(spec);
        ProblemOptions opt;
        opt.op = Operator::Laplace;
        opt.penalty = c;
        const EigenResult er = solve_eigenproblem(mp, opt);
        r.dims(er.dim_V, er.dim_M);
        const std::string name =
            cs.size() == 1 ? "spectrum.csv" : "spectrum_C" + std::string(fmt_c(c)) + ".csv";
        r.emit(name, spectrum_csv(er, exact));
        r.time_mark("C=" + std::string(fmt_c(c)));
    }
    r.finish("spectrum1d");
}

/// Manufactured clamped-plate solution on (0,2)x(0,1):
/// u = g(x) q(y), g = 1 - cos(pi x/2) - x + sin(pi x)/pi, q = 1 - cos(2 pi y).
struct PlateExact {
    static double g(double x) { return 1.0 - std::cos(M_PI * x / 2.0) - x + std::sin(M_PI * x) / M_PI; }
    static double g1(double x) { return (M_PI / 2.0) * std::sin(M_PI * x / 2.0) - 1.0 + std::cos(M_PI * x); }
    static double g2(double x) { return (M_PI * M_PI / 4.0) * std::cos(M_PI * x / 2.0) - M_PI * std::sin(M_PI * x); }
    static double g4(double x) {
        return -(std::pow(M_PI, 4) / 16.0) * std::cos(M_PI * x / 2.0) + std::pow(M_PI, 3) * std::sin(M_PI * x);
    }
    static double q(double y) { return 1.0 - std::cos(2.0 * M_PI * y); }
    static double q1(double y) { return 2.0 * M_PI * std::sin(2.0 * M_PI * y); }
    static double q2(double y) { return 4.0 * M_PI * M_PI * std::cos(2.0 * M_PI * y); }
    static double q4(double y) { return -16.0 * std::pow(M_PI, 4) * std::cos(2.0 * M_PI * y); }

    static double u(const Eigen::VectorXd& x) { return g(x[0]) * q(x[1]); }
    static Eigen::VectorXd grad(const Eigen::VectorXd& x) {
        Eigen::VectorXd out(2);
        out << g1(x[0]) * q(x[1]), g(x[0]) * q1(x[1]);
        return out;
    }
    static Eigen::MatrixXd hess(const Eigen::VectorXd& x) {
        Eigen::MatrixXd out(2, 2);
        out(0, 0) = g2(x[0]) * q(x[1]);
        out(0, 1) = out(1, 0) = g1(x[0]) * q1(x[1]);
        out(1, 1) = g(x[0]) * q2(x[1]);
        return out;
    }
    static double f(const Eigen::VectorXd& x) {
        return g4(x[0]) * q(x[1]) + 2.0 * g2(x[0]) * q2(x[1]) + g(x[0]) * q4(x[1]);
    }
};

void run_plate_convergence(Runner& r) {
    const Config& cfg = r.cfg;
    PresetSpec spec;
    spec.name = cfg.str_or("preset", "rect-2patch-nonmatching");
    spec.degree = cfg.integer("degree");
    spec.bc = BoundaryMode::Dirichlet;
    spec.penalize_dirichlet = true;
    const int levels = cfg.integer_or("levels", 5);
    const int base = cfg.integer_or("elements", 2);
    const std::vector<double> cs = penalty_list(cfg, {100.0});

    for (double c : cs) {
        std::vector<double> hs, e2, e1, eh2;
        std::vector<int> ndof;
        for (int lev = 0; lev < levels; ++lev) {
            spec.elements = base << lev;
            const MultiPatch mp = make_preset(spec);
            ProblemOptions opt;
            opt.op = Operator::Bending;
            opt.penalty = c;
            const SourceResult sol = solve_source(mp, opt, PlateExact::f);
            const ErrorNorms e =
                error_norms(mp, sol.u, PlateExact::u, PlateExact::grad, PlateExact::hess);
            hs.push_back(1.0 / spec.elements);
            e2.push_back(e.l2);
            e1.push_back(e.h1);
            eh2.push_back(e.h2);
            ndof.push_back(sol.dim_V);
            r.dims(sol.dim_V, sol.dim_M);
            r.time_mark("C=" + std::string(fmt_c(c)) + "/level=" + std::to_string(lev));
        }
        const auto r2 = convergence_rates(hs, e2);
        const auto r1 = convergence_rates(hs, e1);
        const auto rh2 = convergence_rates(hs, eh2);
        Csv csv({"level", "h", "ndof", "errL2", "errH1", "errH2", "rateL2", "rateH1", "rateH2"});
        for (int lev = 0; lev < levels; ++lev)
            csv.row({std::to_string(lev), fmt17(hs[lev]), std::to_string(ndof[lev]),
                     fmt17(e2[lev]), fmt17(e1[lev]), fmt17(eh2[lev]), fmt17(r2[lev]),
                     fmt17(r1[lev]), fmt17(rh2[lev])});
        const std::string name = cs.size() == 1
                                     ? "convergence.csv"
                                     : "convergence_C" + std::string(fmt_c(c)) + ".csv";
        r.emit(name, csv);
    }
    r.finish("plate-convergence");
}

void run_elasticity_spectrum(Runner& r) {
    const Config& cfg = r.cfg;
    PresetSpec spec;
    spec.name = cfg.str_or("preset", "rect-2patch-nonmatching");
    spec.degree = cfg.integer("degree");
    spec.elements = cfg.integer_or("elements", 8);
    spec.bc = parse_bc(cfg.str_or("bc", "clamped-west"));
    spec.penalize_neumann = true;

    ProblemOptions opt;
    opt.op = Operator::Elasticity;
    opt.E = cfg.number_or("E", 1.0);
    opt.nu = cfg.number_or("nu", 0.3);
    opt.penalty = cfg.number_or("penalty", 1e5);
    const int k = cfg.integer_or("eigen_count", 20);

    // reference spectrum: one-level-finer penalized discretization
    PresetSpec fine = spec;
    fine.elements = 2 * spec.elements;
    const EigenResult ref = solve_eigenproblem(make_preset(fine), opt);
    const EigenResult er = solve_eigenproblem(make_preset(spec), opt);
    r.dims(er.dim_V, er.dim_M);
    r.time_mark("solve");

    EigenResult head = er;
    const int kk = std::min<int>(k, std::min(er.values.size(), ref.values.size()));
    head.values = er.values.head(kk);
    head.physical_count = std::min(er.physical_count, kk);
    const Eigen::VectorXd rv = ref.values;
    r.emit("spectrum.csv",
           spectrum_csv(head, [rv](int n) { return rv[n - 1]; }));
    r.finish("elasticity-spectrum");
}

void run_biharmonic_eigen(Runner& r) {
    const Config& cfg = r.cfg;
    PresetSpec spec;
    spec.name = cfg.str_or("preset", "unit-square-1patch");
    spec.degree = cfg.integer("degree");
    spec.bc = BoundaryMode::Dirichlet;
    const bool single = spec.name == "unit-square-1patch";
    const bool strong = cfg.boolean_or("strong_bc", single);
    spec.penalize_dirichlet = !strong;
    const int levels = cfg.integer_or("levels", 3);
    const int base = cfg.integer_or("elements", 4);
    const int k = cfg.integer_or("eigen_count", 10);

    ProblemOptions opt;
    opt.op = Operator::Bending;
    opt.penalty = strong ? 0.0 : cfg.number_or("penalty", 100.0);
    opt.strong_normal = strong;

    json lambda1 = json::array();
    EigenResult last;
    for (int lev = 0; lev < levels; ++lev) {
        spec.elements = base << lev;
        last = solve_eigenproblem(make_preset(spec), opt);
        lambda1.push_back(last.values[0]);
        r.dims(last.dim_V, last.dim_M);
        r.time_mark("level=" + std::to_string(lev));
    }
    r.manifest["lambda1"] = lambda1;
    if (last.values.size() > k) last.values = last.values.head(k).eval();
    last.physical_count = std::min(last.physical_count, k);
    r.emit("spectrum.csv", spectrum_csv(last, nullptr));
    r.finish("biharmonic-eigen");
}

void run_projection_study(Runner& r) {
    const Config& cfg = r.cfg;
    PresetSpec spec;
    spec.name = cfg.str_or("preset", "unit-line-2patch");
    spec.degree = cfg.integer("degree");
    spec.elements = cfg.integer_or("elements", 10);
    spec.bc = BoundaryMode::Dirichlet;
    const int k = cfg.integer_or("eigen_count", 20);
    const std::vector<double> cs = penalty_list(cfg, {0.0, 0.01, 1.0, 10.0, 100.0, 1e4});

    std::vector<std::string> targets{cfg.str_or("target", "bump")};
    if (cfg.has("targets")) {
        targets.clear();
        // homogeneous string arrays come back through entries()
        const auto& v = cfg.entries().at("targets");
        for (const auto& s : std::get<std::vector<std::string>>(v)) targets.push_back(s);
    }

    auto target_fn = [](const std::string& name) -> ScalarFn {
        if (name == "bump")
            return [](const Eigen::VectorXd& x) {
                return std::exp(-(x[0] - 0.37) * (x[0] - 0.37) / 0.004);
            };
        if (name == "mix")
            return [](const Eigen::VectorXd& x) {
                return std::sin(3.0 * M_PI * x[0]) * std::exp(x[0]) +
                       0.5 * std::sin(9.0 * M_PI * x[0]);
            };
        throw ConfigError("config: key 'target' must be bump or mix");
    };

    // targets are re-expressed as members of the single smooth spline space on
    // the same breakpoints, so that they carry no derivative jump at the
    // interface and the reduced basis can represent them
    PresetSpec smooth_spec = spec;
    smooth_spec.name = "unit-line-1patch";
    smooth_spec.elements = 2 * spec.elements;
    const MultiPatch smooth_mp = make_preset(smooth_spec);

    for (const std::string& tname : targets) {
        const ScalarFn raw = target_fn(tname);
        const Eigen::VectorXd smooth_coeffs =
            interpolate_on_patch(smooth_mp.patches[0], raw);
        const ScalarFn t = [&](const Eigen::VectorXd& x) {
            return eval_field(smooth_mp.patches[0], smooth_coeffs, {x[0], 0.0}, 0).value;
        };
        Csv csv({"penalty", "rel_error"});
        for (double c : cs) {
            const MultiPatch mp = make_preset(spec);
            ProblemOptions opt;
            opt.op = Operator::Laplace;
            opt.penalty = c;
            const AssembledProblem ap = assemble_problem(mp, opt);
            EigenSolution es =
                solve_constrained_eigen(ap.A_reduced(), ap.M_reduced(), ap.B_reduced());
            fix_sign(es.vectors);
            const int kk = std::min<int>(k, es.vectors.cols());
            const Eigen::VectorXd tr = ap.reduction.reduce_vector(interpolate(mp, t));
            const double err = reduced_space_projection_error(es.vectors.leftCols(kk),
                                                              ap.M_reduced(), tr);
            csv.row({fmt17(c), fmt17(err)});
            r.dims(ap.dim_V, ap.dim_M);
        }
        r.time_mark("target=" + tname);
        const std::string name =
            targets.size() == 1 ? "projection.csv" : "projection_" + tname + ".csv";
        r.emit(name, csv);
    }
    r.finish("projection-study");
}

void run_condition_study(Runner& r) {
    const Config& cfg = r.cfg;
    PresetSpec spec;
    spec.name = cfg.str_or("preset", "unit-line-2patch");
    spec.degree = cfg.integer("degree");
    spec.bc = parse_bc(cfg.str_or("bc", "dirichlet"));
    spec.penalize_neumann = true;
    const int levels = cfg.integer_or("levels", 4);
    const int base = cfg.integer_or("elements", 4);

    ProblemOptions opt;
    opt.op = Operator::Laplace;
    opt.penalty = cfg.number_or("penalty", 0.0);

    Csv csv({"level", "h", "cond"});
    for (int lev = 0; lev < levels; ++lev) {
        spec.elements = base << lev;
        const MultiPatch mp = make_preset(spec);
        const AssembledProblem ap = assemble_problem(mp, opt);
        const Eigen::MatrixXd Z = nullspace_basis(ap.B_reduced());
        const Eigen::MatrixXd Ak = Z.transpose() * Eigen::MatrixXd(ap.A_reduced()) * Z;
        const double cond = condition_estimate(Ak.sparseView());
        csv.row({std::to_string(lev), fmt17(1.0 / spec.elements), fmt17(cond)});
        r.dims(ap.dim_V, ap.dim_M);
        r.time_mark("level=" + std::to_string(lev));
    }
    r.emit("condition.csv", csv);
    r.finish("condition-study");
}

} // namespace

ExperimentResult run_experiment(const Config& cfg, const std::string& outdir) {
    const std::string kind = cfg.str("kind");
    Runner r(cfg, outdir);
    if (kind == "spectrum1d")
        run_spectrum1d(r);
    else if (kind == "plate-convergence")
        run_plate_convergence(r);
    else if (kind == "elasticity-spectrum")
        run_elasticity_spectrum(r);
    else if (kind == "biharmonic-eigen")
        run_biharmonic_eigen(r);
    else if (kind == "projection-study")
        run_projection_study(r);
    else if (kind == "condition-study")
        run_condition_study(r);
    else
        throw ConfigError("config: unknown experiment kind '" + kind + "'");
    return r.result;
}

} // namespace igam
