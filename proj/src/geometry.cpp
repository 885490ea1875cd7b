#include "igam/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace igam {

GeometryEval GeometryMap::eval(const std::array<double, 2>& zeta, int order) const {
    const int d = dim();
    // the Jacobian is always needed, so evaluate at least first derivatives
    const auto b = space.eval(zeta, std::max(order, 1));
    const int n = static_cast<int>(b.indices.size());

    // weighted sums: W, A_c and their parametric derivatives
    double W = 0.0;
    Eigen::VectorXd A = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd Wg = Eigen::VectorXd::Zero(d);
    Eigen::MatrixXd Ag = Eigen::MatrixXd::Zero(d, d); // Ag(c,a) = dA_c/dzeta_a
    Eigen::MatrixXd Wh = Eigen::MatrixXd::Zero(d, d);
    std::vector<Eigen::MatrixXd> Ah(d, Eigen::MatrixXd::Zero(d, d));
    for (int k = 0; k < n; ++k) {
        const int gi = b.indices[k];
        const double w = weights[gi];
        const double v = w * b.values[k];
        W += v;
        A += v * control_points.row(gi).transpose();
        for (int a = 0; a < d; ++a) {
            const double gva = w * b.grad(k, a);
            Wg[a] += gva;
            Ag.col(a) += gva * control_points.row(gi).transpose();
        }
        if (order >= 2) {
            for (int a = 0; a < d; ++a)
                for (int c = a; c < d; ++c) {
                    const double hv = w * b.hess[k](a, c);
                    Wh(a, c) += hv;
                    for (int comp = 0; comp < d; ++comp)
                        Ah[comp](a, c) += hv * control_points(gi, comp);
                }
        }
    }
    GeometryEval out;
    out.x = A / W;
    out.jacobian.resize(d, d);
    for (int a = 0; a < d; ++a)
        out.jacobian.col(a) = (Ag.col(a) - out.x * Wg[a]) / W;
    out.det = out.jacobian.determinant();
    if (!(out.det > 0.0))
        throw std::runtime_error("GeometryMap::eval: degenerate geometry (det J <= 0)");
    if (order >= 2) {
        out.hess.assign(d, Eigen::MatrixXd(d, d));
        for (int comp = 0; comp < d; ++comp)
            for (int a = 0; a < d; ++a)
                for (int c = 0; c < d; ++c) {
                    const double Ah_ac = Ah[comp](std::min(a, c), std::max(a, c));
                    const double Wh_ac = Wh(std::min(a, c), std::max(a, c));
                    out.hess[comp](a, c) = (Ah_ac - out.jacobian(comp, a) * Wg[c] -
                                            out.jacobian(comp, c) * Wg[a] - out.x[comp] * Wh_ac) /
                                           W;
                }
    }
    return out;
}

Eigen::VectorXd GeometryMap::point(const std::array<double, 2>& zeta) const {
    const int d = dim();
    const auto b = space.eval(zeta, 0);
    double W = 0.0;
    Eigen::VectorXd A = Eigen::VectorXd::Zero(d);
    for (std::size_t k = 0; k < b.indices.size(); ++k) {
        const int gi = b.indices[k];
        const double v = weights[gi] * b.values[k];
        W += v;
        A += v * control_points.row(gi).transpose();
    }
    return A / W;
}

GeometryMap make_line_geometry(double a, double b) {
    GeometryMap g;
    g.space = TensorSplineSpace(make_open_knot_vector(1, 1));
    g.control_points.resize(2, 1);
    g.control_points << a, b;
    g.weights = Eigen::VectorXd::Ones(2);
    return g;
}

GeometryMap make_rectangle_geometry(double x0, double y0, double x1, double y1) {
    GeometryMap g;
    g.space = TensorSplineSpace(make_open_knot_vector(1, 1), make_open_knot_vector(1, 1));
    g.control_points.resize(4, 2);
    g.control_points << x0, y0, x1, y0, x0, y1, x1, y1;
    g.weights = Eigen::VectorXd::Ones(4);
    return g;
}

GeometryMap make_annulus_sector_geometry(double r0, double r1) {
    // xi: angular (quadratic NURBS 90-degree arc), eta: radial (linear)
    GeometryMap g;
    g.space = TensorSplineSpace(make_open_knot_vector(2, 1), make_open_knot_vector(1, 1));
    // xi runs clockwise from (0, r) to (r, 0) so that det J > 0
    const double s = std::sqrt(2.0) / 2.0;
    g.control_points.resize(6, 2);
    g.control_points << 0, r0, r0, r0, r0, 0, 0, r1, r1, r1, r1, 0;
    g.weights.resize(6);
    g.weights << 1, s, 1, 1, s, 1;
    return g;
}

GeometryMap insert_knots(const GeometryMap& map, int dir, const std::vector<double>& new_knots) {
    const int d = map.dim();
    const int d_phys = static_cast<int>(map.control_points.cols());
    // work in projective coordinates (w*P, w)
    Eigen::MatrixXd pw(map.control_points.rows(), d_phys + 1);
    pw.leftCols(d_phys) = map.weights.asDiagonal() * map.control_points;
    pw.col(d_phys) = map.weights;

    KnotVector kv = map.space.knot_vector(dir);
    const int other = 1 - dir;
    int n_other = (d == 1) ? 1 : map.space.knot_vector(other).dim();

    for (double u : new_knots) {
        const int p = kv.degree;
        const int span = kv.find_span(u);
        const int old_dim = kv.dim();
        Eigen::MatrixXd next((old_dim + 1) * n_other, d_phys + 1);
        auto old_at = [&](int i, int j) -> Eigen::RowVectorXd {
            const int flat = (d == 1) ? i : (dir == 0 ? i + old_dim * j : j + n_other * i);
            return pw.row(flat);
        };
        auto set_new = [&](int i, int j, const Eigen::RowVectorXd& v) {
            const int flat = (d == 1) ? i : (dir == 0 ? i + (old_dim + 1) * j : j + n_other * i);
            next.row(flat) = v;
        };
        for (int j = 0; j < n_other; ++j) {
            for (int i = 0; i <= span - p; ++i) set_new(i, j, old_at(i, j));
            for (int i = span - p + 1; i <= span; ++i) {
                const double den = kv.knots[i + p] - kv.knots[i];
                const double alpha = (den > 0.0) ? (u - kv.knots[i]) / den : 0.0;
                set_new(i, j, alpha * old_at(i, j) + (1.0 - alpha) * old_at(i - 1, j));
            }
            for (int i = span + 1; i <= old_dim; ++i) set_new(i, j, old_at(i - 1, j));
        }
        pw = std::move(next);
        auto knots = kv.knots;
        knots.insert(knots.begin() + span + 1, u);
        kv = KnotVector(p, std::move(knots));
    }

    GeometryMap out;
    if (d == 1) {
        out.space = TensorSplineSpace(kv);
    } else if (dir == 0) {
        out.space = TensorSplineSpace(kv, map.space.knot_vector(1));
    } else {
        out.space = TensorSplineSpace(map.space.knot_vector(0), kv);
    }
    out.weights = pw.col(d_phys);
    out.control_points = pw.col(d_phys).cwiseInverse().asDiagonal() * pw.leftCols(d_phys);
    return out;
}

GeometryMap h_refine(const GeometryMap& map) {
    GeometryMap out = map;
    for (int dir = 0; dir < map.dim(); ++dir) {
        const auto brk = out.space.knot_vector(dir).breakpoints();
        std::vector<double> mids;
        for (std::size_t i = 0; i + 1 < brk.size(); ++i) mids.push_back(0.5 * (brk[i] + brk[i + 1]));
        out = insert_knots(out, dir, mids);
    }
    return out;
}

PhysEval physical_derivatives(const SpaceEval& basis, const GeometryEval& geo, int order) {
    const int d = static_cast<int>(geo.jacobian.rows());
    const Eigen::MatrixXd Jinv = geo.jacobian.inverse();
    PhysEval out;
    out.indices = basis.indices;
    out.values = basis.values;
    const int n = static_cast<int>(basis.indices.size());
    if (order >= 1)
        out.grad = basis.grad * Jinv; // row convention: grad_phys = grad_par * J^{-1}
    if (order >= 2) {
        out.hess.assign(n, Eigen::MatrixXd(d, d));
        for (int k = 0; k < n; ++k) {
            Eigen::MatrixXd corr = basis.hess[k];
            for (int c = 0; c < d; ++c) corr -= out.grad(k, c) * geo.hess[c];
            out.hess[k] = Jinv.transpose() * corr * Jinv;
        }
    }
    return out;
}

} // namespace igam
