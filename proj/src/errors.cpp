#include "igam/errors.hpp"

#include "igam/gauss.hpp"

#include <cmath>
#include <limits>

namespace igam {

ErrorNorms error_norms(const MultiPatch& mp, const Eigen::VectorXd& coeffs, const ScalarFn& exact,
                       const GradFn& exact_grad, const HessFn& exact_hess, int quad_pts) {
    const int order = exact_hess ? 2 : (exact_grad ? 1 : 0);
    double l2 = 0.0, h1 = 0.0, h2 = 0.0;
    const auto off = mp.patch_offsets();
    for (int k = 0; k < mp.num_patches(); ++k) {
        const auto& patch = mp.patches[k];
        const Eigen::VectorXd local = coeffs.segment(off[k], patch.space.dim());
        const int d = patch.space.parametric_dim();
        int p = patch.space.degree(0);
        if (d == 2) p = std::max(p, patch.space.degree(1));
        const int qpd = quad_pts > 0 ? quad_pts : p + 2;

        const auto bx = patch.space.knot_vector(0).breakpoints();
        const std::vector<double> by =
            d == 2 ? patch.space.knot_vector(1).breakpoints() : std::vector<double>{0.0, 1.0};
        for (std::size_t ex = 0; ex + 1 < bx.size(); ++ex) {
            const auto gx = gauss_legendre(qpd, bx[ex], bx[ex + 1]);
            for (std::size_t ey = 0; ey + 1 < by.size(); ++ey) {
                const auto gy =
                    d == 2 ? gauss_legendre(qpd, by[ey], by[ey + 1]) : GaussRule{{0.0}, {1.0}};
                for (std::size_t qx = 0; qx < gx.points.size(); ++qx)
                    for (std::size_t qy = 0; qy < gy.points.size(); ++qy) {
                        const std::array<double, 2> zeta{gx.points[qx],
                                                         d == 2 ? gy.points[qy] : 0.0};
                        const auto geo = patch.geometry.eval(zeta, std::max(order, 1));
                        const double w = gx.weights[qx] * gy.weights[qy] * geo.det;
                        const FieldValue fv = eval_field(patch, local, zeta, order);
                        const double dv = fv.value - exact(geo.x);
                        l2 += w * dv * dv;
                        if (order >= 1) {
                            const Eigen::VectorXd dg = fv.grad - exact_grad(geo.x);
                            h1 += w * dg.squaredNorm();
                        }
                        if (order >= 2) {
                            const Eigen::MatrixXd dh = fv.hess - exact_hess(geo.x);
                            h2 += w * dh.squaredNorm();
                        }
                    }
            }
        }
    }
    ErrorNorms out;
    out.l2 = std::sqrt(l2);
    out.h1 = order >= 1 ? std::sqrt(l2 + h1) : 0.0;
    out.h2 = order >= 2 ? std::sqrt(l2 + h1 + h2) : 0.0;
    return out;
}

std::vector<double> convergence_rates(const std::vector<double>& h,
                                      const std::vector<double>& err) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> rates(err.size(), nan);
    for (std::size_t i = 1; i < err.size(); ++i) {
        if (err[i] <= 0.0 || err[i - 1] <= 0.0 || h[i] <= 0.0 || h[i - 1] <= 0.0 ||
            h[i] == h[i - 1])
            continue;
        rates[i] = std::log(err[i - 1] / err[i]) / std::log(h[i - 1] / h[i]);
    }
    return rates;
}

} // namespace igam
