#include "igam/assembly.hpp"

#include "igam/gauss.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace igam {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;
using SparseVec = std::map<int, double>; ///< global dof -> coefficient

struct LameParameters {
    double mu, lambda;
};

LameParameters lame_parameters(double E, double nu) {
    if (E <= 0.0) throw std::invalid_argument("elasticity: elastic modulus must be positive");
    if (nu <= -1.0 || nu >= 0.5)
        throw std::invalid_argument("elasticity: Poisson ratio must lie in (-1, 0.5)");
    return {E / (2.0 * (1.0 + nu)), nu * E / ((1.0 + nu) * (1.0 - 2.0 * nu))};
}

int patch_quad(const Patch& patch, int quad_pts, int boost = 1) {
    if (quad_pts > 0) return quad_pts;
    int p = patch.space.degree(0);
    if (patch.space.parametric_dim() == 2) p = std::max(p, patch.space.degree(1));
    return p + boost;
}

/// Visit every element of a patch: fn(evals, points, weights) with one
/// PhysEval per quadrature point (identical active set within the element).
template <class F>
void for_each_element(const Patch& patch, int qpd, int order, F&& fn) {
    const auto& sp = patch.space;
    const int d = sp.parametric_dim();
    const auto bx = sp.knot_vector(0).breakpoints();
    const std::vector<double> by =
        d == 2 ? sp.knot_vector(1).breakpoints() : std::vector<double>{0.0, 1.0};
    const std::size_t ney = d == 2 ? by.size() - 1 : 1;

    std::vector<PhysEval> evals;
    std::vector<Eigen::VectorXd> xs;
    std::vector<double> ws;
    for (std::size_t ex = 0; ex + 1 < bx.size(); ++ex) {
        const auto gx = gauss_legendre(qpd, bx[ex], bx[ex + 1]);
        for (std::size_t ey = 0; ey < ney; ++ey) {
            evals.clear();
            xs.clear();
            ws.clear();
            if (d == 1) {
                for (std::size_t q = 0; q < gx.points.size(); ++q) {
                    const std::array<double, 2> zeta{gx.points[q], 0.0};
                    const auto geo = patch.geometry.eval(zeta, order);
                    evals.push_back(physical_derivatives(sp.eval(zeta, order), geo, order));
                    xs.push_back(geo.x);
                    ws.push_back(gx.weights[q] * geo.det);
                }
            } else {
                const auto gy = gauss_legendre(qpd, by[ey], by[ey + 1]);
                for (std::size_t qx = 0; qx < gx.points.size(); ++qx)
                    for (std::size_t qy = 0; qy < gy.points.size(); ++qy) {
                        const std::array<double, 2> zeta{gx.points[qx], gy.points[qy]};
                        const auto geo = patch.geometry.eval(zeta, order);
                        evals.push_back(physical_derivatives(sp.eval(zeta, order), geo, order));
                        xs.push_back(geo.x);
                        ws.push_back(gx.weights[qx] * gy.weights[qy] * geo.det);
                    }
            }
            fn(evals, xs, ws);
        }
    }
}

/// Generic symmetric volume assembly. The kernel adds the contribution of
/// one quadrature point to the local matrix; local index = a * ncomp + c.
template <class Kernel>
SpMat assemble_volume(const MultiPatch& mp, int ncomp, int order, int qpd_override,
                      Kernel&& kernel) {
    const int ns = mp.total_dim();
    const auto off = mp.patch_offsets();
    Triplets trip;
    for (int k = 0; k < mp.num_patches(); ++k) {
        const auto& patch = mp.patches[k];
        const int qpd = patch_quad(patch, qpd_override);
        for_each_element(patch, qpd, order, [&](const std::vector<PhysEval>& evals,
                                                const std::vector<Eigen::VectorXd>&,
                                                const std::vector<double>& ws) {
            const int na = static_cast<int>(evals.front().indices.size());
            Eigen::MatrixXd local = Eigen::MatrixXd::Zero(na * ncomp, na * ncomp);
            for (std::size_t q = 0; q < evals.size(); ++q) kernel(local, evals[q], ws[q]);
            for (int a = 0; a < na; ++a)
                for (int b = 0; b < na; ++b)
                    for (int c = 0; c < ncomp; ++c)
                        for (int e = 0; e < ncomp; ++e) {
                            const double v = local(a * ncomp + c, b * ncomp + e);
                            if (v != 0.0)
                                trip.emplace_back(c * ns + off[k] + evals.front().indices[a],
                                                  e * ns + off[k] + evals.front().indices[b], v);
                        }
        });
    }
    SpMat A(ncomp * ns, ncomp * ns);
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

/// Collects penalized functionals one row at a time.
struct TermCollector {
    Triplets trip;
    std::vector<double> weights;

    void add(const SparseVec& g, double weight) {
        if (weight == 0.0) return;
        const int row = static_cast<int>(weights.size());
        for (const auto& [i, gi] : g)
            if (gi != 0.0) trip.emplace_back(row, i, gi);
        weights.push_back(weight);
    }

    PenaltyTerms finish(int ncols) {
        PenaltyTerms terms;
        terms.rows.resize(static_cast<int>(weights.size()), ncols);
        terms.rows.setFromTriplets(trip.begin(), trip.end());
        terms.weights.resize(static_cast<int>(weights.size()));
        for (std::size_t i = 0; i < weights.size(); ++i) terms.weights[i] = weights[i];
        return terms;
    }
};

void add_outer_pair(Triplets& trip, const SparseVec& a, const SparseVec& b, double scale) {
    for (const auto& [i, ai] : a)
        for (const auto& [j, bj] : b) {
            trip.emplace_back(i, j, scale * ai * bj);
            trip.emplace_back(j, i, scale * ai * bj);
        }
}

/// d_n^m of all active basis functions of a patch at zeta, scaled by coeff,
/// accumulated into `out` under the patch's global offset.
void accumulate_normal_derivative(SparseVec& out, const Patch& patch, int offset,
                                  const std::array<double, 2>& zeta, const Eigen::VectorXd& n,
                                  int m, double coeff) {
    const auto geo = patch.geometry.eval(zeta, m);
    const auto ph = physical_derivatives(patch.space.eval(zeta, m), geo, m);
    for (std::size_t a = 0; a < ph.indices.size(); ++a) {
        double v;
        if (m == 1)
            v = ph.grad.row(a).dot(n);
        else
            v = n.dot(ph.hess[a] * n);
        out[offset + ph.indices[a]] += coeff * v;
    }
}

/// Traction components of all active vector basis functions: out[a] receives
/// coeff * (sigma(phi e_c) n)_a for dof index c*ns + offset + scalar.
void accumulate_traction(std::array<SparseVec, 2>& out, const Patch& patch, int offset, int ns,
                         const std::array<double, 2>& zeta, const Eigen::VectorXd& n,
                         const LameParameters& lp, double coeff) {
    const auto geo = patch.geometry.eval(zeta, 1);
    const auto ph = physical_derivatives(patch.space.eval(zeta, 1), geo, 1);
    for (std::size_t i = 0; i < ph.indices.size(); ++i) {
        const Eigen::VectorXd g = ph.grad.row(i).transpose();
        const double gn = g.dot(n);
        for (int c = 0; c < 2; ++c) {
            const int dof = c * ns + offset + ph.indices[i];
            for (int a = 0; a < 2; ++a) {
                double t = lp.mu * (g[a] * n[c] + (a == c ? gn : 0.0)) + lp.lambda * g[c] * n[a];
                if (t != 0.0) out[a][dof] += coeff * t;
            }
        }
    }
}

int max_interface_order(const PenaltyConfig& cfg) {
    int m = 0;
    for (std::size_t i = 0; i < cfg.interface_constants.size(); ++i)
        if (cfg.interface_constants[i] != 0.0) m = static_cast<int>(i) + 1;
    return m;
}

} // namespace

PenaltyConfig PenaltyConfig::uniform(double C, int half_order, int degree) {
    PenaltyConfig cfg;
    cfg.half_order = half_order;
    const int mmax = std::min(degree - 1, 2);
    cfg.interface_constants.assign(std::max(mmax, 0), C);
    cfg.boundary_constant = C;
    cfg.crosspoint_constant = C;
    cfg.validate();
    return cfg;
}

void PenaltyConfig::validate() const {
    if (half_order != 1 && half_order != 2)
        throw std::invalid_argument("penalty: half_order must be 1 or 2");
    if (interface_constants.size() > 2)
        throw std::invalid_argument(
            "penalty: normal derivative jumps beyond second order are not supported");
    for (double c : interface_constants)
        if (c < 0.0) throw std::invalid_argument("penalty: negative interface constant");
    if (boundary_constant < 0.0 || crosspoint_constant < 0.0)
        throw std::invalid_argument("penalty: negative constant");
}

SpMat assemble_mass(const MultiPatch& mp, int ncomp, int quad_pts) {
    return assemble_volume(mp, ncomp, 0, quad_pts,
                           [ncomp](Eigen::MatrixXd& local, const PhysEval& ph, double w) {
                               const int na = static_cast<int>(ph.indices.size());
                               for (int a = 0; a < na; ++a)
                                   for (int b = 0; b < na; ++b)
                                       for (int c = 0; c < ncomp; ++c)
                                           local(a * ncomp + c, b * ncomp + c) +=
                                               w * ph.values[a] * ph.values[b];
                           });
}

SpMat assemble_stiffness_laplace(const MultiPatch& mp, int quad_pts) {
    return assemble_volume(mp, 1, 1, quad_pts,
                           [](Eigen::MatrixXd& local, const PhysEval& ph, double w) {
                               local += w * ph.grad * ph.grad.transpose();
                           });
}

SpMat assemble_stiffness_elasticity(const MultiPatch& mp, double E, double nu, int quad_pts) {
    if (mp.dim() != 2) throw std::invalid_argument("elasticity: two-dimensional domains only");
    const LameParameters lp = lame_parameters(E, nu);
    return assemble_volume(
        mp, 2, 1, quad_pts, [lp](Eigen::MatrixXd& local, const PhysEval& ph, double w) {
            const int na = static_cast<int>(ph.indices.size());
            for (int a = 0; a < na; ++a)
                for (int b = 0; b < na; ++b) {
                    const double gg = ph.grad.row(a).dot(ph.grad.row(b));
                    for (int c = 0; c < 2; ++c)
                        for (int e = 0; e < 2; ++e) {
                            double v = lp.mu * ph.grad(a, e) * ph.grad(b, c) +
                                       lp.lambda * ph.grad(a, c) * ph.grad(b, e);
                            if (c == e) v += lp.mu * gg;
                            local(a * 2 + c, b * 2 + e) += w * v;
                        }
                }
        });
}

SpMat assemble_bending(const MultiPatch& mp, int quad_pts) {
    for (const auto& p : mp.patches)
        if (p.space.degree(0) < 2 || (p.space.parametric_dim() == 2 && p.space.degree(1) < 2))
            throw std::invalid_argument("bending: spline degree must be at least 2");
    return assemble_volume(mp, 1, 2, quad_pts,
                           [](Eigen::MatrixXd& local, const PhysEval& ph, double w) {
                               const int na = static_cast<int>(ph.indices.size());
                               for (int a = 0; a < na; ++a)
                                   for (int b = 0; b < na; ++b)
                                       local(a, b) +=
                                           w * ph.hess[a].cwiseProduct(ph.hess[b]).sum();
                           });
}

Eigen::VectorXd assemble_load(const MultiPatch& mp,
                              const std::function<double(const Eigen::VectorXd&)>& f,
                              int quad_pts) {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(mp.total_dim());
    const auto off = mp.patch_offsets();
    for (int k = 0; k < mp.num_patches(); ++k) {
        const auto& patch = mp.patches[k];
        const int qpd = patch_quad(patch, quad_pts, 2);
        for_each_element(patch, qpd, 0, [&](const std::vector<PhysEval>& evals,
                                            const std::vector<Eigen::VectorXd>& xs,
                                            const std::vector<double>& ws) {
            for (std::size_t q = 0; q < evals.size(); ++q) {
                const double fw = f(xs[q]) * ws[q];
                for (std::size_t a = 0; a < evals[q].indices.size(); ++a)
                    rhs[off[k] + evals[q].indices[a]] += fw * evals[q].values[a];
            }
        });
    }
    return rhs;
}

std::vector<int> multiplier_offsets(const std::vector<MortarSpace>& mortar) {
    std::vector<int> off(mortar.size() + 1, 0);
    for (std::size_t l = 0; l < mortar.size(); ++l) off[l + 1] = off[l] + mortar[l].dim();
    return off;
}

SpMat assemble_mortar_coupling(const MultiPatch& mp, const std::vector<MortarSpace>& mortar,
                               int ncomp) {
    const int ns = mp.total_dim();
    const auto off = mp.patch_offsets();
    const auto moff = multiplier_offsets(mortar);
    const int nm = moff.back();
    Triplets trip;
    for (const auto& ms : mortar) {
        const auto& itf = mp.interfaces.at(ms.interface_id);
        const auto& slave = mp.patches[itf.spec.slave_patch];
        const auto& master = mp.patches[itf.spec.master_patch];
        const int qpd = std::max(slave.space.degree(0), master.space.degree(0)) + 2;
        const auto rules = interface_quadrature(mp, ms.interface_id, qpd);
        for (const auto& rule : rules) {
            for (const auto& nd : rule.nodes) {
                const auto psi = ms.eval(nd.s);
                SparseVec jump;
                {
                    const auto bs = slave.space.eval(nd.zeta_slave, 0);
                    for (std::size_t a = 0; a < bs.indices.size(); ++a)
                        jump[off[itf.spec.slave_patch] + bs.indices[a]] += bs.values[a];
                    const auto bm = master.space.eval(nd.zeta_master, 0);
                    for (std::size_t a = 0; a < bm.indices.size(); ++a)
                        jump[off[itf.spec.master_patch] + bm.indices[a]] -= bm.values[a];
                }
                for (const auto& [mi, mv] : psi)
                    for (const auto& [dof, jv] : jump) {
                        const double v = nd.weight * mv * jv;
                        if (v == 0.0) continue;
                        for (int c = 0; c < ncomp; ++c)
                            trip.emplace_back(c * nm + moff[ms.interface_id] + mi, c * ns + dof,
                                              v);
                    }
            }
        }
    }
    SpMat B(ncomp * nm, ncomp * ns);
    B.setFromTriplets(trip.begin(), trip.end());
    return B;
}

PenaltyTerms interface_penalty_terms(const MultiPatch& mp, const PenaltyConfig& cfg) {
    cfg.validate();
    const int ns = mp.total_dim();
    const auto off = mp.patch_offsets();
    const int n = cfg.half_order;
    const int mmax = max_interface_order(cfg);
    TermCollector terms;
    for (const auto& itf : mp.interfaces) {
        if (mmax == 0) break;
        const auto& slave = mp.patches[itf.spec.slave_patch];
        const auto& master = mp.patches[itf.spec.master_patch];
        const int qpd = std::max(slave.space.degree(0), master.space.degree(0)) + 2;
        const auto rules = interface_quadrature(mp, itf.id, qpd);

        auto point_jump = [&](const InterfaceNode& nd, int m) {
            SparseVec j;
            accumulate_normal_derivative(j, slave, off[itf.spec.slave_patch], nd.zeta_slave,
                                         nd.normal, m, 1.0);
            accumulate_normal_derivative(j, master, off[itf.spec.master_patch], nd.zeta_master,
                                         nd.normal, m, -1.0);
            return j;
        };

        if (mp.dim() == 1) {
            const auto& nd = rules.front().nodes.front();
            const double h = rules.front().h_s;
            for (int m = 1; m <= mmax; ++m)
                terms.add(point_jump(nd, m),
                          cfg.interface_constants[m - 1] * std::pow(h, 2.0 * (m - n)));
            continue;
        }

        for (const auto& rule : rules) {
            double len = 0.0;
            std::array<SparseVec, 2> mean;
            for (const auto& nd : rule.nodes) {
                len += nd.weight;
                for (int m = 1; m <= mmax; ++m) {
                    accumulate_normal_derivative(mean[m - 1], slave, off[itf.spec.slave_patch],
                                                 nd.zeta_slave, nd.normal, m, nd.weight);
                    accumulate_normal_derivative(mean[m - 1], master, off[itf.spec.master_patch],
                                                 nd.zeta_master, nd.normal, m, -nd.weight);
                }
            }
            for (int m = 1; m <= mmax; ++m) {
                // elementwise mean: divide by |e|; quadratic form gains |e| back
                const double scale = cfg.interface_constants[m - 1] *
                                     std::pow(rule.h_s, 2.0 * (m - n) - 1.0) / len;
                terms.add(mean[m - 1], scale);
            }
        }

        if (cfg.crosspoint_constant > 0.0) {
            for (int e = 0; e < 2; ++e) {
                const double s = e == 0 ? 0.0 : 1.0;
                const double h = e == 0 ? rules.front().h_s : rules.back().h_s;
                InterfaceNode nd;
                nd.s = s;
                nd.zeta_slave = side_point(itf.spec.slave_side, s);
                nd.zeta_master = side_point(itf.spec.master_side, itf.reversed ? 1.0 - s : s);
                const auto ge = slave.geometry.eval(nd.zeta_slave, 1);
                Eigen::Vector2d nv = ge.jacobian.inverse().transpose() *
                                     side_parametric_normal(itf.spec.slave_side);
                nd.normal = nv.normalized();
                for (int m = 1; m <= mmax; ++m)
                    terms.add(point_jump(nd, m),
                              cfg.crosspoint_constant * std::pow(h, 2.0 * (m - n)));
            }
        }
    }
    return terms.finish(ns);
}

PenaltyTerms boundary_penalty_terms(const MultiPatch& mp, const PenaltyConfig& cfg) {
    cfg.validate();
    const int ns = mp.total_dim();
    const auto off = mp.patch_offsets();
    const int n = cfg.half_order;
    const int nsides = mp.dim() == 1 ? 2 : 4;
    TermCollector terms;
    if (cfg.boundary_constant == 0.0 && cfg.crosspoint_constant == 0.0) return terms.finish(ns);
    for (int k = 0; k < mp.num_patches(); ++k) {
        for (int s = 0; s < nsides; ++s) {
            const Side side = static_cast<Side>(s);
            if (!mp.tags[k][s].penalized) continue;
            const auto& patch = mp.patches[k];
            const auto rules = boundary_quadrature(mp, k, side, patch.space.degree(0) + 2);

            if (mp.dim() == 1) {
                const auto& nd = rules.front().nodes.front();
                SparseVec d;
                accumulate_normal_derivative(d, patch, off[k], nd.zeta, nd.normal, 1, 1.0);
                terms.add(d, cfg.boundary_constant * std::pow(rules.front().h, 2.0 * (1 - n)));
                continue;
            }

            for (const auto& rule : rules) {
                double len = 0.0;
                SparseVec mean;
                for (const auto& nd : rule.nodes) {
                    len += nd.weight;
                    accumulate_normal_derivative(mean, patch, off[k], nd.zeta, nd.normal, 1,
                                                 nd.weight);
                }
                const double scale =
                    cfg.boundary_constant * std::pow(rule.h, 2.0 * (1 - n) - 1.0) / len;
                terms.add(mean, scale);
            }
            if (cfg.crosspoint_constant > 0.0) {
                for (int e = 0; e < 2; ++e) {
                    const double t = e == 0 ? 0.0 : 1.0;
                    const double h = e == 0 ? rules.front().h : rules.back().h;
                    const auto zeta = side_point(side, t);
                    const auto ge = patch.geometry.eval(zeta, 1);
                    Eigen::Vector2d nv =
                        ge.jacobian.inverse().transpose() * side_parametric_normal(side);
                    SparseVec d;
                    accumulate_normal_derivative(d, patch, off[k], zeta,
                                                 Eigen::VectorXd(nv.normalized()), 1, 1.0);
                    terms.add(d, cfg.crosspoint_constant * std::pow(h, 2.0 * (1 - n)));
                }
            }
        }
    }
    return terms.finish(ns);
}

PenaltyTerms interface_penalty_terms_elasticity(const MultiPatch& mp, const PenaltyConfig& cfg,
                                                double E, double nu) {
    cfg.validate();
    if (mp.dim() != 2) throw std::invalid_argument("elasticity: two-dimensional domains only");
    const LameParameters lp = lame_parameters(E, nu);
    const int ns = mp.total_dim();
    const auto off = mp.patch_offsets();
    const int n = cfg.half_order;
    const double C1 = cfg.interface_constants.empty() ? 0.0 : cfg.interface_constants[0];
    TermCollector terms;
    for (const auto& itf : mp.interfaces) {
        if (C1 == 0.0 && cfg.crosspoint_constant == 0.0) break;
        const auto& slave = mp.patches[itf.spec.slave_patch];
        const auto& master = mp.patches[itf.spec.master_patch];
        const int qpd = std::max(slave.space.degree(0), master.space.degree(0)) + 2;
        const auto rules = interface_quadrature(mp, itf.id, qpd);

        for (const auto& rule : rules) {
            double len = 0.0;
            std::array<SparseVec, 2> mean;
            for (const auto& nd : rule.nodes) {
                len += nd.weight;
                accumulate_traction(mean, slave, off[itf.spec.slave_patch], ns, nd.zeta_slave,
                                    nd.normal, lp, nd.weight);
                accumulate_traction(mean, master, off[itf.spec.master_patch], ns, nd.zeta_master,
                                    nd.normal, lp, -nd.weight);
            }
            const double scale = C1 * std::pow(rule.h_s, 2.0 * (1 - n) - 1.0) / len;
            for (int a = 0; a < 2; ++a) terms.add(mean[a], scale);
        }

        if (cfg.crosspoint_constant > 0.0) {
            for (int e = 0; e < 2; ++e) {
                const double s = e == 0 ? 0.0 : 1.0;
                const double h = e == 0 ? rules.front().h_s : rules.back().h_s;
                const auto zs = side_point(itf.spec.slave_side, s);
                const auto zm = side_point(itf.spec.master_side, itf.reversed ? 1.0 - s : s);
                const auto ge = slave.geometry.eval(zs, 1);
                Eigen::Vector2d nv = ge.jacobian.inverse().transpose() *
                                     side_parametric_normal(itf.spec.slave_side);
                const Eigen::VectorXd nrm = nv.normalized();
                std::array<SparseVec, 2> jump;
                accumulate_traction(jump, slave, off[itf.spec.slave_patch], ns, zs, nrm, lp, 1.0);
                accumulate_traction(jump, master, off[itf.spec.master_patch], ns, zm, nrm, lp,
                                    -1.0);
                const double scale = cfg.crosspoint_constant * std::pow(h, 2.0 * (1 - n));
                for (int a = 0; a < 2; ++a) terms.add(jump[a], scale);
            }
        }
    }
    return terms.finish(2 * ns);
}

PenaltyTerms boundary_penalty_terms_elasticity(const MultiPatch& mp, const PenaltyConfig& cfg,
                                               double E, double nu) {
    cfg.validate();
    if (mp.dim() != 2) throw std::invalid_argument("elasticity: two-dimensional domains only");
    const LameParameters lp = lame_parameters(E, nu);
    const int ns = mp.total_dim();
    const auto off = mp.patch_offsets();
    const int n = cfg.half_order;
    TermCollector terms;
    for (int k = 0; k < mp.num_patches(); ++k) {
        for (int s = 0; s < 4; ++s) {
            const Side side = static_cast<Side>(s);
            if (!mp.tags[k][s].penalized) continue;
            const auto& patch = mp.patches[k];
            const auto rules = boundary_quadrature(mp, k, side, patch.space.degree(0) + 2);
            for (const auto& rule : rules) {
                double len = 0.0;
                std::array<SparseVec, 2> mean;
                for (const auto& nd : rule.nodes) {
                    len += nd.weight;
                    accumulate_traction(mean, patch, off[k], ns, nd.zeta, nd.normal, lp,
                                        nd.weight);
                }
                const double scale =
                    cfg.boundary_constant * std::pow(rule.h, 2.0 * (1 - n) - 1.0) / len;
                for (int a = 0; a < 2; ++a) terms.add(mean[a], scale);
            }
            if (cfg.crosspoint_constant > 0.0) {
                for (int e = 0; e < 2; ++e) {
                    const double t = e == 0 ? 0.0 : 1.0;
                    const double h = e == 0 ? rules.front().h : rules.back().h;
                    const auto zeta = side_point(side, t);
                    const auto ge = patch.geometry.eval(zeta, 1);
                    Eigen::Vector2d nv =
                        ge.jacobian.inverse().transpose() * side_parametric_normal(side);
                    std::array<SparseVec, 2> d;
                    accumulate_traction(d, patch, off[k], ns, zeta,
                                        Eigen::VectorXd(nv.normalized()), lp, 1.0);
                    const double scale = cfg.crosspoint_constant * std::pow(h, 2.0 * (1 - n));
                    for (int a = 0; a < 2; ++a) terms.add(d[a], scale);
                }
            }
        }
    }
    return terms.finish(2 * ns);
}

void PenaltyTerms::append(const PenaltyTerms& other) {
    if (other.count() == 0) return;
    if (count() == 0) {
        *this = other;
        return;
    }
    if (rows.cols() != other.rows.cols())
        throw std::invalid_argument("penalty terms: mismatched dof layouts");
    SpMat stacked(rows.rows() + other.rows.rows(), rows.cols());
    Triplets trip;
    for (int c = 0; c < rows.outerSize(); ++c)
        for (SpMat::InnerIterator it(rows, c); it; ++it)
            trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    for (int c = 0; c < other.rows.outerSize(); ++c)
        for (SpMat::InnerIterator it(other.rows, c); it; ++it)
            trip.emplace_back(static_cast<int>(rows.rows() + it.row()),
                              static_cast<int>(it.col()), it.value());
    stacked.setFromTriplets(trip.begin(), trip.end());
    rows = std::move(stacked);
    Eigen::VectorXd w(weights.size() + other.weights.size());
    w << weights, other.weights;
    weights = std::move(w);
}

SpMat penalty_matrix(const PenaltyTerms& terms) {
    return terms.rows.transpose() * terms.weights.asDiagonal() * terms.rows;
}

SpMat assemble_interface_penalty(const MultiPatch& mp, const PenaltyConfig& cfg) {
    return penalty_matrix(interface_penalty_terms(mp, cfg));
}

SpMat assemble_boundary_penalty(const MultiPatch& mp, const PenaltyConfig& cfg) {
    return penalty_matrix(boundary_penalty_terms(mp, cfg));
}

SpMat assemble_interface_penalty_elasticity(const MultiPatch& mp, const PenaltyConfig& cfg,
                                            double E, double nu) {
    return penalty_matrix(interface_penalty_terms_elasticity(mp, cfg, E, nu));
}

SpMat assemble_boundary_penalty_elasticity(const MultiPatch& mp, const PenaltyConfig& cfg,
                                           double E, double nu) {
    return penalty_matrix(boundary_penalty_terms_elasticity(mp, cfg, E, nu));
}

SpMat assemble_biharmonic_consistency(const MultiPatch& mp, int quad_pts) {
    if (mp.dim() != 2)
        throw std::invalid_argument("consistency terms: two-dimensional domains only");
    const int ns = mp.total_dim();
    const auto off = mp.patch_offsets();
    Triplets trip;
    const double sign = -1.0;

    auto point_terms = [&](const SparseVec& jn1, const SparseVec& av2, double w) {
        add_outer_pair(trip, av2, jn1, sign * w);
    };

    for (const auto& itf : mp.interfaces) {
        const auto& slave = mp.patches[itf.spec.slave_patch];
        const auto& master = mp.patches[itf.spec.master_patch];
        const int qpd = quad_pts > 0
                            ? quad_pts
                            : std::max(slave.space.degree(0), master.space.degree(0)) + 2;
        for (const auto& rule : interface_quadrature(mp, itf.id, qpd)) {
            for (const auto& nd : rule.nodes) {
                SparseVec jn1, av2;
                accumulate_normal_derivative(jn1, slave, off[itf.spec.slave_patch],
                                             nd.zeta_slave, nd.normal, 1, 1.0);
                accumulate_normal_derivative(jn1, master, off[itf.spec.master_patch],
                                             nd.zeta_master, nd.normal, 1, -1.0);
                accumulate_normal_derivative(av2, slave, off[itf.spec.slave_patch],
                                             nd.zeta_slave, nd.normal, 2, 0.5);
                accumulate_normal_derivative(av2, master, off[itf.spec.master_patch],
                                             nd.zeta_master, nd.normal, 2, 0.5);
                point_terms(jn1, av2, nd.weight);
            }
        }
    }

    for (int k = 0; k < mp.num_patches(); ++k) {
        for (int s = 0; s < 4; ++s) {
            if (!(mp.tags[k][s].dirichlet && mp.tags[k][s].penalized)) continue;
            const auto& patch = mp.patches[k];
            const int qpd = quad_pts > 0 ? quad_pts : patch.space.degree(0) + 2;
            for (const auto& rule : boundary_quadrature(mp, k, static_cast<Side>(s), qpd)) {
                for (const auto& nd : rule.nodes) {
                    SparseVec d1, d2;
                    accumulate_normal_derivative(d1, patch, off[k], nd.zeta, nd.normal, 1, 1.0);
                    accumulate_normal_derivative(d2, patch, off[k], nd.zeta, nd.normal, 2, 1.0);
                    point_terms(d1, d2, nd.weight);
                }
            }
        }
    }
    SpMat C(ns, ns);
    C.setFromTriplets(trip.begin(), trip.end());
    return C;
}

SpMat DofReduction::reduce_matrix(const SpMat& A) const {
    std::vector<int> pos(full_dim, -1);
    for (int i = 0; i < dim(); ++i) pos[keep[i]] = i;
    Triplets trip;
    for (int col = 0; col < A.outerSize(); ++col)
        for (SpMat::InnerIterator it(A, col); it; ++it)
            if (pos[it.row()] >= 0 && pos[it.col()] >= 0)
                trip.emplace_back(pos[it.row()], pos[it.col()], it.value());
    SpMat R(dim(), dim());
    R.setFromTriplets(trip.begin(), trip.end());
    return R;
}

SpMat DofReduction::reduce_cols(const SpMat& B) const {
    std::vector<int> pos(full_dim, -1);
    for (int i = 0; i < dim(); ++i) pos[keep[i]] = i;
    Triplets trip;
    for (int col = 0; col < B.outerSize(); ++col)
        for (SpMat::InnerIterator it(B, col); it; ++it)
            if (pos[it.col()] >= 0) trip.emplace_back(it.row(), pos[it.col()], it.value());
    SpMat R(B.rows(), dim());
    R.setFromTriplets(trip.begin(), trip.end());
    return R;
}

Eigen::VectorXd DofReduction::reduce_vector(const Eigen::VectorXd& v) const {
    Eigen::VectorXd out(dim());
    for (int i = 0; i < dim(); ++i) out[i] = v[keep[i]];
    return out;
}

Eigen::VectorXd DofReduction::expand(const Eigen::VectorXd& v) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(full_dim);
    for (int i = 0; i < dim(); ++i) out[keep[i]] = v[i];
    return out;
}

DofReduction essential_bc(const MultiPatch& mp, int ncomp, bool strong_normal) {
    if (strong_normal) {
        // two-layer elimination needs whole tensor-product sides; a dirichlet
        // side that also carries an interface has no free second layer
        for (int k = 0; k < mp.num_patches(); ++k)
            for (int s = 0; s < (mp.dim() == 1 ? 2 : 4); ++s)
                if (mp.tags[k][s].dirichlet && mp.side_on_interface(k, static_cast<Side>(s)))
                    throw std::invalid_argument(
                        "essential_bc: strong normal derivative conditions are not supported "
                        "on sides shared with an interface; use the boundary penalty instead");
    }
    const int ns = mp.total_dim();
    const int nsides = mp.dim() == 1 ? 2 : 4;
    std::set<int> removed;
    for (int k = 0; k < mp.num_patches(); ++k) {
        for (int s = 0; s < nsides; ++s) {
            if (!mp.tags[k][s].dirichlet) continue;
            const Side side = static_cast<Side>(s);
            const int nlayers = strong_normal ? 2 : 1;
            if (mp.dim() == 1) {
                for (int layer = 0; layer < nlayers; ++layer)
                    removed.insert(mp.side_layer_dof(k, side, 0, layer));
            } else {
                const int tdim =
                    mp.patches[k].space.knot_vector(side_tangent_dir(side)).dim();
                for (int layer = 0; layer < nlayers; ++layer)
                    for (int j = 0; j < tdim; ++j)
                        removed.insert(mp.side_layer_dof(k, side, j, layer));
            }
        }
    }
    DofReduction red;
    red.full_dim = ncomp * ns;
    for (int c = 0; c < ncomp; ++c)
        for (int i = 0; i < ns; ++i)
            if (!removed.count(i)) red.keep.push_back(c * ns + i);
    return red;
}

} // namespace igam
