#include "igam/multipatch.hpp"

#include "igam/gauss.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace igam {

std::array<double, 2> side_point(Side s, double t) {
    switch (s) {
        case Side::West: return {0.0, t};
        case Side::East: return {1.0, t};
        case Side::South: return {t, 0.0};
        case Side::North: return {t, 1.0};
    }
    return {};
}

int side_tangent_dir(Side s) { return (s == Side::West || s == Side::East) ? 1 : 0; }

Eigen::Vector2d side_parametric_normal(Side s) {
    switch (s) {
        case Side::West: return {-1.0, 0.0};
        case Side::East: return {1.0, 0.0};
        case Side::South: return {0.0, -1.0};
        case Side::North: return {0.0, 1.0};
    }
    return {};
}

std::vector<int> MultiPatch::patch_offsets() const {
    std::vector<int> off(patches.size() + 1, 0);
    for (std::size_t k = 0; k < patches.size(); ++k)
        off[k + 1] = off[k] + patches[k].space.dim();
    return off;
}

int MultiPatch::total_dim() const { return patch_offsets().back(); }

const KnotVector& MultiPatch::slave_trace_kv(int l) const {
    const auto& itf = interfaces.at(l);
    const auto& sp = patches[itf.spec.slave_patch].space;
    return sp.knot_vector(side_tangent_dir(itf.spec.slave_side));
}

int MultiPatch::side_layer_dof(int k, Side side, int j, int layer) const {
    const auto& sp = patches[k].space;
    const int off = patch_offsets()[k];
    if (dim() == 1) {
        return off + (side == Side::West ? layer : sp.dim() - 1 - layer);
    }
    const int nx = sp.knot_vector(0).dim();
    const int ny = sp.knot_vector(1).dim();
    switch (side) {
        case Side::West: return off + sp.index(layer, j);
        case Side::East: return off + sp.index(nx - 1 - layer, j);
        case Side::South: return off + sp.index(j, layer);
        case Side::North: return off + sp.index(j, ny - 1 - layer);
    }
    return -1;
}

bool MultiPatch::side_on_interface(int k, Side side) const {
    for (const auto& itf : interfaces) {
        if ((itf.spec.slave_patch == k && itf.spec.slave_side == side) ||
            (itf.spec.master_patch == k && itf.spec.master_side == side))
            return true;
    }
    return false;
}

double MultiPatch::side_arclength(int k, Side side, double a, double b) const {
    if (dim() == 1) return 0.0;
    const auto& geo = patches[k].geometry;
    const int tdir = side_tangent_dir(side);
    const int npts = patches[k].space.degree(tdir) + 3;
    const auto rule = gauss_legendre(npts, a, b);
    double len = 0.0;
    for (int q = 0; q < npts; ++q) {
        const auto ge = geo.eval(side_point(side, rule.points[q]), 1);
        len += rule.weights[q] * ge.jacobian.col(tdir).norm();
    }
    return len;
}

namespace {

double domain_diameter(const std::vector<Patch>& patches) {
    Eigen::VectorXd lo, hi;
    for (const auto& p : patches) {
        const Eigen::VectorXd pl = p.geometry.control_points.colwise().minCoeff();
        const Eigen::VectorXd ph = p.geometry.control_points.colwise().maxCoeff();
        if (lo.size() == 0) {
            lo = pl;
            hi = ph;
        } else {
            lo = lo.cwiseMin(pl);
            hi = hi.cwiseMax(ph);
        }
    }
    return (hi - lo).norm();
}

// max distance between corresponding boundary points for a given orientation
double correspondence_gap(const Patch& slave, Side ss, const Patch& master, Side ms,
                          bool reversed) {
    double gap = 0.0;
    for (int i = 0; i <= 8; ++i) {
        const double s = i / 8.0;
        const double t = reversed ? 1.0 - s : s;
        const Eigen::VectorXd xs = slave.geometry.point(side_point(ss, s));
        const Eigen::VectorXd xm = master.geometry.point(side_point(ms, t));
        gap = std::max(gap, (xs - xm).norm());
    }
    return gap;
}

void add_crosspoint(std::vector<Eigen::VectorXd>& pts, const Eigen::VectorXd& x, double tol) {
    for (const auto& p : pts)
        if ((p - x).norm() <= tol) return;
    pts.push_back(x);
}

} // namespace

MultiPatch build_multipatch(std::vector<Patch> patches, const std::vector<InterfaceSpec>& specs,
                            std::vector<std::array<SideTag, 4>> tags, double tol) {
    if (patches.empty()) throw TopologyError("build_multipatch: need at least one patch");
    const int d = patches.front().geometry.dim();
    for (const auto& p : patches) {
        if (p.geometry.dim() != d || p.space.parametric_dim() != d)
            throw TopologyError("build_multipatch: mixed parametric dimensions");
    }
    if (tags.size() != patches.size())
        throw TopologyError("build_multipatch: one tag set per patch required");
    if (tol <= 0.0) tol = 1e-10 * domain_diameter(patches);

    MultiPatch mp;
    mp.patches = std::move(patches);
    mp.tags = std::move(tags);
    mp.tolerance = tol;

    std::set<std::pair<int, int>> used;
    for (const auto& spec : specs) {
        for (auto [k, s] : {std::pair{spec.slave_patch, spec.slave_side},
                            std::pair{spec.master_patch, spec.master_side}}) {
            if (k < 0 || k >= mp.num_patches())
                throw TopologyError("build_multipatch: interface references missing patch");
            if (d == 1 && (s == Side::South || s == Side::North))
                throw TopologyError("build_multipatch: 1D patches only have West/East sides");
            if (!used.insert({k, static_cast<int>(s)}).second) {
                std::ostringstream os;
                os << "build_multipatch: patch " << k << " side " << static_cast<int>(s)
                   << " used by more than one interface";
                throw TopologyError(os.str());
            }
        }
        Interface itf;
        itf.id = static_cast<int>(mp.interfaces.size());
        itf.spec = spec;
        const auto& slave = mp.patches[spec.slave_patch];
        const auto& master = mp.patches[spec.master_patch];
        if (d == 1) {
            const Eigen::VectorXd xs = slave.geometry.point(side_point(spec.slave_side, 0.0));
            const Eigen::VectorXd xm = master.geometry.point(side_point(spec.master_side, 0.0));
            if ((xs - xm).norm() > tol) {
                std::ostringstream os;
                os << "build_multipatch: interface " << itf.id << " endpoints differ by "
                   << (xs - xm).norm();
                throw TopologyError(os.str());
            }
            // arclength of the slave element adjacent to the interface point
            const auto& kv = slave.space.knot_vector(0);
            const auto brk = kv.breakpoints();
            const double a = (spec.slave_side == Side::East) ? brk[brk.size() - 2] : brk[0];
            const double b = (spec.slave_side == Side::East) ? brk.back() : brk[1];
            const Eigen::VectorXd xa = slave.geometry.point({a, 0.0});
            const Eigen::VectorXd xb = slave.geometry.point({b, 0.0});
            itf.element_arclength = {(xb - xa).norm()};
            itf.length = 0.0;
        } else {
            const double gap_same = correspondence_gap(slave, spec.slave_side, master,
                                                       spec.master_side, false);
            const double gap_rev = correspondence_gap(slave, spec.slave_side, master,
                                                      spec.master_side, true);
            itf.reversed = gap_rev < gap_same;
            const double gap = std::min(gap_same, gap_rev);
            if (gap > tol) {
                std::ostringstream os;
                os << "build_multipatch: interface " << itf.id
                   << " sides do not coincide (max gap " << gap << ", tol " << tol << ")";
                throw TopologyError(os.str());
            }
            const auto brk =
                slave.space.knot_vector(side_tangent_dir(spec.slave_side)).breakpoints();
            for (std::size_t e = 0; e + 1 < brk.size(); ++e) {
                // fill via mp later; need mp.side_arclength, so compute directly here
                const int tdir = side_tangent_dir(spec.slave_side);
                const auto rule = gauss_legendre(slave.space.degree(tdir) + 3, brk[e], brk[e + 1]);
                double len = 0.0;
                for (std::size_t q = 0; q < rule.points.size(); ++q) {
                    const auto ge = slave.geometry.eval(side_point(spec.slave_side, rule.points[q]), 1);
                    len += rule.weights[q] * ge.jacobian.col(tdir).norm();
                }
                itf.element_arclength.push_back(len);
                itf.length += len;
            }
        }
        mp.interfaces.push_back(std::move(itf));
    }

    // light overlap check: interior sample points of distinct patches must not coincide
    if (d == 2) {
        std::vector<std::vector<Eigen::VectorXd>> samples(mp.num_patches());
        for (int k = 0; k < mp.num_patches(); ++k)
            for (int i = 1; i <= 4; ++i)
                for (int j = 1; j <= 4; ++j)
                    samples[k].push_back(mp.patches[k].geometry.point({i / 5.0, j / 5.0}));
        for (int k1 = 0; k1 < mp.num_patches(); ++k1)
            for (int k2 = k1 + 1; k2 < mp.num_patches(); ++k2)
                for (const auto& a : samples[k1])
                    for (const auto& b : samples[k2])
                        if ((a - b).norm() <= tol)
                            throw TopologyError("build_multipatch: patch interiors overlap");
    }

    // crosspoints: interface endpoints and corners of penalized boundary sides
    if (d == 2) {
        for (const auto& itf : mp.interfaces) {
            const auto& slave = mp.patches[itf.spec.slave_patch];
            for (double t : {0.0, 1.0})
                add_crosspoint(mp.crosspoints,
                               slave.geometry.point(side_point(itf.spec.slave_side, t)), tol);
        }
        for (int k = 0; k < mp.num_patches(); ++k)
            for (int s = 0; s < 4; ++s)
                if (mp.tags[k][s].penalized)
                    for (double t : {0.0, 1.0})
                        add_crosspoint(
                            mp.crosspoints,
                            mp.patches[k].geometry.point(side_point(static_cast<Side>(s), t)),
                            tol);
    }
    return mp;
}

int MortarSpace::dim() const {
    if (point_interface) return 1;
    return trace.dim() - (reduce_begin ? 1 : 0) - (reduce_end ? 1 : 0);
}

std::vector<std::pair<int, double>> MortarSpace::eval(double s) const {
    std::vector<std::pair<int, double>> out;
    if (point_interface) {
        out.emplace_back(0, 1.0);
        return out;
    }
    const auto t = eval_basis(trace, s, 0);
    const int last = trace.dim() - 1;
    for (int j = 0; j <= trace.degree; ++j) {
        const int ti = t.first_index + j;
        if (reduce_begin && ti == 0) continue;
        if (reduce_end && ti == last) continue;
        out.emplace_back(ti - (reduce_begin ? 1 : 0), t.ders(0, j));
    }
    return out;
}

MortarSpace build_mortar_space(const MultiPatch& mp, int l, EndpointReduction rule) {
    const auto& itf = mp.interfaces.at(l);
    MortarSpace ms;
    ms.interface_id = l;
    if (mp.dim() == 1) {
        ms.point_interface = true;
        return ms;
    }
    ms.trace = mp.slave_trace_kv(l);
    if (rule == EndpointReduction::CrosspointsOnly) {
        const auto& slave = mp.patches[itf.spec.slave_patch];
        for (int e = 0; e < 2; ++e) {
            const Eigen::VectorXd x =
                slave.geometry.point(side_point(itf.spec.slave_side, e == 0 ? 0.0 : 1.0));
            bool is_cp = false;
            for (const auto& cp : mp.crosspoints)
                if ((cp - x).norm() <= mp.tolerance) is_cp = true;
            (e == 0 ? ms.reduce_begin : ms.reduce_end) = is_cp;
        }
    }
    if (ms.dim() < 1)
        throw std::runtime_error("build_mortar_space: slave discretization too coarse");
    return ms;
}

std::vector<InterfaceElementRule> interface_quadrature(const MultiPatch& mp, int l,
                                                       int points_per_segment) {
    const auto& itf = mp.interfaces.at(l);
    std::vector<InterfaceElementRule> rules;
    if (mp.dim() == 1) {
        InterfaceElementRule r;
        r.elem = 0;
        r.h_s = itf.element_arclength[0];
        InterfaceNode nd;
        nd.s = 0.0;
        nd.zeta_slave = side_point(itf.spec.slave_side, 0.0);
        nd.zeta_master = side_point(itf.spec.master_side, 0.0);
        nd.weight = 1.0;
        nd.normal = Eigen::VectorXd::Constant(1, itf.spec.slave_side == Side::East ? 1.0 : -1.0);
        r.nodes.push_back(std::move(nd));
        rules.push_back(std::move(r));
        return rules;
    }

    const auto& slave = mp.patches[itf.spec.slave_patch];
    const auto& master = mp.patches[itf.spec.master_patch];
    const int tdir = side_tangent_dir(itf.spec.slave_side);
    const Eigen::Vector2d npar = side_parametric_normal(itf.spec.slave_side);

    const auto sbrk = mp.slave_trace_kv(l).breakpoints();
    const auto mbrk =
        master.space.knot_vector(side_tangent_dir(itf.spec.master_side)).breakpoints();
    std::vector<double> merged(sbrk);
    for (double t : mbrk) merged.push_back(itf.reversed ? 1.0 - t : t);
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                 merged.end());

    for (std::size_t e = 0; e + 1 < sbrk.size(); ++e) {
        InterfaceElementRule r;
        r.elem = static_cast<int>(e);
        r.a = sbrk[e];
        r.b = sbrk[e + 1];
        r.h_s = itf.element_arclength[e];
        for (std::size_t m = 0; m + 1 < merged.size(); ++m) {
            const double a = std::max(merged[m], r.a), b = std::min(merged[m + 1], r.b);
            if (b - a < 1e-13) continue;
            const auto g = gauss_legendre(points_per_segment, a, b);
            for (std::size_t q = 0; q < g.points.size(); ++q) {
                InterfaceNode nd;
                nd.s = g.points[q];
                nd.zeta_slave = side_point(itf.spec.slave_side, nd.s);
                const double t = itf.reversed ? 1.0 - nd.s : nd.s;
                nd.zeta_master = side_point(itf.spec.master_side, t);
                const auto ge = slave.geometry.eval(nd.zeta_slave, 1);
                nd.weight = g.weights[q] * ge.jacobian.col(tdir).norm();
                Eigen::Vector2d nv = ge.jacobian.inverse().transpose() * npar;
                nd.normal = nv.normalized();
                r.nodes.push_back(std::move(nd));
            }
        }
        rules.push_back(std::move(r));
    }
    return rules;
}

std::vector<BoundaryElementRule> boundary_quadrature(const MultiPatch& mp, int k, Side side,
                                                     int points_per_element) {
    std::vector<BoundaryElementRule> rules;
    const auto& patch = mp.patches[k];
    if (mp.dim() == 1) {
        BoundaryElementRule r;
        r.elem = 0;
        const auto brk = patch.space.knot_vector(0).breakpoints();
        const double a = (side == Side::East) ? brk[brk.size() - 2] : brk[0];
        const double b = (side == Side::East) ? brk.back() : brk[1];
        const Eigen::VectorXd xa = patch.geometry.point({a, 0.0});
        const Eigen::VectorXd xb = patch.geometry.point({b, 0.0});
        r.h = (xb - xa).norm();
        BoundaryNode nd;
        nd.zeta = side_point(side, 0.0);
        nd.weight = 1.0;
        nd.normal = Eigen::VectorXd::Constant(1, side == Side::East ? 1.0 : -1.0);
        r.nodes.push_back(std::move(nd));
        rules.push_back(std::move(r));
        return rules;
    }
    const int tdir = side_tangent_dir(side);
    const Eigen::Vector2d npar = side_parametric_normal(side);
    const auto brk = patch.space.knot_vector(tdir).breakpoints();
    for (std::size_t e = 0; e + 1 < brk.size(); ++e) {
        BoundaryElementRule r;
        r.elem = static_cast<int>(e);
        r.a = brk[e];
        r.b = brk[e + 1];
        r.h = mp.side_arclength(k, side, r.a, r.b);
        const auto g = gauss_legendre(points_per_element, r.a, r.b);
        for (std::size_t q = 0; q < g.points.size(); ++q) {
            BoundaryNode nd;
            nd.zeta = side_point(side, g.points[q]);
            const auto ge = patch.geometry.eval(nd.zeta, 1);
            nd.weight = g.weights[q] * ge.jacobian.col(tdir).norm();
            Eigen::Vector2d nv = ge.jacobian.inverse().transpose() * npar;
            nd.normal = nv.normalized();
            r.nodes.push_back(std::move(nd));
        }
        rules.push_back(std::move(r));
    }
    return rules;
}

} // namespace igam
