#include "igam/space.hpp"

#include <stdexcept>

namespace igam {

TensorSplineSpace::TensorSplineSpace(KnotVector kv) { kvs_.push_back(std::move(kv)); }

TensorSplineSpace::TensorSplineSpace(KnotVector kv_x, KnotVector kv_y) {
    kvs_.push_back(std::move(kv_x));
    kvs_.push_back(std::move(kv_y));
}

int TensorSplineSpace::dim() const {
    int d = 1;
    for (const auto& kv : kvs_) d *= kv.dim();
    return d;
}

int TensorSplineSpace::index(int i, int j) const {
    return parametric_dim() == 1 ? i : i + kvs_[0].dim() * j;
}

SpaceEval TensorSplineSpace::eval(const std::array<double, 2>& zeta, int order) const {
    const int d = parametric_dim();
    SpaceEval out;
    if (d == 1) {
        const auto t = eval_basis(kvs_[0], zeta[0], order);
        const int p = kvs_[0].degree;
        out.indices.resize(p + 1);
        out.values.resize(p + 1);
        if (order >= 1) out.grad.resize(p + 1, 1);
        if (order >= 2) out.hess.assign(p + 1, Eigen::MatrixXd(1, 1));
        for (int i = 0; i <= p; ++i) {
            out.indices[i] = t.first_index + i;
            out.values[i] = t.ders(0, i);
            if (order >= 1) out.grad(i, 0) = t.ders(1, i);
            if (order >= 2) out.hess[i](0, 0) = t.ders(2, i);
        }
        return out;
    }
    const auto tx = eval_basis(kvs_[0], zeta[0], order);
    const auto ty = eval_basis(kvs_[1], zeta[1], order);
    const int px = kvs_[0].degree, py = kvs_[1].degree;
    const int n = (px + 1) * (py + 1);
    out.indices.resize(n);
    out.values.resize(n);
    if (order >= 1) out.grad.resize(n, 2);
    if (order >= 2) out.hess.assign(n, Eigen::MatrixXd(2, 2));
    int a = 0;
    for (int j = 0; j <= py; ++j) {
        for (int i = 0; i <= px; ++i, ++a) {
            out.indices[a] = index(tx.first_index + i, ty.first_index + j);
            out.values[a] = tx.ders(0, i) * ty.ders(0, j);
            if (order >= 1) {
                out.grad(a, 0) = tx.ders(1, i) * ty.ders(0, j);
                out.grad(a, 1) = tx.ders(0, i) * ty.ders(1, j);
            }
            if (order >= 2) {
                out.hess[a](0, 0) = tx.ders(2, i) * ty.ders(0, j);
                out.hess[a](1, 1) = tx.ders(0, i) * ty.ders(2, j);
                out.hess[a](0, 1) = out.hess[a](1, 0) = tx.ders(1, i) * ty.ders(1, j);
            }
        }
    }
    return out;
}

std::vector<std::array<double, 2>> TensorSplineSpace::greville() const {
    std::vector<std::array<double, 2>> pts;
    const auto gx = kvs_[0].greville();
    if (parametric_dim() == 1) {
        for (double x : gx) pts.push_back({x, 0.0});
        return pts;
    }
    const auto gy = kvs_[1].greville();
    for (double y : gy)
        for (double x : gx) pts.push_back({x, y});
    return pts;
}

TensorSplineSpace TensorSplineSpace::refined() const {
    if (parametric_dim() == 1) return TensorSplineSpace(h_refine(kvs_[0]));
    return TensorSplineSpace(h_refine(kvs_[0]), h_refine(kvs_[1]));
}

} // namespace igam
