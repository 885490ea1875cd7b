#include "igam/knots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace igam {

namespace {

void validate(const KnotVector& kv) {
    const int p = kv.degree;
    const auto& k = kv.knots;
    if (p < 1) throw std::invalid_argument("KnotVector: degree must be >= 1");
    if (static_cast<int>(k.size()) < 2 * (p + 1))
        throw std::invalid_argument("KnotVector: too few knots for an open vector");
    if (!std::is_sorted(k.begin(), k.end()))
        throw std::invalid_argument("KnotVector: knots must be nondecreasing");
    for (int i = 0; i <= p; ++i) {
        if (k[i] != k.front() || k[k.size() - 1 - i] != k.back())
            throw std::invalid_argument("KnotVector: end knots must have multiplicity p+1");
    }
    if (static_cast<int>(k.size()) > 2 * (p + 1)) {
        if (k[p + 1] == k.front() || k[k.size() - p - 2] == k.back())
            throw std::invalid_argument("KnotVector: end knots must have multiplicity exactly p+1");
    }
    // interior multiplicities <= p
    int run = 1;
    for (std::size_t i = p + 2; i + p + 1 < k.size(); ++i) {
        run = (k[i] == k[i - 1]) ? run + 1 : 1;
        if (run > p)
            throw std::invalid_argument("KnotVector: interior multiplicity exceeds degree");
    }
}

} // namespace

KnotVector::KnotVector(int p, std::vector<double> k) : degree(p), knots(std::move(k)) {
    validate(*this);
}

int KnotVector::num_elements() const {
    return static_cast<int>(breakpoints().size()) - 1;
}

std::vector<double> KnotVector::breakpoints() const {
    std::vector<double> b;
    for (double x : knots)
        if (b.empty() || x != b.back()) b.push_back(x);
    return b;
}

std::vector<double> KnotVector::greville() const {
    std::vector<double> g(dim());
    for (int i = 0; i < dim(); ++i) {
        double s = 0.0;
        for (int j = 1; j <= degree; ++j) s += knots[i + j];
        g[i] = s / degree;
    }
    return g;
}

int KnotVector::find_span(double x) const {
    const int p = degree;
    const int n = dim();
    if (x >= knots[n]) return n - 1;
    if (x <= knots[p]) return p;
    auto it = std::upper_bound(knots.begin() + p, knots.begin() + n, x);
    return static_cast<int>(it - knots.begin()) - 1;
}

KnotVector make_open_knot_vector(int p, int n_elements, int interior_multiplicity) {
    if (p < 1) throw std::invalid_argument("make_open_knot_vector: degree must be >= 1");
    if (n_elements < 1) throw std::invalid_argument("make_open_knot_vector: need >= 1 element");
    if (interior_multiplicity < 1 || interior_multiplicity > p)
        throw std::invalid_argument("make_open_knot_vector: interior multiplicity must be in [1, p]");
    std::vector<double> k(p + 1, 0.0);
    for (int i = 1; i < n_elements; ++i)
        k.insert(k.end(), interior_multiplicity, static_cast<double>(i) / n_elements);
    k.insert(k.end(), p + 1, 1.0);
    return KnotVector(p, std::move(k));
}

BasisTable eval_basis(const KnotVector& kv, double x, int max_deriv) {
    if (x < -1e-14 || x > 1.0 + 1e-14)
        throw std::domain_error("eval_basis: coordinate outside [0,1]");
    x = std::clamp(x, 0.0, 1.0);

    const int p = kv.degree;
    const auto& U = kv.knots;
    const int span = kv.find_span(x);
    const int nd = std::min(max_deriv, p);

    // Piegl-Tiller DersBasisFuns.
    Eigen::MatrixXd ndu(p + 1, p + 1);
    std::vector<double> left(p + 1), right(p + 1);
    ndu(0, 0) = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = x - U[span + 1 - j];
        right[j] = U[span + j] - x;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            ndu(j, r) = right[r + 1] + left[j - r];
            double temp = ndu(r, j - 1) / ndu(j, r);
            ndu(r, j) = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu(j, j) = saved;
    }

    BasisTable out;
    out.first_index = span - p;
    out.ders = Eigen::MatrixXd::Zero(max_deriv + 1, p + 1);
    for (int j = 0; j <= p; ++j) out.ders(0, j) = ndu(j, p);

    Eigen::MatrixXd a(2, p + 1);
    for (int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        a(0, 0) = 1.0;
        for (int k = 1; k <= nd; ++k) {
            double d = 0.0;
            const int rk = r - k, pk = p - k;
            if (r >= k) {
                a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
                d = a(s2, 0) * ndu(rk, pk);
            }
            const int j1 = (rk >= -1) ? 1 : -rk;
            const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
                d += a(s2, j) * ndu(rk + j, pk);
            }
            if (r <= pk) {
                a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
                d += a(s2, k) * ndu(r, pk);
            }
            out.ders(k, r) = d;
            std::swap(s1, s2);
        }
    }
    double r = p;
    for (int k = 1; k <= nd; ++k) {
        for (int j = 0; j <= p; ++j) out.ders(k, j) *= r;
        r *= (p - k);
    }
    return out;
}

KnotVector h_refine(const KnotVector& kv) {
    std::vector<double> k;
    k.reserve(kv.knots.size() * 2);
    const auto brk = kv.breakpoints();
    std::vector<double> mids;
    for (std::size_t i = 0; i + 1 < brk.size(); ++i) mids.push_back(0.5 * (brk[i] + brk[i + 1]));
    k = kv.knots;
    k.insert(k.end(), mids.begin(), mids.end());
    std::sort(k.begin(), k.end());
    return KnotVector(kv.degree, std::move(k));
}

std::vector<double> knot_difference(const KnotVector& coarse, const KnotVector& fine) {
    std::vector<double> diff;
    std::size_t i = 0;
    for (double x : fine.knots) {
        if (i < coarse.knots.size() && coarse.knots[i] == x) {
            ++i;
        } else {
            diff.push_back(x);
        }
    }
    return diff;
}

} // namespace igam
