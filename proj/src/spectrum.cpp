#include "igam/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace igam {

int filter_split(const Eigen::VectorXd& values, double ratio) {
    const int n = static_cast<int>(values.size());
    for (int i = n - 2; i >= n / 2; --i) {
        if (values[i] > 0.0 && values[i + 1] / values[i] > ratio) return i + 1;
    }
    return n;
}

Eigen::VectorXd normalize_spectrum(const Eigen::VectorXd& values,
                                   const std::function<double(int)>& exact, int first_mode) {
    Eigen::VectorXd out(values.size());
    for (int i = 0; i < values.size(); ++i) out[i] = values[i] / exact(first_mode + i);
    return out;
}

double reduced_space_projection_error(const Eigen::MatrixXd& U, const SpMat& M,
                                      const Eigen::VectorXd& t) {
    const Eigen::VectorXd Mt = M * t;
    const double norm2 = t.dot(Mt);
    if (norm2 <= 0.0)
        throw std::invalid_argument("reduced_space_projection_error: target has zero M-norm");
    const Eigen::VectorXd r = t - U * (U.transpose() * Mt);
    const double err2 = r.dot(Eigen::VectorXd(M * r));
    return std::sqrt(std::max(err2, 0.0) / norm2);
}

void fix_sign(Eigen::MatrixXd& vectors) {
    for (int c = 0; c < vectors.cols(); ++c) {
        int imax = 0;
        vectors.col(c).cwiseAbs().maxCoeff(&imax);
        if (vectors(imax, c) < 0.0) vectors.col(c) = -vectors.col(c);
    }
}

} // namespace igam
