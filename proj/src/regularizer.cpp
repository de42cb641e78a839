#include "relax2d/regularizer.hpp"

#include <algorithm>
#include <cmath>

namespace relax2d {

Eigen::MatrixXd laplacian_apply(const Eigen::Ref<const Eigen::MatrixXd>& F) {
    const Eigen::Index n1 = F.rows(), n2 = F.cols();
    if (n1 < 3 || n2 < 3) throw ConfigError("laplacian: map must be at least 3x3");
    Eigen::MatrixXd out(n1, n2);
    for (Eigen::Index j = 0; j < n2; ++j) {
        const Eigen::Index jm = std::max<Eigen::Index>(j - 1, 0);
        const Eigen::Index jp = std::min<Eigen::Index>(j + 1, n2 - 1);
        for (Eigen::Index i = 0; i < n1; ++i) {
            const Eigen::Index im = std::max<Eigen::Index>(i - 1, 0);
            const Eigen::Index ip = std::min<Eigen::Index>(i + 1, n1 - 1);
            out(i, j) = F(im, j) + F(ip, j) + F(i, jm) + F(i, jp) - 4.0 * F(i, j);
        }
    }
    return out;
}

Eigen::MatrixXd gradient_magnitude(const Eigen::Ref<const Eigen::MatrixXd>& F) {
    const Eigen::Index n1 = F.rows(), n2 = F.cols();
    if (n1 < 2 || n2 < 2) throw ConfigError("gradient: map must be at least 2x2");
    Eigen::MatrixXd out(n1, n2);
    for (Eigen::Index j = 0; j < n2; ++j) {
        const Eigen::Index jp = std::min<Eigen::Index>(j + 1, n2 - 1);
        for (Eigen::Index i = 0; i < n1; ++i) {
            const Eigen::Index ip = std::min<Eigen::Index>(i + 1, n1 - 1);
            const double dx = F(ip, j) - F(i, j);
            const double dy = F(i, jp) - F(i, j);
            out(i, j) = std::hypot(dx, dy);
        }
    }
    return out;
}

namespace {

// Max over the 3x3 neighborhood of each pixel, clipped at boundaries.
Eigen::MatrixXd neighborhood_max(const Eigen::MatrixXd& a) {
    const Eigen::Index n1 = a.rows(), n2 = a.cols();
    Eigen::MatrixXd out(n1, n2);
    for (Eigen::Index j = 0; j < n2; ++j) {
        const Eigen::Index j0 = std::max<Eigen::Index>(j - 1, 0);
        const Eigen::Index j1 = std::min<Eigen::Index>(j + 1, n2 - 1);
        for (Eigen::Index i = 0; i < n1; ++i) {
            const Eigen::Index i0 = std::max<Eigen::Index>(i - 1, 0);
            const Eigen::Index i1 = std::min<Eigen::Index>(i + 1, n1 - 1);
            out(i, j) = a.block(i0, j0, i1 - i0 + 1, j1 - j0 + 1).maxCoeff();
        }
    }
    return out;
}

}  // namespace

RegularizationState update_parameters(const Eigen::Ref<const Eigen::VectorXd>& f, double residual_sq,
                                      const UpenCoefficients& coefficients, Eigen::Index n1,
                                      Eigen::Index n2) {
    if (f.size() != n1 * n2) throw DataError("update_parameters: vector length does not match map size");
    if (!(residual_sq >= 0.0)) throw DataError("update_parameters: negative residual norm");
    if (!(coefficients.beta0 > 0.0 && coefficients.betap > 0.0 && coefficients.betac > 0.0))
        throw ConfigError("update_parameters: beta coefficients must be positive");

    const double l1_norm = f.lpNorm<1>();
    if (l1_norm == 0.0) throw DegenerateIterateError("update_parameters: zero iterate");

    const Eigen::Index n = n1 * n2;
    Eigen::Map<const Eigen::MatrixXd> F(f.data(), n1, n2);
    const Eigen::MatrixXd grad_sq = gradient_magnitude(F).array().square().matrix();
    const Eigen::MatrixXd curv_sq = laplacian_apply(F).array().square().matrix();
    const Eigen::MatrixXd grad_max = neighborhood_max(grad_sq);
    const Eigen::MatrixXd curv_max = neighborhood_max(curv_sq);

    const double scale = residual_sq / static_cast<double>(n + 1);

    RegularizationState state;
    state.coefficients = coefficients;
    state.alpha = scale / l1_norm;
    state.lambda.resize(n);
    for (Eigen::Index j = 0; j < n2; ++j)
        for (Eigen::Index i = 0; i < n1; ++i)
            state.lambda[j * n1 + i] =
                scale / (coefficients.beta0 + coefficients.betap * grad_max(i, j) +
                         coefficients.betac * curv_max(i, j));
    return state;
}

}  // namespace relax2d
