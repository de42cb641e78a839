#pragma once

// Independent reference implementations used only by tests. These must not
// share code with the library paths they check.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

namespace oracles {

// K2 (x) K1 assembled densely, block by block.
inline Eigen::MatrixXd dense_kron(const Eigen::MatrixXd& k1, const Eigen::MatrixXd& k2) {
    Eigen::MatrixXd out(k1.rows() * k2.rows(), k1.cols() * k2.cols());
    for (Eigen::Index i = 0; i < k2.rows(); ++i)
        for (Eigen::Index j = 0; j < k2.cols(); ++j)
            out.block(i * k1.rows(), j * k1.cols(), k1.rows(), k1.cols()) = k2(i, j) * k1;
    return out;
}

// 5-point Laplacian with replicated boundaries as a dense matrix acting on
// column-stacked maps.
inline Eigen::MatrixXd dense_laplacian(Eigen::Index n1, Eigen::Index n2) {
    const Eigen::Index n = n1 * n2;
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    auto idx = [n1](Eigen::Index i, Eigen::Index j) { return j * n1 + i; };
    for (Eigen::Index j = 0; j < n2; ++j) {
        for (Eigen::Index i = 0; i < n1; ++i) {
            const Eigen::Index row = idx(i, j);
            L(row, idx(std::max<Eigen::Index>(i - 1, 0), j)) += 1.0;
            L(row, idx(std::min<Eigen::Index>(i + 1, n1 - 1), j)) += 1.0;
            L(row, idx(i, std::max<Eigen::Index>(j - 1, 0))) += 1.0;
            L(row, idx(i, std::min<Eigen::Index>(j + 1, n2 - 1))) += 1.0;
            L(row, idx(i, j)) -= 4.0;
        }
    }
    return L;
}

// Largest singular value via power iteration on M^T M.
inline double power_iteration_sigma(const Eigen::MatrixXd& m, int iters = 5000) {
    Eigen::VectorXd v = Eigen::VectorXd::Ones(m.cols()).normalized();
    double value = 0.0;
    for (int k = 0; k < iters; ++k) {
        Eigen::VectorXd w = m.transpose() * (m * v);
        value = w.norm();
        if (value == 0.0) return 0.0;
        v = w / value;
    }
    return std::sqrt(value);
}

// Brute-force prox of theta*|.| at z: grid search over the scalar objective.
inline double brute_prox(double z, double theta, int points = 200001) {
    const double lo = -std::abs(z) - theta, hi = std::abs(z) + theta;
    double best_w = 0.0, best_val = std::numeric_limits<double>::infinity();
    for (int q = 0; q < points; ++q) {
        const double w = lo + (hi - lo) * q / (points - 1);
        const double val = theta * std::abs(w) + 0.5 * (w - z) * (w - z);
        if (val < best_val) {
            best_val = val;
            best_w = w;
        }
    }
    return best_w;
}

// Long-run proximal-gradient reference for the composite objective
//   |Kf-s|^2 + omega1 * sum lambda_i (Lf)_i^2 + omega2*alpha*|f|_1
// on dense matrices, with a provably safe stepsize from a dense eigensolve.
struct IstaReference {
    Eigen::VectorXd f;
    double objective{0.0};
};

inline IstaReference ista_reference(const Eigen::MatrixXd& K, const Eigen::MatrixXd& L,
                                    const Eigen::VectorXd& lambda, double alpha, double omega1,
                                    double omega2, const Eigen::VectorXd& s,
                                    const Eigen::VectorXd& f0, long max_iter = 1000000,
                                    double tol = 1e-14) {
    const Eigen::MatrixXd H =
        K.transpose() * K + omega1 * L.transpose() * lambda.asDiagonal() * L;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    const double lip = 2.0 * es.eigenvalues().maxCoeff();
    const double eta = 1.0 / lip;
    const double theta = eta * omega2 * alpha;

    Eigen::VectorXd f = f0;
    for (long k = 0; k < max_iter; ++k) {
        Eigen::VectorXd grad = 2.0 * (H * f - K.transpose() * s);
        Eigen::VectorXd z = f - eta * grad;
        Eigen::VectorXd next =
            (z.array().sign() * (z.array().abs() - theta).max(0.0)).matrix();
        const double change = (next - f).norm();
        f = next;
        if (change <= tol * std::max(1.0, f.norm())) break;
    }
    IstaReference out;
    out.f = f;
    out.objective = (K * f - s).squaredNorm() +
                    omega1 * (L * f).array().square().matrix().dot(lambda) +
                    omega2 * alpha * f.lpNorm<1>();
    return out;
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = gauss(rng);
    return m;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n) {
    return random_matrix(rng, n, 1).col(0);
}

}  // namespace oracles
