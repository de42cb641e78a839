#pragma once

#include <Eigen/Dense>
#include <utility>

#include "relax2d/errors.hpp"
#include "relax2d/kernels.hpp"

namespace relax2d {

// Forward operator K = K2 (x) K1, applied without materializing the
// Kronecker product. vec(.) stacks column-wise throughout.
struct KroneckerOperator {
    Eigen::MatrixXd K1;  // M1 x N1
    Eigen::MatrixXd K2;  // M2 x N2
    double sigma1{0.0};  // largest singular value of K1
    double sigma2{0.0};  // largest singular value of K2

    KroneckerOperator() = default;
    KroneckerOperator(Eigen::MatrixXd k1, Eigen::MatrixXd k2);
    explicit KroneckerOperator(const SeparableKernel& kernel);

    Eigen::Index m1() const { return K1.rows(); }
    Eigen::Index m2() const { return K2.rows(); }
    Eigen::Index n1() const { return K1.cols(); }
    Eigen::Index n2() const { return K2.cols(); }
    Eigen::Index rows() const { return m1() * m2(); }
    Eigen::Index cols() const { return n1() * n2(); }
};

// vec(K1 * F * K2^T) with f = vec(F).
Eigen::VectorXd apply(const KroneckerOperator& op, const Eigen::Ref<const Eigen::VectorXd>& f);

// vec(K1^T * R * K2) with r = vec(R).
Eigen::VectorXd adjoint(const KroneckerOperator& op, const Eigen::Ref<const Eigen::VectorXd>& r);

std::pair<double, double> leading_singular_values(const Eigen::MatrixXd& k1,
                                                  const Eigen::MatrixXd& k2);

struct CompressedProblem {
    KroneckerOperator op;   // truncated factors, r1 x N1 and r2 x N2
    Eigen::MatrixXd data;   // U1^T * S * U2, r1 x r2
    // |S|^2 - |data|^2: data energy outside the retained subspaces. The
    // forward model lives entirely inside them, so for any f
    //   |K f - s|^2 = |K_c f - s_c|^2 + data_offset_sq.
    double data_offset_sq{0.0};

    double residual_sq(const Eigen::Ref<const Eigen::VectorXd>& f) const;
};

// Truncated-SVD compression of operator and data. Factor singular values
// below threshold * sigma_max are discarded; threshold 0 keeps everything.
CompressedProblem compress(const KroneckerOperator& op, const Eigen::MatrixXd& data_matrix,
                           double threshold);

}  // namespace relax2d
