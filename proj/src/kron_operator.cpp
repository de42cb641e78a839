#include "relax2d/kron_operator.hpp"

#include <Eigen/SVD>
#include <algorithm>

namespace relax2d {

namespace {

double largest_singular_value(const Eigen::MatrixXd& a) {
    if (a.size() == 0) throw ConfigError("singular values of an empty matrix requested");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    return svd.singularValues()(0);
}

}  // namespace

KroneckerOperator::KroneckerOperator(Eigen::MatrixXd k1, Eigen::MatrixXd k2)
    : K1(std::move(k1)), K2(std::move(k2)) {
    std::tie(sigma1, sigma2) = leading_singular_values(K1, K2);
}

KroneckerOperator::KroneckerOperator(const SeparableKernel& kernel)
    : KroneckerOperator(kernel.K1, kernel.K2) {}

std::pair<double, double> leading_singular_values(const Eigen::MatrixXd& k1,
                                                  const Eigen::MatrixXd& k2) {
    return {largest_singular_value(k1), largest_singular_value(k2)};
}

Eigen::VectorXd apply(const KroneckerOperator& op, const Eigen::Ref<const Eigen::VectorXd>& f) {
    if (f.size() != op.cols())
        throw DataError("apply: vector length " + std::to_string(f.size()) + " does not match operator columns " +
                        std::to_string(op.cols()));
    Eigen::Map<const Eigen::MatrixXd> F(f.data(), op.n1(), op.n2());
    Eigen::MatrixXd S = op.K1 * F * op.K2.transpose();
    return Eigen::Map<Eigen::VectorXd>(S.data(), S.size());
}

Eigen::VectorXd adjoint(const KroneckerOperator& op, const Eigen::Ref<const Eigen::VectorXd>& r) {
    if (r.size() != op.rows())
        throw DataError("adjoint: vector length " + std::to_string(r.size()) + " does not match operator rows " +
                        std::to_string(op.rows()));
    Eigen::Map<const Eigen::MatrixXd> R(r.data(), op.m1(), op.m2());
    Eigen::MatrixXd G = op.K1.transpose() * R * op.K2;
    return Eigen::Map<Eigen::VectorXd>(G.data(), G.size());
}

namespace {

struct TruncatedFactor {
    Eigen::MatrixXd u;         // M x r
    Eigen::MatrixXd factor;    // S_r * V_r^T, r x N
};

TruncatedFactor truncate(const Eigen::MatrixXd& k, double threshold) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(k, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = threshold * sv(0);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) >= cutoff) ++r;
    if (r == 0) r = 1;
    TruncatedFactor out;
    out.u = svd.matrixU().leftCols(r);
    out.factor = sv.head(r).asDiagonal() * svd.matrixV().leftCols(r).transpose();
    return out;
}

}  // namespace

CompressedProblem compress(const KroneckerOperator& op, const Eigen::MatrixXd& data_matrix,
                           double threshold) {
    if (!(threshold >= 0.0 && threshold < 1.0))
        throw ConfigError("SVD threshold must lie in [0, 1)");
    if (data_matrix.rows() != op.m1() || data_matrix.cols() != op.m2())
        throw DataError("compress: data matrix shape does not match operator");

    TruncatedFactor f1 = truncate(op.K1, threshold);
    TruncatedFactor f2 = truncate(op.K2, threshold);

    CompressedProblem out;
    out.data = f1.u.transpose() * data_matrix * f2.u;
    out.op = KroneckerOperator(std::move(f1.factor), std::move(f2.factor));
    out.data_offset_sq =
        std::max(0.0, data_matrix.squaredNorm() - out.data.squaredNorm());
    return out;
}

double CompressedProblem::residual_sq(const Eigen::Ref<const Eigen::VectorXd>& f) const {
    const Eigen::Map<const Eigen::VectorXd> s(data.data(), data.size());
    return (apply(op, f) - s).squaredNorm() + data_offset_sq;
}

}  // namespace relax2d
