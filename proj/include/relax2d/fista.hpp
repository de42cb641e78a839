#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "relax2d/kron_operator.hpp"

namespace relax2d {

struct FistaConfig {
    double tol{1e-7};      // relative iterate-change stopping tolerance
    int max_iter{500000};  // inner iteration cap
    std::optional<double> stepsize_override;  // replaces the computed bound
    bool record_objective{false};             // sample the objective every 50 iterations
};

struct FistaTrace {
    int iterations{0};
    double final_objective{0.0};
    std::vector<double> objective_history;
};

// sign(z_i) * max(|z_i| - theta, 0), the prox of theta*|.|_1.
Eigen::VectorXd soft_threshold(const Eigen::Ref<const Eigen::VectorXd>& z, double theta);

// xi = (sigma1 * sigma2)^2 + 64 * max_i lambda_i, an upper bound on
// lambda_max(K^T K + L^T Lambda L).
double stepsize(double sigma1, double sigma2, const Eigen::Ref<const Eigen::VectorXd>& lambda);

// Minimizes |Kf - s|^2 + omega1 * sum_i lambda_i (Lf)_i^2 + omega2 * alpha * |f|_1
// by FISTA with constant stepsize. The iterate is unconstrained in sign.
std::pair<Eigen::VectorXd, FistaTrace> fista_solve(const KroneckerOperator& op,
                                                   const Eigen::VectorXd& lambda, double alpha,
                                                   double omega1, double omega2,
                                                   const Eigen::VectorXd& s,
                                                   const Eigen::VectorXd& f0,
                                                   const FistaConfig& config);

// Warm start: projected gradient on min_{f>=0} |Kf - s|^2 starting from
// max(K^T s, 0), stepsize 1/(sigma1*sigma2)^2.
Eigen::VectorXd gradient_projection_init(const KroneckerOperator& op, const Eigen::VectorXd& s,
                                         double tol, int max_iter);

}  // namespace relax2d
