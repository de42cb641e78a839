#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "relax2d/fista.hpp"
#include "relax2d/kernels.hpp"
#include "relax2d/regularizer.hpp"

namespace relax2d {

struct OuterIterate {
    int k{0};
    double alpha{0.0};
    double max_lambda{0.0};
    double rel_residual{0.0};  // compressed-space residual at the iterate
    int fista_iterations{0};
};

struct InversionConfig {
    double outer_tol{1e-4};  // tau in (0,1)
    int max_outer{100};
    FistaConfig fista{};
    double gp_tol{1e-4};
    int gp_max_iter{5000};
    UpenCoefficients coefficients{};
    double weight{-1.0};         // raw weight value; outside [0,1] means omega1=omega2=1
    double svd_threshold{1e-16};
    std::function<void(const OuterIterate&)> on_outer;  // optional progress hook
};

struct InversionResult {
    Eigen::MatrixXd map;          // signed amplitudes, N1 x N2
    Eigen::MatrixXd display_map;  // negatives clipped to 0
    double rel_residual{0.0};     // |Kf - s| / |s| in the full data space
    double gp_rel_residual{0.0};  // same, at the warm start
    int outer_iterations{0};
    long total_fista_iterations{0};
    double seconds{0.0};
    std::vector<OuterIterate> history;
};

// Weight rule: raw in [0,1] -> (1-raw, raw); otherwise (1, 1).
std::pair<double, double> resolve_weights(double raw);

// Full pipeline: SVD compression, gradient-projection warm start, then
// alternation of uniform-penalty parameter updates and FISTA solves until
// |f_new - f| <= tau * |f| or the outer cap is hit.
InversionResult invert(const SeparableKernel& kernel, const Eigen::MatrixXd& data,
                       const InversionConfig& config);

}  // namespace relax2d
