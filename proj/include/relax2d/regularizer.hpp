#pragma once

#include <Eigen/Dense>

#include "relax2d/errors.hpp"

namespace relax2d {

// Tuning coefficients of the uniform-penalty parameter rule. Optimal values
// are sample dependent; these defaults are starting points only.
struct UpenCoefficients {
    double beta0{1e-4};
    double betap{1e-2};
    double betac{1.0};
};

// Spatially varying L2 parameters and the global L1 parameter, together
// with the weights splitting the two penalty terms.
struct RegularizationState {
    Eigen::VectorXd lambda;  // N = N1*N2 local parameters, >= 0
    double alpha{0.0};       // L1 parameter, >= 0
    UpenCoefficients coefficients;
    double omega1{1.0};
    double omega2{1.0};
};

// 5-point discrete Laplacian with replicated (Neumann) boundaries.
// The induced matrix is symmetric with spectral norm <= 8.
Eigen::MatrixXd laplacian_apply(const Eigen::Ref<const Eigen::MatrixXd>& F);

// Per-pixel Euclidean norm of the forward-difference gradient, replicated
// boundary (one-sided differences vanish on the last row/column).
Eigen::MatrixXd gradient_magnitude(const Eigen::Ref<const Eigen::MatrixXd>& F);

// Uniform-penalty update:
//   alpha    = rsq / ((N+1) * |f|_1)
//   lambda_i = rsq / ((N+1) * (b0 + bp*max |grad F|^2 + bc*max (Lf)^2))
// with the maxima taken over the 3x3 neighborhood of pixel i, clipped at
// the map boundary. Throws DegenerateIterateError when f == 0.
RegularizationState update_parameters(const Eigen::Ref<const Eigen::VectorXd>& f, double residual_sq,
                                      const UpenCoefficients& coefficients, Eigen::Index n1,
                                      Eigen::Index n2);

}  // namespace relax2d
