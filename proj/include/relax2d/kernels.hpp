#pragma once

#include <Eigen/Dense>
#include <string>

#include "relax2d/errors.hpp"

namespace relax2d {

// Acquisition time vectors of a 2D relaxation experiment.
// For D-CPMG the second axis carries the effective diffusion-encoding
// variable, so that the second kernel is exp(-t2*D) verbatim.
struct AcquisitionTimes {
    Eigen::VectorXd t1;  // first-dimension evolution times, length M1
    Eigen::VectorXd t2;  // second-dimension times, length M2
};

// Throws DataError unless both vectors are finite, positive and strictly
// increasing.
void validate(const AcquisitionTimes& times);

// Logarithmically spaced relaxation-parameter bins with inversion limits.
struct RelaxationGrid {
    Eigen::VectorXd values;  // bin centers, geometric progression lo..hi
    double lo{0.0};
    double hi{0.0};
    Eigen::Index n{0};
};

enum class KernelKind {
    IrCpmg,    // k1 = 1 - 2 exp(-t/T),  k2 = exp(-t/T)
    SrCpmg,    // k1 = 1 - exp(-t/T),    k2 = exp(-t/T)
    CpmgCpmg,  // k1 = exp(-t/T),        k2 = exp(-t/T)
    DCpmg,     // k1 = exp(-t/T),        k2 = exp(-t*D)
};

KernelKind parse_kernel_kind(const std::string& name);
std::string to_string(KernelKind kind);

// Pair of dense kernel matrices whose Kronecker product K2 (x) K1 is the
// forward model.
struct SeparableKernel {
    Eigen::MatrixXd K1;  // M1 x N1
    Eigen::MatrixXd K2;  // M2 x N2
    KernelKind kind{KernelKind::IrCpmg};
    RelaxationGrid grid1;
    RelaxationGrid grid2;
    AcquisitionTimes times;
};

// Geometric progression from lo to hi inclusive, n points.
RelaxationGrid make_log_grid(double lo, double hi, Eigen::Index n);

SeparableKernel build_kernel_pair(KernelKind kind, const AcquisitionTimes& times,
                                  const RelaxationGrid& grid1, const RelaxationGrid& grid2);

}  // namespace relax2d
