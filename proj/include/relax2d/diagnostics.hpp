#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "relax2d/kernels.hpp"

namespace relax2d {

// Moments, percentiles and box-plot summary of the fit residual.
// Kurtosis is non-excess (Gaussian = 3).
struct ResidualReport {
    double mean{0.0};
    double variance{0.0};
    double stddev{0.0};
    double skewness{0.0};
    double kurtosis{0.0};
    double percentile25{0.0};
    double median{0.0};
    double percentile75{0.0};
    std::vector<Eigen::Index> outliers;  // beyond 1.5*IQR whiskers
    Eigen::Index in_box{0};              // points inside the whisker range
    bool normal{false};  // skewness in (-2,2) and kurtosis in (-7,7)
};

ResidualReport residual_stats(const Eigen::Ref<const Eigen::VectorXd>& r);

// Marginal sums of the clipped map: first over columns (length N1), then
// over rows (length N2).
std::pair<Eigen::VectorXd, Eigen::VectorXd> project(const Eigen::Ref<const Eigen::MatrixXd>& F);

// Connected component of the clipped map above a relative threshold, with
// amplitude-weighted geometric-mean coordinates and share of total mass.
struct Peak {
    double t1_gm{0.0};
    double t2_gm{0.0};
    double area_percent{0.0};
    Eigen::Index pixels{0};
};

std::vector<Peak> peak_summary(const Eigen::Ref<const Eigen::MatrixXd>& F,
                               const RelaxationGrid& grid1, const RelaxationGrid& grid2,
                               double rel_threshold = 0.01);

}  // namespace relax2d
