#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "relax2d/kernels.hpp"

namespace relax2d {

// Gaussian blob in log(T1) x log(T2) coordinates. Widths are natural-log
// domain standard deviations.
struct SyntheticPeak {
    double t1_center{0.0};
    double t2_center{0.0};
    double width1{0.25};
    double width2{0.25};
    double amplitude{1.0};
};

struct SyntheticSpec {
    Eigen::Index n1{80}, n2{80};    // map size
    Eigen::Index m1{128}, m2{2048}; // acquisition sizes
    std::vector<SyntheticPeak> peaks;
    double t1_min{0.1}, t1_max{10000.0};  // log-spaced first-axis times (ms)
    double echo_time{0.2};                // second-axis times are k * TE (ms)
    double grid1_lo{1.0}, grid1_hi{10000.0};
    double grid2_lo{0.1}, grid2_hi{1000.0};
    KernelKind kind{KernelKind::IrCpmg};
    double noise_level{1e-2};    // delta = |e|
    double signal_norm{4.0};     // clean data scaled to this Frobenius norm; 0 keeps amplitudes
    std::uint64_t seed{42};

    // The two-peak IR-CPMG benchmark configuration.
    static SyntheticSpec two_peak_default();
};

struct SyntheticDataset {
    SyntheticSpec spec;
    Eigen::MatrixXd reference_map;  // F_true, N1 x N2, >= 0
    AcquisitionTimes times;
    Eigen::MatrixXd clean;  // M1 x M2 noiseless signal
    Eigen::MatrixXd data;   // clean + noise with |noise| = delta
    SeparableKernel kernel;
};

SyntheticDataset generate(const SyntheticSpec& spec);

}  // namespace relax2d
