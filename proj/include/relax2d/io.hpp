#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

#include "relax2d/diagnostics.hpp"
#include "relax2d/inversion.hpp"
#include "relax2d/kernels.hpp"
#include "relax2d/synth.hpp"

namespace relax2d {

// Effective configuration of a run, assembled from the three parameter
// files (and possibly command-line overrides).
struct ParsedConfig {
    std::string data_file;
    std::string time_x_file;
    std::string time_y_file;
    Eigen::Index nx{0};  // bins along the first dimension
    Eigen::Index ny{0};
    KernelKind kind{KernelKind::IrCpmg};
    double limit1_lo{0.0}, limit1_hi{0.0};
    double limit2_lo{0.0}, limit2_hi{0.0};
    InversionConfig inversion;
    std::vector<std::string> warnings;  // unrecognized keywords etc.
};

struct LoadedInput {
    ParsedConfig config;
    AcquisitionTimes times;
    Eigen::MatrixXd data;  // M1 x M2
};

// Parses FileSetInput.par, FileFlag.par, FilePar.par, the two time files
// and the data matrix. All six files must be present.
LoadedInput load_input(const std::filesystem::path& folder);

// Whitespace-delimited ASCII matrix, `#` comments ignored.
Eigen::MatrixXd read_matrix(const std::filesystem::path& file);
Eigen::VectorXd read_vector(const std::filesystem::path& file);

// precision <= 0 writes full double precision.
void write_matrix(const std::filesystem::path& file, const Eigen::MatrixXd& m, int precision = 6);
void write_vector(const std::filesystem::path& file, const Eigen::VectorXd& v, int precision = 6);

// Complete input folder for a synthetic dataset (data, times and the three
// parameter files), ready for the invert pipeline.
void write_input_folder(const std::filesystem::path& dir, const SyntheticDataset& dataset);

// Residual statistics file plus histogram and box plot; used alone when
// diagnostics are recomputed for an existing map.
void write_residual_outputs(const std::filesystem::path& out_dir, const ResidualReport& report,
                            const Eigen::VectorXd& residual);

// Result map, projections, residual statistics, run summary and plots.
void write_outputs(const std::filesystem::path& out_dir, const InversionResult& result,
                   const ResidualReport& report, const Eigen::VectorXd& residual,
                   const ParsedConfig& config, const SeparableKernel& kernel);

}  // namespace relax2d
