#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>

#include "relax2d/diagnostics.hpp"
#include "relax2d/kernels.hpp"

// Self-contained SVG figures; no display dependency.
namespace relax2d::svg {

void write_heatmap(const std::filesystem::path& file, const Eigen::MatrixXd& map,
                   const RelaxationGrid& grid1, const RelaxationGrid& grid2,
                   const std::string& title);

void write_contour(const std::filesystem::path& file, const Eigen::MatrixXd& map,
                   const RelaxationGrid& grid1, const RelaxationGrid& grid2,
                   const std::string& title);

// Projection curve on a log-scaled abscissa.
void write_projection(const std::filesystem::path& file, const Eigen::VectorXd& axis,
                      const Eigen::VectorXd& values, const std::string& title,
                      const std::string& x_label);

// Residual histogram with the fitted normal density overlaid.
void write_histogram(const std::filesystem::path& file, const Eigen::VectorXd& samples,
                     const std::string& title);

void write_boxplot(const std::filesystem::path& file, const Eigen::VectorXd& samples,
                   const ResidualReport& report, const std::string& title);

}  // namespace relax2d::svg
