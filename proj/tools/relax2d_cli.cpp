#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "relax2d/diagnostics.hpp"
#include "relax2d/inversion.hpp"
#include "relax2d/io.hpp"
#include "relax2d/synth.hpp"

namespace fs = std::filesystem;
using namespace relax2d;

namespace {

// Exit codes: 0 ok, 2 configuration, 3 data, 4 solver, 5 I/O.
enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kData = 3, kSolver = 4, kIo = 5 };

struct Overrides {
    std::optional<double> tol, weight, beta0, betap, betac;
    std::optional<int> max_outer;
};

void apply_overrides(ParsedConfig& cfg, const Overrides& ov) {
    if (ov.tol) cfg.inversion.outer_tol = *ov.tol;
    if (ov.max_outer) cfg.inversion.max_outer = *ov.max_outer;
    if (ov.weight) cfg.inversion.weight = *ov.weight;
    if (ov.beta0) cfg.inversion.coefficients.beta0 = *ov.beta0;
    if (ov.betap) cfg.inversion.coefficients.betap = *ov.betap;
    if (ov.betac) cfg.inversion.coefficients.betac = *ov.betac;
}

int run_invert(const fs::path& input, fs::path output, const Overrides& ov, bool quiet) {
    if (output.empty()) output = input / "output_files";

    LoadedInput in = load_input(input);
    apply_overrides(in.config, ov);
    for (const auto& w : in.config.warnings) std::cerr << "warning: " << w << "\n";

    const RelaxationGrid grid1 = make_log_grid(in.config.limit1_lo, in.config.limit1_hi, in.config.nx);
    const RelaxationGrid grid2 = make_log_grid(in.config.limit2_lo, in.config.limit2_hi, in.config.ny);
    const SeparableKernel kernel = build_kernel_pair(in.config.kind, in.times, grid1, grid2);

    if (!quiet)
        in.config.inversion.on_outer = [](const OuterIterate& it) {
            std::printf("outer %3d  alpha = %.4E  max lambda = %.4E  rel residual = %.4E  (%d fista iterations)\n",
                        it.k, it.alpha, it.max_lambda, it.rel_residual, it.fista_iterations);
        };

    InversionResult result = invert(kernel, in.data, in.config.inversion);

    const KroneckerOperator op(kernel);
    const Eigen::VectorXd f =
        Eigen::Map<const Eigen::VectorXd>(result.map.data(), result.map.size());
    const Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(in.data.data(), in.data.size());
    const Eigen::VectorXd residual = s - apply(op, f);
    const ResidualReport report = residual_stats(residual);

    write_outputs(output, result, report, residual, in.config, kernel);

    if (!quiet) {
        std::printf("final relative residual  %.4E\n", result.rel_residual);
        std::printf("outer iterations         %d\n", result.outer_iterations);
        std::printf("total fista iterations   %ld\n", result.total_fista_iterations);
        std::printf("residual normal          %s (skewness %.4E, kurtosis %.4f)\n",
                    report.normal ? "yes" : "no", report.skewness, report.kurtosis);
        std::printf("computation time         %.5f s\n", result.seconds);
        for (const auto& pk : peak_summary(result.display_map, grid1, grid2))
            std::printf("peak at (%.4G, %.4G), area %.1f%%\n", pk.t1_gm, pk.t2_gm,
                        pk.area_percent);
        std::printf("outputs written to %s\n", output.string().c_str());
    }
    return kOk;
}

int run_synth(const fs::path& output, std::uint64_t seed, double noise, bool quiet) {
    SyntheticSpec spec = SyntheticSpec::two_peak_default();
    spec.seed = seed;
    spec.noise_level = noise;
    SyntheticDataset dataset = generate(spec);
    write_input_folder(output, dataset);
    if (!quiet)
        std::printf("synthetic two-peak dataset written to %s (%ld x %ld data, seed %llu)\n",
                    output.string().c_str(), static_cast<long>(spec.m1), static_cast<long>(spec.m2),
                    static_cast<unsigned long long>(seed));
    return kOk;
}

int run_stats(const fs::path& input, fs::path output, const fs::path& map_file, bool quiet) {
    if (output.empty()) output = input / "output_files";
    const fs::path map_path = map_file.empty() ? output / "Map.txt" : map_file;

    LoadedInput in = load_input(input);
    const RelaxationGrid grid1 = make_log_grid(in.config.limit1_lo, in.config.limit1_hi, in.config.nx);
    const RelaxationGrid grid2 = make_log_grid(in.config.limit2_lo, in.config.limit2_hi, in.config.ny);
    const SeparableKernel kernel = build_kernel_pair(in.config.kind, in.times, grid1, grid2);

    Eigen::MatrixXd map = read_matrix(map_path);
    if (map.rows() != in.config.nx || map.cols() != in.config.ny)
        throw DataError("map file " + map_path.string() + " does not match the configured grid");

    const KroneckerOperator op(kernel);
    const Eigen::VectorXd f = Eigen::Map<const Eigen::VectorXd>(map.data(), map.size());
    const Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(in.data.data(), in.data.size());
    const Eigen::VectorXd residual = s - apply(op, f);
    const ResidualReport report = residual_stats(residual);

    const double rel_residual = s.norm() > 0.0 ? residual.norm() / s.norm() : 0.0;
    write_residual_outputs(output, report, residual);

    if (!quiet) {
        std::printf("relative residual %.4E, skewness %.4E, kurtosis %.4f, normal: %s\n",
                    rel_residual, report.skewness, report.kurtosis,
                    report.normal ? "yes" : "no");
        std::printf("outputs written to %s\n", output.string().c_str());
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D relaxation data inversion with locally adapted L2+L1 regularization"};
    app.require_subcommand(1);

    fs::path input, output, map_file;
    Overrides ov;
    bool quiet = false;
    std::uint64_t seed = 42;
    double noise = 1e-2;

    auto* invert_cmd = app.add_subcommand("invert", "invert a data folder and write the output set");
    invert_cmd->add_option("--input", input, "input folder with the six data/parameter files")
        ->required();
    invert_cmd->add_option("--output", output, "output folder (default <input>/output_files)");
    invert_cmd->add_option("--tol", ov.tol, "outer stopping tolerance override");
    invert_cmd->add_option("--max-outer", ov.max_outer, "outer iteration cap override");
    invert_cmd->add_option("--weight", ov.weight, "raw weight value override");
    invert_cmd->add_option("--beta0", ov.beta0, "beta0 override");
    invert_cmd->add_option("--betap", ov.betap, "betap override");
    invert_cmd->add_option("--betac", ov.betac, "betac override");
    invert_cmd->add_flag("--quiet", quiet, "suppress progress output");

    auto* synth_cmd = app.add_subcommand("synth", "generate the synthetic two-peak input folder");
    synth_cmd->add_option("--output", output, "destination folder")->required();
    synth_cmd->add_option("--seed", seed, "noise RNG seed");
    synth_cmd->add_option("--noise", noise, "noise vector norm");
    synth_cmd->add_flag("--quiet", quiet, "suppress output");

    auto* stats_cmd = app.add_subcommand("stats", "recompute diagnostics from a saved map");
    stats_cmd->add_option("--input", input, "input folder")->required();
    stats_cmd->add_option("--output", output, "output folder (default <input>/output_files)");
    stats_cmd->add_option("--map", map_file, "map file (default <output>/Map.txt)");
    stats_cmd->add_flag("--quiet", quiet, "suppress output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (invert_cmd->parsed()) return run_invert(input, output, ov, quiet);
        if (synth_cmd->parsed()) return run_synth(output, seed, noise, quiet);
        return run_stats(input, output, map_file, quiet);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfig;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kSolver;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
}
