#include "relax2d/synth.hpp"

#include <cmath>
#include <random>

#include "relax2d/kron_operator.hpp"

namespace relax2d {

SyntheticSpec SyntheticSpec::two_peak_default() {
    SyntheticSpec spec;
    spec.peaks = {
        {815.0, 4.533, 0.30, 0.30, 1.0},
        {119.5, 8.561, 0.30, 0.30, 1.0},
    };
    return spec;
}

SyntheticDataset generate(const SyntheticSpec& spec) {
    if (spec.peaks.empty()) throw ConfigError("synthetic spec: at least one peak required");
    if (!(spec.noise_level >= 0.0)) throw ConfigError("synthetic spec: negative noise level");
    for (const auto& pk : spec.peaks) {
        if (pk.t1_center < spec.grid1_lo || pk.t1_center > spec.grid1_hi ||
            pk.t2_center < spec.grid2_lo || pk.t2_center > spec.grid2_hi)
            throw ConfigError("synthetic spec: peak outside the inversion limits");
        if (!(pk.width1 > 0.0 && pk.width2 > 0.0 && pk.amplitude > 0.0))
            throw ConfigError("synthetic spec: peak widths and amplitude must be positive");
    }

    SyntheticDataset out;
    out.spec = spec;

    const RelaxationGrid grid1 = make_log_grid(spec.grid1_lo, spec.grid1_hi, spec.n1);
    const RelaxationGrid grid2 = make_log_grid(spec.grid2_lo, spec.grid2_hi, spec.n2);

    out.times.t1 = make_log_grid(spec.t1_min, spec.t1_max, spec.m1).values;
    out.times.t2.resize(spec.m2);
    for (Eigen::Index k = 0; k < spec.m2; ++k)
        out.times.t2[k] = spec.echo_time * static_cast<double>(k + 1);

    out.reference_map = Eigen::MatrixXd::Zero(spec.n1, spec.n2);
    for (const auto& pk : spec.peaks) {
        const double lc1 = std::log(pk.t1_center), lc2 = std::log(pk.t2_center);
        for (Eigen::Index j = 0; j < spec.n2; ++j) {
            const double d2 = (std::log(grid2.values[j]) - lc2) / pk.width2;
            for (Eigen::Index i = 0; i < spec.n1; ++i) {
                const double d1 = (std::log(grid1.values[i]) - lc1) / pk.width1;
                out.reference_map(i, j) += pk.amplitude * std::exp(-0.5 * (d1 * d1 + d2 * d2));
            }
        }
    }

    out.kernel = build_kernel_pair(spec.kind, out.times, grid1, grid2);
    out.clean = out.kernel.K1 * out.reference_map * out.kernel.K2.transpose();
    if (spec.signal_norm > 0.0) {
        const double norm = out.clean.norm();
        if (norm == 0.0) throw ConfigError("synthetic spec: clean signal is identically zero");
        const double scale = spec.signal_norm / norm;
        out.clean *= scale;
        out.reference_map *= scale;
    }

    out.data = out.clean;
    if (spec.noise_level > 0.0) {
        std::mt19937_64 rng(spec.seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::MatrixXd noise(spec.m1, spec.m2);
        for (Eigen::Index j = 0; j < spec.m2; ++j)
            for (Eigen::Index i = 0; i < spec.m1; ++i) noise(i, j) = gauss(rng);
        noise *= spec.noise_level / noise.norm();
        out.data += noise;
    }
    return out;
}

}  // namespace relax2d
