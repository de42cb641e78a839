#include "relax2d/kernels.hpp"

#include <cmath>

namespace relax2d {

void validate(const AcquisitionTimes& times) {
    auto check_axis = [](const Eigen::VectorXd& t, const char* name) {
        if (t.size() < 1) throw DataError(std::string("time axis ") + name + " is empty");
        if (!t.allFinite()) throw DataError(std::string("time axis ") + name + " has non-finite entries");
        if ((t.array() <= 0.0).any())
            throw DataError(std::string("time axis ") + name + " has non-positive entries");
        for (Eigen::Index i = 1; i < t.size(); ++i)
            if (t[i] <= t[i - 1])
                throw DataError(std::string("time axis ") + name + " is not strictly increasing at index " +
                                std::to_string(i));
    };
    check_axis(times.t1, "t1");
    check_axis(times.t2, "t2");
}

RelaxationGrid make_log_grid(double lo, double hi, Eigen::Index n) {
    if (!(lo > 0.0)) throw ConfigError("log grid: lower limit must be > 0, got " + std::to_string(lo));
    if (!(hi > lo)) throw ConfigError("log grid: upper limit must exceed lower limit");
    if (n < 2) throw ConfigError("log grid: need at least 2 bins, got " + std::to_string(n));

    RelaxationGrid grid;
    grid.lo = lo;
    grid.hi = hi;
    grid.n = n;
    grid.values.resize(n);
    const double step = (std::log(hi) - std::log(lo)) / static_cast<double>(n - 1);
    for (Eigen::Index k = 0; k < n; ++k)
        grid.values[k] = std::exp(std::log(lo) + static_cast<double>(k) * step);
    grid.values[0] = lo;
    grid.values[n - 1] = hi;
    return grid;
}

KernelKind parse_kernel_kind(const std::string& name) {
    if (name == "IR-CPMG") return KernelKind::IrCpmg;
    if (name == "SR-CPMG") return KernelKind::SrCpmg;
    if (name == "CPMG-CPMG") return KernelKind::CpmgCpmg;
    if (name == "D-CPMG") return KernelKind::DCpmg;
    throw ConfigError("unknown kernel type '" + name +
                      "' (expected IR-CPMG, SR-CPMG, CPMG-CPMG or D-CPMG)");
}

std::string to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::IrCpmg: return "IR-CPMG";
        case KernelKind::SrCpmg: return "SR-CPMG";
        case KernelKind::CpmgCpmg: return "CPMG-CPMG";
        case KernelKind::DCpmg: return "D-CPMG";
    }
    throw ConfigError("invalid kernel kind");
}

namespace {

Eigen::MatrixXd eval_kernel(const Eigen::VectorXd& t, const Eigen::VectorXd& grid,
                            double (*k)(double, double)) {
    Eigen::MatrixXd out(t.size(), grid.size());
    for (Eigen::Index j = 0; j < grid.size(); ++j)
        for (Eigen::Index i = 0; i < t.size(); ++i) out(i, j) = k(t[i], grid[j]);
    return out;
}

double k_ir(double t, double T) { return 1.0 - 2.0 * std::exp(-t / T); }
double k_sr(double t, double T) { return 1.0 - std::exp(-t / T); }
double k_exp(double t, double T) { return std::exp(-t / T); }
double k_diff(double t, double D) { return std::exp(-t * D); }

}  // namespace

SeparableKernel build_kernel_pair(KernelKind kind, const AcquisitionTimes& times,
                                  const RelaxationGrid& grid1, const RelaxationGrid& grid2) {
    validate(times);
    if (grid1.n < 2 || grid2.n < 2) throw ConfigError("relaxation grids need at least 2 bins");

    SeparableKernel kernel;
    kernel.kind = kind;
    kernel.grid1 = grid1;
    kernel.grid2 = grid2;
    kernel.times = times;

    switch (kind) {
        case KernelKind::IrCpmg:
            kernel.K1 = eval_kernel(times.t1, grid1.values, k_ir);
            break;
        case KernelKind::SrCpmg:
            kernel.K1 = eval_kernel(times.t1, grid1.values, k_sr);
            break;
        case KernelKind::CpmgCpmg:
        case KernelKind::DCpmg:
            kernel.K1 = eval_kernel(times.t1, grid1.values, k_exp);
            break;
    }
    kernel.K2 = (kind == KernelKind::DCpmg) ? eval_kernel(times.t2, grid2.values, k_diff)
                                            : eval_kernel(times.t2, grid2.values, k_exp);
    return kernel;
}

}  // namespace relax2d
