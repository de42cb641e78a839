#include "relax2d/inversion.hpp"

#include <chrono>
#include <cmath>

namespace relax2d {

std::pair<double, double> resolve_weights(double raw) {
    if (raw >= 0.0 && raw <= 1.0) return {1.0 - raw, raw};
    return {1.0, 1.0};
}

InversionResult invert(const SeparableKernel& kernel, const Eigen::MatrixXd& data,
                       const InversionConfig& config) {
    if (!(config.outer_tol > 0.0 && config.outer_tol < 1.0))
        throw ConfigError("invert: outer tolerance must lie in (0,1)");
    if (config.max_outer < 1) throw ConfigError("invert: outer iteration cap must be >= 1");
    if (data.rows() != kernel.K1.rows() || data.cols() != kernel.K2.rows())
        throw DataError("invert: data shape does not match kernel");
    if (!data.allFinite()) throw DataError("invert: non-finite data");

    const auto t_start = std::chrono::steady_clock::now();

    const KroneckerOperator full_op(kernel);
    CompressedProblem cp = compress(full_op, data, config.svd_threshold);
    const Eigen::VectorXd sc = Eigen::Map<const Eigen::VectorXd>(cp.data.data(), cp.data.size());
    const Eigen::VectorXd s_full = Eigen::Map<const Eigen::VectorXd>(data.data(), data.size());
    const double s_norm = s_full.norm();
    const Eigen::Index n1 = full_op.n1(), n2 = full_op.n2();

    const auto [omega1, omega2] = resolve_weights(config.weight);

    Eigen::VectorXd f = gradient_projection_init(cp.op, sc, config.gp_tol, config.gp_max_iter);

    InversionResult result;
    result.gp_rel_residual = s_norm > 0.0 ? (apply(full_op, f) - s_full).norm() / s_norm : 0.0;

    for (int k = 0; k < config.max_outer; ++k) {
        const double rsq = cp.residual_sq(f);
        RegularizationState state = update_parameters(f, rsq, config.coefficients, n1, n2);
        state.omega1 = omega1;
        state.omega2 = omega2;

        auto [f_next, trace] =
            fista_solve(cp.op, state.lambda, state.alpha, omega1, omega2, sc, f, config.fista);

        OuterIterate it;
        it.k = k + 1;
        it.alpha = state.alpha;
        it.max_lambda = state.lambda.maxCoeff();
        it.rel_residual = s_norm > 0.0 ? std::sqrt(cp.residual_sq(f_next)) / s_norm : 0.0;
        it.fista_iterations = trace.iterations;
        result.history.push_back(it);
        result.total_fista_iterations += trace.iterations;
        result.outer_iterations = k + 1;
        if (config.on_outer) config.on_outer(it);

        const double change = (f_next - f).norm();
        const double base = f.norm();
        f = std::move(f_next);
        if (change <= config.outer_tol * base) break;
    }

    result.map = Eigen::Map<const Eigen::MatrixXd>(f.data(), n1, n2);
    result.display_map = result.map.cwiseMax(0.0);
    result.rel_residual = s_norm > 0.0 ? (apply(full_op, f) - s_full).norm() / s_norm : 0.0;
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

}  // namespace relax2d
