#include "relax2d/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace relax2d {

namespace {

// Linear-interpolation percentile on a sorted copy.
double percentile(const std::vector<double>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<size_t>(std::floor(pos));
    const auto hi = static_cast<size_t>(std::ceil(pos));
    const double w = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - w) + sorted[hi] * w;
}

}  // namespace

ResidualReport residual_stats(const Eigen::Ref<const Eigen::VectorXd>& r) {
    const Eigen::Index m = r.size();
    if (m < 4) throw DataError("residual_stats: need at least 4 samples");
    if (!r.allFinite()) throw DataError("residual_stats: non-finite residual");

    ResidualReport rep;
    rep.mean = r.mean();
    const Eigen::ArrayXd d = r.array() - rep.mean;
    const double m2 = d.square().mean();
    const double m3 = d.cube().mean();
    const double m4 = d.square().square().mean();
    rep.variance = m2;
    rep.stddev = std::sqrt(m2);
    rep.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    rep.kurtosis = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;

    std::vector<double> sorted(r.data(), r.data() + m);
    std::sort(sorted.begin(), sorted.end());
    rep.percentile25 = percentile(sorted, 0.25);
    rep.median = percentile(sorted, 0.50);
    rep.percentile75 = percentile(sorted, 0.75);

    const double iqr = rep.percentile75 - rep.percentile25;
    const double lo = rep.percentile25 - 1.5 * iqr;
    const double hi = rep.percentile75 + 1.5 * iqr;
    for (Eigen::Index i = 0; i < m; ++i)
        if (r[i] < lo || r[i] > hi) rep.outliers.push_back(i);
    rep.in_box = m - static_cast<Eigen::Index>(rep.outliers.size());

    rep.normal = rep.skewness > -2.0 && rep.skewness < 2.0 && rep.kurtosis > -7.0 && rep.kurtosis < 7.0;
    return rep;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> project(const Eigen::Ref<const Eigen::MatrixXd>& F) {
    const Eigen::MatrixXd clipped = F.cwiseMax(0.0);
    return {clipped.rowwise().sum(), clipped.colwise().sum().transpose()};
}

std::vector<Peak> peak_summary(const Eigen::Ref<const Eigen::MatrixXd>& F,
                               const RelaxationGrid& grid1, const RelaxationGrid& grid2,
                               double rel_threshold) {
    const Eigen::Index n1 = F.rows(), n2 = F.cols();
    if (n1 != grid1.n || n2 != grid2.n) throw DataError("peak_summary: map shape does not match grids");

    const Eigen::MatrixXd A = F.cwiseMax(0.0);
    const double peak = A.maxCoeff();
    std::vector<Peak> peaks;
    if (peak <= 0.0) return peaks;
    const double cut = rel_threshold * peak;

    // 4-connected flood fill over pixels above the cut.
    Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic> label =
        Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>::Zero(n1, n2);
    int next_label = 0;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> stack;
    for (Eigen::Index j0 = 0; j0 < n2; ++j0) {
        for (Eigen::Index i0 = 0; i0 < n1; ++i0) {
            if (A(i0, j0) <= cut || label(i0, j0) != 0) continue;
            ++next_label;
            Peak pk;
            double mass = 0.0, log1 = 0.0, log2 = 0.0;
            stack.clear();
            stack.emplace_back(i0, j0);
            label(i0, j0) = next_label;
            while (!stack.empty()) {
                auto [i, j] = stack.back();
                stack.pop_back();
                const double w = A(i, j);
                mass += w;
                log1 += w * std::log(grid1.values[i]);
                log2 += w * std::log(grid2.values[j]);
                ++pk.pixels;
                const Eigen::Index ni[4] = {i - 1, i + 1, i, i};
                const Eigen::Index nj[4] = {j, j, j - 1, j + 1};
                for (int q = 0; q < 4; ++q) {
                    if (ni[q] < 0 || ni[q] >= n1 || nj[q] < 0 || nj[q] >= n2) continue;
                    if (A(ni[q], nj[q]) <= cut || label(ni[q], nj[q]) != 0) continue;
                    label(ni[q], nj[q]) = next_label;
                    stack.emplace_back(ni[q], nj[q]);
                }
            }
            pk.t1_gm = std::exp(log1 / mass);
            pk.t2_gm = std::exp(log2 / mass);
            pk.area_percent = mass;  // normalized below
            peaks.push_back(pk);
        }
    }
    double labeled = 0.0;
    for (const Peak& pk : peaks) labeled += pk.area_percent;
    for (Peak& pk : peaks) pk.area_percent *= 100.0 / labeled;
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& a, const Peak& b) { return a.area_percent > b.area_percent; });
    return peaks;
}

}  // namespace relax2d
