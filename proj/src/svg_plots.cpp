#include "relax2d/svg_plots.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "relax2d/errors.hpp"

namespace relax2d::svg {

namespace {

constexpr double kWidth = 640.0, kHeight = 480.0;
constexpr double kLeft = 70.0, kRight = 600.0, kTop = 50.0, kBottom = 420.0;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

struct Canvas {
    std::ostringstream body;

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double width = 1.0) {
        body << "<line x1='" << fmt(x1) << "' y1='" << fmt(y1) << "' x2='" << fmt(x2) << "' y2='"
             << fmt(y2) << "' stroke='" << stroke << "' stroke-width='" << fmt(width) << "'/>\n";
    }
    void rect(double x, double y, double w, double h, const std::string& fill) {
        body << "<rect x='" << fmt(x) << "' y='" << fmt(y) << "' width='" << fmt(w) << "' height='"
             << fmt(h) << "' fill='" << fill << "'/>\n";
    }
    void text(double x, double y, const std::string& s, double size = 12.0,
              const std::string& anchor = "middle") {
        body << "<text x='" << fmt(x) << "' y='" << fmt(y) << "' font-size='" << fmt(size)
             << "' text-anchor='" << anchor << "' font-family='sans-serif'>" << s << "</text>\n";
    }
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                  double width = 1.5) {
        body << "<polyline fill='none' stroke='" << stroke << "' stroke-width='" << fmt(width)
             << "' points='";
        for (const auto& [x, y] : pts) body << fmt(x) << "," << fmt(y) << " ";
        body << "'/>\n";
    }

    void save(const std::filesystem::path& file, const std::string& title) {
        std::ofstream os(file);
        if (!os) throw IoError("cannot open plot file " + file.string());
        os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
           << "' viewBox='0 0 " << kWidth << " " << kHeight << "'>\n"
           << "<rect width='100%' height='100%' fill='white'/>\n"
           << "<text x='" << kWidth / 2 << "' y='28' font-size='16' text-anchor='middle'"
           << " font-family='sans-serif'>" << title << "</text>\n"
           << body.str() << "</svg>\n";
        if (!os) throw IoError("failed writing plot file " + file.string());
    }
};

// Blue-to-red map over [0,1].
std::string colormap(double v) {
    v = std::clamp(v, 0.0, 1.0);
    const int r = static_cast<int>(255.0 * std::clamp(1.5 * v - 0.25, 0.0, 1.0));
    const int g = static_cast<int>(255.0 * (1.0 - std::abs(2.0 * v - 1.0)));
    const int b = static_cast<int>(255.0 * std::clamp(1.25 - 1.5 * v, 0.0, 1.0));
    std::ostringstream os;
    os << "rgb(" << r << "," << g << "," << b << ")";
    return os.str();
}

void log_axis_ticks(Canvas& c, const RelaxationGrid& g, bool horizontal) {
    const double l0 = std::log10(g.lo), l1 = std::log10(g.hi);
    for (int d = static_cast<int>(std::ceil(l0)); d <= static_cast<int>(std::floor(l1)); ++d) {
        const double frac = (d - l0) / (l1 - l0);
        std::ostringstream label;
        label << std::pow(10.0, d);
        if (horizontal) {
            const double x = kLeft + frac * (kRight - kLeft);
            c.line(x, kBottom, x, kBottom + 5, "black");
            c.text(x, kBottom + 20, label.str());
        } else {
            const double y = kBottom - frac * (kBottom - kTop);
            c.line(kLeft - 5, y, kLeft, y, "black");
            c.text(kLeft - 10, y + 4, label.str(), 12.0, "end");
        }
    }
}

void frame(Canvas& c) {
    c.line(kLeft, kBottom, kRight, kBottom, "black");
    c.line(kLeft, kTop, kLeft, kBottom, "black");
}

}  // namespace

void write_heatmap(const std::filesystem::path& file, const Eigen::MatrixXd& map,
                   const RelaxationGrid& grid1, const RelaxationGrid& grid2,
                   const std::string& title) {
    Canvas c;
    const Eigen::MatrixXd a = map.cwiseMax(0.0);
    const double peak = a.maxCoeff();
    const double cw = (kRight - kLeft) / static_cast<double>(a.cols());
    const double ch = (kBottom - kTop) / static_cast<double>(a.rows());
    // second axis horizontal, first axis vertical (low values at the bottom)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            c.rect(kLeft + j * cw, kBottom - (i + 1) * ch, cw + 0.5, ch + 0.5,
                   colormap(peak > 0.0 ? a(i, j) / peak : 0.0));
    frame(c);
    log_axis_ticks(c, grid2, true);
    log_axis_ticks(c, grid1, false);
    c.text((kLeft + kRight) / 2, kHeight - 16, "second axis (log)");
    c.save(file, title);
}

void write_contour(const std::filesystem::path& file, const Eigen::MatrixXd& map,
                   const RelaxationGrid& grid1, const RelaxationGrid& grid2,
                   const std::string& title) {
    Canvas c;
    const Eigen::MatrixXd a = map.cwiseMax(0.0);
    const double peak = a.maxCoeff();
    const double cw = (kRight - kLeft) / static_cast<double>(a.cols() - 1);
    const double ch = (kBottom - kTop) / static_cast<double>(a.rows() - 1);
    // marching squares on cell edges, 8 evenly spaced levels
    for (int lvl = 1; lvl <= 8 && peak > 0.0; ++lvl) {
        const double v = peak * lvl / 9.0;
        const std::string color = colormap(static_cast<double>(lvl) / 9.0);
        for (Eigen::Index j = 0; j + 1 < a.cols(); ++j) {
            for (Eigen::Index i = 0; i + 1 < a.rows(); ++i) {
                // corner values; edge crossings found by linear interpolation
                const double f00 = a(i, j), f10 = a(i + 1, j), f01 = a(i, j + 1),
                             f11 = a(i + 1, j + 1);
                std::vector<std::pair<double, double>> pts;
                auto edge = [&](double fa, double fb, double xa, double ya, double xb, double yb) {
                    if ((fa < v) == (fb < v)) return;
                    const double t = (v - fa) / (fb - fa);
                    pts.emplace_back(xa + t * (xb - xa), ya + t * (yb - ya));
                };
                const double x0 = kLeft + j * cw, x1 = kLeft + (j + 1) * cw;
                const double y0 = kBottom - i * ch, y1 = kBottom - (i + 1) * ch;
                edge(f00, f10, x0, y0, x0, y1);
                edge(f01, f11, x1, y0, x1, y1);
                edge(f00, f01, x0, y0, x1, y0);
                edge(f10, f11, x0, y1, x1, y1);
                if (pts.size() >= 2) c.line(pts[0].first, pts[0].second, pts[1].first, pts[1].second, color);
                if (pts.size() == 4) c.line(pts[2].first, pts[2].second, pts[3].first, pts[3].second, color);
            }
        }
    }
    frame(c);
    log_axis_ticks(c, grid2, true);
    log_axis_ticks(c, grid1, false);
    c.save(file, title);
}

void write_projection(const std::filesystem::path& file, const Eigen::VectorXd& axis,
                      const Eigen::VectorXd& values, const std::string& title,
                      const std::string& x_label) {
    if (axis.size() != values.size() || axis.size() < 2)
        throw DataError("projection plot: axis/value size mismatch");
    Canvas c;
    const double l0 = std::log10(axis[0]), l1 = std::log10(axis[axis.size() - 1]);
    const double vmax = std::max(values.maxCoeff(), 1e-300);
    std::vector<std::pair<double, double>> pts;
    for (Eigen::Index i = 0; i < axis.size(); ++i) {
        const double fx = (std::log10(axis[i]) - l0) / (l1 - l0);
        pts.emplace_back(kLeft + fx * (kRight - kLeft),
                         kBottom - (values[i] / vmax) * (kBottom - kTop));
    }
    c.polyline(pts, "blue");
    frame(c);
    RelaxationGrid g{axis, axis[0], axis[axis.size() - 1], axis.size()};
    log_axis_ticks(c, g, true);
    c.text((kLeft + kRight) / 2, kHeight - 16, x_label);
    c.save(file, title);
}

void write_histogram(const std::filesystem::path& file, const Eigen::VectorXd& samples,
                     const std::string& title) {
    if (samples.size() < 4) throw DataError("histogram: need at least 4 samples");
    Canvas c;
    const int nbins = 60;
    const double lo = samples.minCoeff(), hi = samples.maxCoeff();
    const double span = hi > lo ? hi - lo : 1.0;
    std::vector<double> counts(nbins, 0.0);
    for (Eigen::Index i = 0; i < samples.size(); ++i) {
        int b = static_cast<int>((samples[i] - lo) / span * nbins);
        counts[std::clamp(b, 0, nbins - 1)] += 1.0;
    }
    const double cmax = *std::max_element(counts.begin(), counts.end());
    const double bw = (kRight - kLeft) / nbins;
    for (int b = 0; b < nbins; ++b) {
        const double h = counts[b] / cmax * (kBottom - kTop);
        c.rect(kLeft + b * bw, kBottom - h, bw - 1.0, h, "steelblue");
    }
    // fitted normal density, scaled to the histogram
    const double mu = samples.mean();
    const double sigma = std::sqrt((samples.array() - mu).square().mean());
    if (sigma > 0.0) {
        const double binw = span / nbins;
        const double scale =
            static_cast<double>(samples.size()) * binw / (sigma * std::sqrt(2.0 * M_PI));
        std::vector<std::pair<double, double>> pts;
        for (int q = 0; q <= 200; ++q) {
            const double x = lo + span * q / 200.0;
            const double d = (x - mu) / sigma;
            const double y = scale * std::exp(-0.5 * d * d);
            pts.emplace_back(kLeft + (x - lo) / span * (kRight - kLeft),
                             kBottom - y / cmax * (kBottom - kTop));
        }
        c.polyline(pts, "red", 2.0);
    }
    frame(c);
    c.text(kLeft, kBottom + 20, fmt(lo), 12.0, "start");
    c.text(kRight, kBottom + 20, fmt(hi), 12.0, "end");
    c.save(file, title);
}

void write_boxplot(const std::filesystem::path& file, const Eigen::VectorXd& samples,
                   const ResidualReport& report, const std::string& title) {
    Canvas c;
    const double lo = samples.minCoeff(), hi = samples.maxCoeff();
    const double span = hi > lo ? hi - lo : 1.0;
    auto ypos = [&](double v) { return kBottom - (v - lo) / span * (kBottom - kTop); };
    const double cx = (kLeft + kRight) / 2.0, half = 80.0;

    const double iqr = report.percentile75 - report.percentile25;
    const double wlo = std::max(lo, report.percentile25 - 1.5 * iqr);
    const double whi = std::min(hi, report.percentile75 + 1.5 * iqr);

    c.line(cx, ypos(wlo), cx, ypos(report.percentile25), "black");
    c.line(cx, ypos(report.percentile75), cx, ypos(whi), "black");
    c.line(cx - half / 2, ypos(wlo), cx + half / 2, ypos(wlo), "black");
    c.line(cx - half / 2, ypos(whi), cx + half / 2, ypos(whi), "black");
    c.body << "<rect x='" << fmt(cx - half) << "' y='" << fmt(ypos(report.percentile75))
           << "' width='" << fmt(2 * half) << "' height='"
           << fmt(ypos(report.percentile25) - ypos(report.percentile75))
           << "' fill='none' stroke='blue'/>\n";
    c.line(cx - half, ypos(report.median), cx + half, ypos(report.median), "red", 2.0);

    // cap the drawn outliers so large runs stay readable
    std::size_t step = std::max<std::size_t>(1, report.outliers.size() / 1000);
    for (std::size_t q = 0; q < report.outliers.size(); q += step) {
        const double y = ypos(samples[report.outliers[q]]);
        c.line(cx - 4, y, cx + 4, y, "red");
        c.line(cx, y - 4, cx, y + 4, "red");
    }
    frame(c);
    c.text(kLeft - 10, ypos(lo) + 4, fmt(lo), 12.0, "end");
    c.text(kLeft - 10, ypos(hi) + 4, fmt(hi), 12.0, "end");
    c.save(file, title);
}

}  // namespace relax2d::svg
