#include "relax2d/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "relax2d/svg_plots.hpp"

namespace relax2d {

namespace fs = std::filesystem;

namespace {

double parse_double(const std::string& token, const std::string& where) {
    double value{};
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw DataError("non-numeric token '" + token + "' in " + where);
    return value;
}

long parse_long(const std::string& token, const std::string& where) {
    long value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw DataError("non-integer token '" + token + "' in " + where);
    return value;
}

struct Keyword {
    std::vector<std::string> values;
    int line{0};
    bool used{false};
};

// `keyword value...` lines, `#` starts a comment.
std::map<std::string, Keyword> parse_par_file(const fs::path& file) {
    std::ifstream is(file);
    if (!is) throw ConfigError("cannot open parameter file " + file.string());
    std::map<std::string, Keyword> out;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        Keyword kw;
        kw.line = lineno;
        std::string tok;
        while (ls >> tok) kw.values.push_back(tok);
        if (out.count(key))
            throw ConfigError("duplicate keyword '" + key + "' in " + file.string() + " line " +
                              std::to_string(lineno));
        out.emplace(key, std::move(kw));
    }
    return out;
}

class ParSet {
public:
    ParSet(fs::path file, std::map<std::string, Keyword> kws)
        : file_(std::move(file)), kws_(std::move(kws)) {}

    bool has(const std::string& key) const { return kws_.count(key) != 0; }

    const std::vector<std::string>& require(const std::string& key, size_t n) {
        auto it = kws_.find(key);
        if (it == kws_.end())
            throw ConfigError("missing mandatory keyword '" + key + "' in " + file_.string());
        return fetch(it, key, n);
    }

    double number(const std::string& key, double fallback) {
        auto it = kws_.find(key);
        if (it == kws_.end()) return fallback;
        return parse_double(fetch(it, key, 1)[0], file_.string());
    }

    long integer(const std::string& key, long fallback) {
        auto it = kws_.find(key);
        if (it == kws_.end()) return fallback;
        return parse_long(fetch(it, key, 1)[0], file_.string());
    }

    void collect_unknown(std::vector<std::string>& warnings) const {
        for (const auto& [key, kw] : kws_)
            if (!kw.used)
                warnings.push_back("ignoring unknown keyword '" + key + "' in " + file_.string() +
                                   " line " + std::to_string(kw.line));
    }

    const fs::path& file() const { return file_; }

private:
    const std::vector<std::string>& fetch(std::map<std::string, Keyword>::iterator it,
                                          const std::string& key, size_t n) {
        it->second.used = true;
        if (it->second.values.size() < n)
            throw ConfigError("keyword '" + key + "' in " + file_.string() + " needs " +
                              std::to_string(n) + " value(s)");
        return it->second.values;
    }

    fs::path file_;
    std::map<std::string, Keyword> kws_;
};

ParSet open_par(const fs::path& file) { return ParSet(file, parse_par_file(file)); }

void atomic_write(const fs::path& file, const std::string& content) {
    const fs::path tmp = file.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
        os << content;
        if (!os) throw IoError("failed writing " + tmp.string());
    }
    fs::rename(tmp, file);
}

std::string format_matrix(const Eigen::MatrixXd& m, int precision) {
    std::ostringstream os;
    os.precision(precision > 0 ? precision : 17);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m(i, j);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace

Eigen::MatrixXd read_matrix(const fs::path& file) {
    std::ifstream is(file);
    if (!is) throw DataError("cannot open data file " + file.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::vector<double> row;
        std::string tok;
        while (ls >> tok)
            row.push_back(parse_double(tok, file.string() + " line " + std::to_string(lineno)));
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows.front().size())
            throw DataError("ragged row in " + file.string() + " line " + std::to_string(lineno));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("empty data file " + file.string());
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    return m;
}

Eigen::VectorXd read_vector(const fs::path& file) {
    Eigen::MatrixXd m = read_matrix(file);
    if (m.cols() != 1) throw DataError("expected a single-column file: " + file.string());
    return m.col(0);
}

void write_matrix(const fs::path& file, const Eigen::MatrixXd& m, int precision) {
    atomic_write(file, format_matrix(m, precision));
}

void write_vector(const fs::path& file, const Eigen::VectorXd& v, int precision) {
    write_matrix(file, v, precision);
}

LoadedInput load_input(const fs::path& folder) {
    if (!fs::is_directory(folder)) throw ConfigError("input folder not found: " + folder.string());

    LoadedInput in;
    ParSet set_input = open_par(folder / "FileSetInput.par");
    ParSet flags = open_par(folder / "FileFlag.par");
    ParSet pars = open_par(folder / "FilePar.par");

    ParsedConfig& cfg = in.config;
    cfg.data_file = set_input.require("Filenamedata", 1)[0];
    cfg.time_x_file = set_input.require("filenameTimeX", 1)[0];
    cfg.time_y_file = set_input.require("filenameTimeY", 1)[0];
    cfg.nx = set_input.integer("nx", 0);
    cfg.ny = set_input.integer("ny", 0);
    if (cfg.nx < 2 || cfg.ny < 2)
        throw ConfigError("nx/ny must be >= 2 in " + set_input.file().string());

    cfg.kind = parse_kernel_kind(flags.require("FL_typeKernel", 1)[0]);
    const auto& limits = flags.require("FL_InversionTimeLimits", 4);
    const std::string where = flags.file().string();
    cfg.limit1_lo = parse_double(limits[0], where);
    cfg.limit1_hi = parse_double(limits[1], where);
    cfg.limit2_lo = parse_double(limits[2], where);
    cfg.limit2_hi = parse_double(limits[3], where);
    if (!(cfg.limit1_lo > 0.0 && cfg.limit1_hi > cfg.limit1_lo && cfg.limit2_lo > 0.0 &&
          cfg.limit2_hi > cfg.limit2_lo))
        throw ConfigError("inversion limits must be positive and ordered in " + where);

    InversionConfig& inv = cfg.inversion;
    inv.outer_tol = pars.number("par.tol", inv.outer_tol);
    inv.max_outer = static_cast<int>(pars.integer("par.maxiter", inv.max_outer));
    inv.fista.tol = pars.number("par.fista.tol", inv.fista.tol);
    inv.fista.max_iter = static_cast<int>(pars.integer("par.fista.maxiter", inv.fista.max_iter));
    inv.gp_tol = pars.number("par.gpm.tol", inv.gp_tol);
    inv.gp_max_iter = static_cast<int>(pars.integer("par.gpm.maxiter", inv.gp_max_iter));
    inv.coefficients.beta0 = pars.number("par.beta0", inv.coefficients.beta0);
    inv.coefficients.betap = pars.number("par.betap", inv.coefficients.betap);
    inv.coefficients.betac = pars.number("par.betac", inv.coefficients.betac);
    inv.weight = pars.number("par.fista.weight", inv.weight);
    inv.svd_threshold = pars.number("par.svd.threshold", inv.svd_threshold);

    set_input.collect_unknown(cfg.warnings);
    flags.collect_unknown(cfg.warnings);
    pars.collect_unknown(cfg.warnings);

    in.times.t1 = read_vector(folder / cfg.time_x_file);
    in.times.t2 = read_vector(folder / cfg.time_y_file);
    validate(in.times);
    in.data = read_matrix(folder / cfg.data_file);
    if (in.data.rows() != in.times.t1.size() || in.data.cols() != in.times.t2.size())
        throw DataError("data matrix is " + std::to_string(in.data.rows()) + " x " +
                        std::to_string(in.data.cols()) + " but time files give " +
                        std::to_string(in.times.t1.size()) + " x " +
                        std::to_string(in.times.t2.size()));
    return in;
}

void write_input_folder(const fs::path& dir, const SyntheticDataset& dataset) {
    fs::create_directories(dir);
    const SyntheticSpec& spec = dataset.spec;

    write_vector(dir / "TimeX.txt", dataset.times.t1, 0);
    write_vector(dir / "TimeY.txt", dataset.times.t2, 0);
    write_matrix(dir / "Data2D.txt", dataset.data, 0);
    write_matrix(dir / "ReferenceMap.txt", dataset.reference_map, 0);

    std::ostringstream set_input;
    set_input << "# synthetic dataset (seed " << spec.seed << ", noise " << spec.noise_level
              << ")\n"
              << "Filenamedata Data2D.txt\n"
              << "filenameTimeX TimeX.txt\n"
              << "filenameTimeY TimeY.txt\n"
              << "nx " << spec.n1 << "\n"
              << "ny " << spec.n2 << "\n";
    atomic_write(dir / "FileSetInput.par", set_input.str());

    std::ostringstream flags;
    flags.precision(17);
    flags << "FL_typeKernel " << to_string(spec.kind) << "\n"
          << "FL_InversionTimeLimits " << spec.grid1_lo << " " << spec.grid1_hi << " "
          << spec.grid2_lo << " " << spec.grid2_hi << "\n";
    atomic_write(dir / "FileFlag.par", flags.str());

    const InversionConfig defaults;
    std::ostringstream pars;
    pars << "# inversion parameters; beta defaults are sample-dependent starting points\n"
         << "par.tol " << defaults.outer_tol << "\n"
         << "par.maxiter " << defaults.max_outer << "\n"
         << "par.fista.tol " << defaults.fista.tol << "\n"
         << "par.fista.maxiter " << defaults.fista.max_iter << "\n"
         << "par.gpm.tol " << defaults.gp_tol << "\n"
         << "par.gpm.maxiter " << defaults.gp_max_iter << "\n"
         << "par.beta0 " << defaults.coefficients.beta0 << "\n"
         << "par.betap " << defaults.coefficients.betap << "\n"
         << "par.betac " << defaults.coefficients.betac << "\n"
         << "par.fista.weight " << defaults.weight << "\n"
         << "par.svd.threshold " << defaults.svd_threshold << "\n";
    atomic_write(dir / "FilePar.par", pars.str());
}

void write_residual_outputs(const fs::path& out_dir, const ResidualReport& report,
                            const Eigen::VectorXd& residual) {
    fs::create_directories(out_dir);

    std::ostringstream stats;
    stats.precision(17);
    stats << "mean " << report.mean << "\n"
          << "variance " << report.variance << "\n"
          << "stddev " << report.stddev << "\n"
          << "skewness " << report.skewness << "\n"
          << "kurtosis " << report.kurtosis << "\n"
          << "percentile25 " << report.percentile25 << "\n"
          << "median " << report.median << "\n"
          << "percentile75 " << report.percentile75 << "\n"
          << "outliers " << report.outliers.size() << "\n"
          << "in_box " << report.in_box << "\n"
          << "total " << residual.size() << "\n"
          << "normal " << (report.normal ? 1 : 0) << "\n";
    atomic_write(out_dir / "ResidualStats.txt", stats.str());

    svg::write_histogram(out_dir / "ResidualHistogram.svg", residual, "Residual histogram");
    svg::write_boxplot(out_dir / "ResidualBoxplot.svg", residual, report, "Residual box plot");
}

void write_outputs(const fs::path& out_dir, const InversionResult& result,
                   const ResidualReport& report, const Eigen::VectorXd& residual,
                   const ParsedConfig& config, const SeparableKernel& kernel) {
    fs::create_directories(out_dir);

    write_matrix(out_dir / "Map.txt", result.map);
    write_vector(out_dir / "GridX.txt", kernel.grid1.values, 0);
    write_vector(out_dir / "GridY.txt", kernel.grid2.values, 0);

    auto [p1, p2] = project(result.display_map);
    auto write_projection_file = [&](const fs::path& file, const Eigen::VectorXd& axis,
                                     const Eigen::VectorXd& p) {
        std::ostringstream os;
        os.precision(10);
        for (Eigen::Index i = 0; i < axis.size(); ++i) os << axis[i] << ' ' << p[i] << '\n';
        atomic_write(file, os.str());
    };
    write_projection_file(out_dir / "ProjectionX.txt", kernel.grid1.values, p1);
    write_projection_file(out_dir / "ProjectionY.txt", kernel.grid2.values, p2);

    write_residual_outputs(out_dir, report, residual);

    char buf[512];
    std::ostringstream summary;
    const char* rule = "---------------------------------------------------------------------\n";
    summary << rule << "MUpen2D Input Parameters \n";
    std::snprintf(buf, sizeof buf, " MUpen2D tol = %E,\n Projected Gradient Tol = %E \n",
                  config.inversion.outer_tol, config.inversion.gp_tol);
    summary << buf;
    std::snprintf(buf, sizeof buf, " SVD Threshold = %G \n", config.inversion.svd_threshold);
    summary << buf;
    std::snprintf(buf, sizeof buf, " Beta = %E %E %E \n", config.inversion.coefficients.beta0,
                  config.inversion.coefficients.betap, config.inversion.coefficients.betac);
    summary << buf;
    std::snprintf(buf, sizeof buf, " Fista Weight = %G \n", config.inversion.weight);
    summary << buf;
    std::snprintf(buf, sizeof buf, " Data size = %ld x %ld  \n",
                  static_cast<long>(kernel.K1.rows()), static_cast<long>(kernel.K2.rows()));
    summary << buf << rule;
    std::snprintf(buf, sizeof buf,
                  "Number of Inversion channels:  horizontal %ld, vertical  %ld \n",
                  static_cast<long>(config.nx), static_cast<long>(config.ny));
    summary << buf;
    std::snprintf(buf, sizeof buf, "Final Relative Residual Norm = %.4E \n", result.rel_residual);
    summary << buf;
    std::snprintf(buf, sizeof buf, "Total MUpen2D Iterations = %d\n", result.outer_iterations);
    summary << buf;
    std::snprintf(buf, sizeof buf, "Total FISTA Iterations = %ld \n",
                  result.total_fista_iterations);
    summary << buf;
    std::snprintf(buf, sizeof buf, "Computation Time = %.5f s\n", result.seconds);
    summary << buf << rule;
    atomic_write(out_dir / "Parameters.txt", summary.str());

    svg::write_heatmap(out_dir / "Map.svg", result.display_map, kernel.grid1, kernel.grid2,
                       "Relaxation map");
    svg::write_contour(out_dir / "Contour.svg", result.display_map, kernel.grid1, kernel.grid2,
                       "Relaxation map contours");
    svg::write_projection(out_dir / "ProjectionX.svg", kernel.grid1.values, p1,
                          "First-axis projection", "first axis (log)");
    svg::write_projection(out_dir / "ProjectionY.svg", kernel.grid2.values, p2,
                          "Second-axis projection", "second axis (log)");
}

}  // namespace relax2d
