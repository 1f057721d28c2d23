#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include "specdim/boxcount.hpp"
#include "specdim/error.hpp"
#include "specdim/spectra.hpp"
#include "specdim/theory.hpp"
#include "svg.hpp"

namespace specdim::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
    // shared
    double grid_min = 0.02;
    double grid_max = 5.0;
    std::size_t points_per_decade = 48;
    std::size_t window = 5;
    std::string out_dir = ".";
    bool plot = false;

    // theory / sample
    std::string model;
    bool transform = false;
    std::size_t n = 0;
    std::optional<std::uint64_t> seed;

    // analyze
    std::string input;
    bool unfold_semicircle = false;
    double trim = 0.05;
    std::string decimate;
    bool rescale = false;
    std::string overlay;

    // compare
    std::string curve_a, curve_b;
    double tol = 0.02;
    std::optional<double> r_min, r_max;

    // crossing
    std::string model_a, model_b;
    std::vector<double> bracket{0.1, 1.0};
};

SpacingModel parse_model(const std::string& name) {
    static const std::pair<const char*, SpacingKind> builtins[] = {
        {"poisson", SpacingKind::Poisson},   {"goe", SpacingKind::WignerGOE},
        {"gue", SpacingKind::WignerGUE},     {"gse", SpacingKind::WignerGSE},
        {"equal", SpacingKind::EqualSpacing},
    };
    for (const auto& [key, kind] : builtins)
        if (name == key) return SpacingModel::builtin(kind, 1.0);
    const std::string prefix = "tabulated:";
    if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size()) return load_tabulated(name.substr(prefix.size()));
    fail(ErrorKind::InvalidArgument,
         "unknown model '" + name + "' (expected poisson, goe, gue, gse, equal or tabulated:PATH)");
}

SlopeConfig slope_config(const Options& o) {
    SlopeConfig cfg;
    cfg.window = o.window;
    cfg.points_per_decade = o.points_per_decade;
    cfg.r_min_over_sbar = o.grid_min;
    cfg.r_max_over_sbar = o.grid_max;
    cfg.validate();
    return cfg;
}

fs::path output_path(const Options& o, const std::string& name) {
    const fs::path dir(o.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) fail(ErrorKind::InvalidArgument, "cannot create output directory " + o.out_dir);
    return dir / name;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body, std::ostream& out) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorKind::InvalidArgument, "cannot write " + path.string());
    body(f);
    f.flush();
    if (!f) fail(ErrorKind::InvalidArgument, "write failed: " + path.string());
    out << "wrote " << path.string() << '\n';
}

std::vector<std::pair<double, double>> xy(const DimensionCurve& c) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : c.points()) pts.emplace_back(p.r_over_sbar, p.d_b);
    return pts;
}

DimensionCurve theory_curve(const SpacingModel& model, const Options& o, bool transform) {
    const auto grid = log_grid(o.grid_min, o.grid_max, o.points_per_decade);
    if (grid.empty()) fail(ErrorKind::InvalidArgument, "grid holds no points");
    const bool closed = model.is_builtin() && !transform;
    return curve(model, grid, closed ? CurveMethod::ClosedForm : CurveMethod::Transform);
}

int cmd_theory(const Options& o, std::ostream& out) {
    const auto model = parse_model(o.model);
    const auto c = theory_curve(model, o, o.transform);
    write_file(output_path(o, "theory.csv"), [&](std::ostream& f) { write_csv(f, c); }, out);
    if (o.plot) {
        const auto svg = dimension_plot({{model.name(), xy(c), Style::Line}}, "D_b(r), " + model.name());
        write_file(output_path(o, "theory.svg"), [&](std::ostream& f) { f << svg; }, out);
    }
    return kSuccess;
}

int cmd_sample(const Options& o, std::ostream& out) {
    require(o.n >= 1, "--n must be positive");
    std::optional<Spectrum> spectrum;
    if (o.model == "goe-matrix") {
        if (!o.seed) fail(ErrorKind::InvalidArgument, "--seed is required for goe-matrix");
        spectrum = goe_spectrum(o.n, RngSeed{*o.seed});
    } else {
        const auto model = parse_model(o.model);
        if (!o.seed && model.kind() != SpacingKind::EqualSpacing)
            fail(ErrorKind::InvalidArgument, "--seed is required for randomized models");
        spectrum = renewal_spectrum(model, o.n, RngSeed{o.seed.value_or(0)});
    }
    write_file(output_path(o, "spectrum.txt"), [&](std::ostream& f) { write_levels(f, *spectrum); }, out);
    return kSuccess;
}

int cmd_analyze(const Options& o, std::ostream& out) {
    Spectrum s = ingest_levels(o.input);
    if (o.unfold_semicircle) s = unfold_semicircle(s, o.trim);
    if (!o.decimate.empty()) s = decimate(s, o.decimate == "even" ? Parity::Even : Parity::Odd);
    if (o.rescale) s = rescale_to_unit_mean(s);

    const auto cfg = slope_config(o);
    const auto counts = count_curve(s, cfg);
    const auto empirical = local_slope_curve(counts, cfg);
    out << "levels " << s.size() << ", mean spacing " << counts.sbar << '\n';
    write_file(output_path(o, "boxcount.csv"), [&](std::ostream& f) { write_csv(f, counts); }, out);
    write_file(output_path(o, "dimension.csv"), [&](std::ostream& f) { write_csv(f, empirical); }, out);

    std::vector<Series> series{{"box counting", xy(empirical), Style::Markers}};
    if (!o.overlay.empty()) {
        const auto model = parse_model(o.overlay);
        const auto theory = theory_curve(model, o, false);
        write_file(output_path(o, "overlay.csv"), [&](std::ostream& f) { write_csv(f, theory); }, out);
        double worst = 0.0;
        for (const auto& p : empirical.points())
            worst = std::max(worst, std::abs(p.d_b - theory.interpolate(p.r_over_sbar)));
        out << "max |D_b - " << model.name() << "| = " << worst << '\n';
        series.push_back({model.name() + " theory", xy(theory), Style::Line});
    }
    if (o.plot) {
        std::vector<std::pair<double, double>> inset;
        for (const auto& p : counts.points)
            inset.emplace_back(std::log(p.r / counts.sbar), std::log(static_cast<double>(p.n_boxes)));
        const auto svg = dimension_plot(series, "D_b(r), " + s.label(), inset);
        write_file(output_path(o, "analyze.svg"), [&](std::ostream& f) { f << svg; }, out);
    }
    return kSuccess;
}

DimensionCurve read_curve(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::InputData, "cannot open " + path);
    return read_dimension_csv(f, fs::path(path).filename().string());
}

int cmd_compare(const Options& o, std::ostream& out) {
    require(o.tol >= 0.0, "--tol must be non-negative");
    const auto a = read_curve(o.curve_a);
    const auto b = read_curve(o.curve_b);
    double lo = std::max(a.points().front().r_over_sbar, b.points().front().r_over_sbar);
    double hi = std::min(a.points().back().r_over_sbar, b.points().back().r_over_sbar);
    if (o.r_min) lo = std::max(lo, *o.r_min);
    if (o.r_max) hi = std::min(hi, *o.r_max);
    if (!(lo <= hi)) fail(ErrorKind::InputData, "curves share no common r/s̄ range");

    std::vector<double> grid;
    for (const auto* c : {&a, &b})
        for (const auto& p : c->points())
            if (p.r_over_sbar >= lo && p.r_over_sbar <= hi) grid.push_back(p.r_over_sbar);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.empty()) grid.push_back(lo);

    double worst = 0.0, at = grid.front(), sum_sq = 0.0;
    for (double x : grid) {
        const double d = std::abs(a.interpolate(x) - b.interpolate(x));
        sum_sq += d * d;
        if (d > worst) {
            worst = d;
            at = x;
        }
    }
    const double rms = std::sqrt(sum_sq / static_cast<double>(grid.size()));
    char line[256];
    std::snprintf(line, sizeof line, "points %zu, range [%.6g, %.6g]\nmax deviation %.6g at r/s̄ = %.6g\nrms deviation %.6g\n",
                  grid.size(), lo, hi, worst, at, rms);
    out << line << (worst <= o.tol ? "within" : "exceeds") << " tolerance " << o.tol << '\n';
    return worst <= o.tol ? kSuccess : kTolerance;
}

int cmd_crossing(const Options& o, std::ostream& out) {
    require(o.bracket.size() == 2, "--bracket takes two values");
    const auto a = parse_model(o.model_a);
    const auto b = parse_model(o.model_b);
    const double r = find_crossing(a, b, o.bracket[0], o.bracket[1]);
    char line[160];
    std::snprintf(line, sizeof line, "r*/s̄ = %.10f\n|r*/s̄ - 1| = %.10f\n", r, std::abs(r - 1.0));
    out << line;
    return kSuccess;
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return kUsage;
        case ErrorKind::InputData:
        case ErrorKind::PointMass:
        case ErrorKind::Extrapolation: return kInputData;
        case ErrorKind::Convergence:
        case ErrorKind::Bracketing: return kNumerical;
    }
    return kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Local box-counting dimension of spectra", "specdim"};
    app.set_config("--config", "", "key = value file; command-line flags take precedence");
    app.require_subcommand(1);
    app.add_option("--grid-min", o.grid_min, "smallest r/s̄ on the grid")->capture_default_str();
    app.add_option("--grid-max", o.grid_max, "largest r/s̄ on the grid")->capture_default_str();
    app.add_option("--points-per-decade", o.points_per_decade, "grid density")->capture_default_str();
    app.add_option("--window", o.window, "slope window, odd")->capture_default_str();
    app.add_option("--out", o.out_dir, "output directory")->capture_default_str();
    app.add_flag("--plot", o.plot, "also write an SVG figure");

    auto* theory = app.add_subcommand("theory", "theoretical D_b(r) curve");
    theory->add_option("--model", o.model, "poisson|goe|gue|gse|equal|tabulated:PATH")->required();
    theory->add_flag("--transform", o.transform, "integrate the density instead of using the closed form");

    auto* sample = app.add_subcommand("sample", "write a synthetic spectrum");
    sample->add_option("--model", o.model, "spacing model, or goe-matrix")->required();
    sample->add_option("--n", o.n, "number of levels")->required();
    sample->add_option("--seed", o.seed, "random seed");

    auto* analyze = app.add_subcommand("analyze", "box-count a level file");
    analyze->add_option("input", o.input, "level file")->required();
    analyze->add_flag("--unfold-semicircle", o.unfold_semicircle, "unfold with the GOE semicircle law");
    analyze->add_option("--trim", o.trim, "edge fraction dropped when unfolding")->capture_default_str();
    analyze->add_option("--decimate", o.decimate, "keep even or odd levels")->check(CLI::IsMember({"even", "odd"}));
    analyze->add_flag("--rescale", o.rescale, "rescale to unit mean spacing");
    analyze->add_option("--overlay", o.overlay, "theory model to compare against");

    auto* compare = app.add_subcommand("compare", "deviation between two D_b curves");
    compare->add_option("curve_a", o.curve_a, "dimension CSV")->required();
    compare->add_option("curve_b", o.curve_b, "dimension CSV")->required();
    compare->add_option("--tol", o.tol, "maximum allowed deviation")->capture_default_str();
    compare->add_option("--r-min", o.r_min, "lower r/s̄ limit");
    compare->add_option("--r-max", o.r_max, "upper r/s̄ limit");

    auto* crossing = app.add_subcommand("crossing", "where two theory curves intersect");
    crossing->add_option("--model-a", o.model_a)->required();
    crossing->add_option("--model-b", o.model_b)->required();
    crossing->add_option("--bracket", o.bracket, "r/s̄ interval")->expected(2)->capture_default_str();

    for (auto* sub : {theory, sample, analyze, compare, crossing}) sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (*theory) return cmd_theory(o, out);
        if (*sample) return cmd_sample(o, out);
        if (*analyze) return cmd_analyze(o, out);
        if (*compare) return cmd_compare(o, out);
        return cmd_crossing(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    }
}

}  // namespace specdim::cli
