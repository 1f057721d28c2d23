#include "specdim/boxcount.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "specdim/error.hpp"
#include "text_util.hpp"

namespace specdim {

void SlopeConfig::validate() const {
    require(window >= 3 && window % 2 == 1, "slope window must be odd and at least 3");
    require(points_per_decade >= 1, "points per decade must be positive");
    require(r_min_over_sbar > 0.0 && r_min_over_sbar < r_max_over_sbar,
            "grid bounds must satisfy 0 < r_min < r_max");
}

std::vector<double> log_grid(double lo, double hi, std::size_t points_per_decade) {
    require(lo > 0.0 && lo < hi, "log grid needs 0 < lo < hi");
    require(points_per_decade >= 1, "log grid needs at least one point per decade");
    const double ppd = static_cast<double>(points_per_decade);
    const auto k_lo = static_cast<long>(std::ceil(ppd * std::log10(lo) - 1e-9));
    const auto k_hi = static_cast<long>(std::floor(ppd * std::log10(hi) + 1e-9));
    std::vector<double> grid;
    for (long k = k_lo; k <= k_hi; ++k) {
        const double r = std::pow(10.0, static_cast<double>(k) / ppd);
        if (r >= lo * (1.0 - 1e-12) && r <= hi * (1.0 + 1e-12)) grid.push_back(r);
    }
    return grid;
}

std::size_t count_boxes(const Spectrum& spectrum, double r) {
    require(std::isfinite(r) && r > 0.0, "box size must be positive");
    const double origin = spectrum.e_min();
    // Boxes k = 0 .. ceil(L/r) - 1; the last one also takes e_max.
    const double last_box = std::max(0.0, std::ceil(spectrum.length() / r) - 1.0);
    std::size_t count = 0;
    double previous = -1.0;
    for (double x : spectrum.levels()) {
        const double k = std::min(std::floor((x - origin) / r), last_box);
        if (k != previous) {
            ++count;
            previous = k;
        }
    }
    return count;
}

bool BoxCountCurve::is_non_increasing() const {
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].n_boxes > points[i - 1].n_boxes) return false;
    return true;
}

BoxCountCurve count_curve(const Spectrum& spectrum, const SlopeConfig& cfg) {
    cfg.validate();
    require(spectrum.size() >= 2, "count_curve needs at least two levels");
    const double sbar = spectrum.mean_spacing();
    const auto grid = log_grid(cfg.r_min_over_sbar, cfg.r_max_over_sbar, cfg.points_per_decade);
    if (grid.size() < 2) fail(ErrorKind::InvalidArgument, "degenerate r grid (fewer than two points)");
    BoxCountCurve out;
    out.spectrum_id = spectrum.label();
    out.sbar = sbar;
    out.points.reserve(grid.size());
    for (double x : grid) {
        const double r = x * sbar;
        out.points.push_back({r, count_boxes(spectrum, r)});
    }
    return out;
}

namespace {

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y,
                           std::size_t begin, std::size_t end) {
    // Offsets from the first point keep a flat window exactly flat.
    const double m = static_cast<double>(end - begin);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        mx += x[i] - x[begin];
        my += y[i] - y[begin];
    }
    mx /= m;
    my /= m;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double dx = x[i] - x[begin] - mx;
        sxy += dx * (y[i] - y[begin] - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

}  // namespace

DimensionCurve local_slope_curve(const BoxCountCurve& curve, const SlopeConfig& cfg) {
    cfg.validate();
    const auto n = curve.points.size();
    require(n >= cfg.window, "box-count curve is shorter than the slope window");
    std::vector<double> ln_r(n), ln_n(n);
    for (std::size_t i = 0; i < n; ++i) {
        require(curve.points[i].n_boxes >= 1, "box counts must be positive");
        require(i == 0 || curve.points[i].r > curve.points[i - 1].r, "box sizes must increase");
        ln_r[i] = std::log(curve.points[i].r);
        ln_n[i] = std::log(static_cast<double>(curve.points[i].n_boxes));
    }
    const std::size_t half = cfg.window / 2;
    std::vector<DimensionPoint> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t begin = std::min(i > half ? i - half : 0, n - cfg.window);
        const double slope = least_squares_slope(ln_r, ln_n, begin, begin + cfg.window);
        points.push_back({curve.points[i].r / curve.sbar, slope == 0.0 ? 0.0 : -slope});
    }
    return DimensionCurve(std::move(points), CurveSource::BoxCounting, curve.spectrum_id);
}

double empirical_gap_probability(const Spectrum& spectrum, double r) {
    require(r > 0.0, "empirical_gap_probability needs r > 0");
    const double length = spectrum.length();
    if (!(length > 0.0)) return 0.0;
    const double occupied = r / length * static_cast<double>(count_boxes(spectrum, r));
    return std::clamp(1.0 - occupied, 0.0, 1.0);
}

void write_csv(std::ostream& out, const BoxCountCurve& curve) {
    out << "r,n_boxes,r_over_sbar,ln_r_over_sbar,ln_n\n";
    for (const auto& p : curve.points) {
        const double x = p.r / curve.sbar;
        out << detail::g17(p.r) << ',' << p.n_boxes << ',' << detail::g17(x) << ','
            << detail::g17(std::log(x)) << ',' << detail::g17(std::log(static_cast<double>(p.n_boxes)))
            << '\n';
    }
}

}  // namespace specdim
