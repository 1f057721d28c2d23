#include "specdim/theory.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

#include "specdim/error.hpp"
#include "specdim/quadrature.hpp"
#include "text_util.hpp"

namespace specdim {

namespace {

using std::numbers::pi;

const double kSqrtPi = std::sqrt(pi);

// Pieces of the transform, both by quadrature of P(s):
//   moment   = ∫₀ʳ s P(s) ds
//   survival = ∫ᵣ^T P(s) ds
// so that ∫₀ʳ F(x) dx = moment + r·survival.
struct TransformParts {
    double moment;
    double survival;
};

TransformParts transform_parts(const SpacingModel& model, double r, const QuadratureConfig& q) {
    if (model.kind() == SpacingKind::EqualSpacing)
        fail(ErrorKind::PointMass, "point-mass NNSD: use the equal-spacing closed form");
    q.validate();
    const double tail = q.tail_cut(model);
    std::vector<double> breaks;
    if (model.kind() == SpacingKind::Tabulated)
        for (const auto& row : model.table()) breaks.push_back(row.s);

    auto density = [&](double s) {
        if (model.kind() == SpacingKind::Tabulated && (s < model.table().front().s || s > tail))
            return 0.0;
        return model.density(s);
    };
    auto weighted = [&](double s) { return s * density(s); };

    const double upper = std::min(r, tail);
    TransformParts parts{};
    parts.moment = integrate(weighted, 0.0, upper, q.abs_tol, q.rel_tol, q.max_subdivisions, breaks).value;
    parts.survival = r < tail
        ? integrate(density, r, tail, q.abs_tol, q.rel_tol, q.max_subdivisions, breaks).value
        : 0.0;
    return parts;
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

void QuadratureConfig::validate() const {
    require(abs_tol > 0.0 && rel_tol > 0.0, "quadrature tolerances must be positive");
    require(max_subdivisions >= 1, "max_subdivisions must be positive");
    require(tail_survival > 0.0 && tail_survival < 1.0, "tail_survival must lie in (0, 1)");
}

double QuadratureConfig::tail_cut(const SpacingModel& model) const {
    if (model.kind() == SpacingKind::Tabulated) return model.table().back().s;
    if (model.kind() == SpacingKind::EqualSpacing) return 2.0 * model.mean_spacing();
    double t = model.mean_spacing();
    while (model.survival(t) >= tail_survival) t *= 2.0;
    return t;
}

std::string to_string(CurveSource source) {
    switch (source) {
        case CurveSource::ClosedForm: return "ClosedForm";
        case CurveSource::Transform: return "Transform";
        case CurveSource::BoxCounting: return "BoxCounting";
    }
    return "unknown";
}

CurveSource curve_source_from_string(const std::string& text) {
    if (text == "ClosedForm") return CurveSource::ClosedForm;
    if (text == "Transform") return CurveSource::Transform;
    if (text == "BoxCounting") return CurveSource::BoxCounting;
    fail(ErrorKind::InputData, "unknown curve source '" + text + "'");
}

DimensionCurve::DimensionCurve(std::vector<DimensionPoint> points, CurveSource source, std::string id)
    : points_(std::move(points)), source_(source), id_(std::move(id)) {
    require(!points_.empty(), "dimension curve needs at least one point");
    const bool theoretical = source_ != CurveSource::BoxCounting;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        require(std::isfinite(p.r_over_sbar) && p.r_over_sbar > 0.0, "r/s̄ must be positive");
        require(i == 0 || p.r_over_sbar > points_[i - 1].r_over_sbar, "r/s̄ must be strictly increasing");
        require(std::isfinite(p.d_b), "D_b must be finite");
        if (theoretical)
            require(p.d_b >= 0.0 && p.d_b <= 1.0, "theoretical D_b outside [0, 1]");
    }
}

double DimensionCurve::interpolate(double x) const {
    const auto& first = points_.front();
    const auto& last = points_.back();
    require(x >= first.r_over_sbar && x <= last.r_over_sbar, "interpolation outside the curve's range");
    auto it = std::lower_bound(points_.begin(), points_.end(), x,
                               [](const DimensionPoint& p, double v) { return p.r_over_sbar < v; });
    if (it->r_over_sbar == x) return it->d_b;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double t = std::log(x / lo.r_over_sbar) / std::log(hi.r_over_sbar / lo.r_over_sbar);
    return lo.d_b + t * (hi.d_b - lo.d_b);
}

double gap_probability(const SpacingModel& model, double r, const QuadratureConfig& q) {
    require(r >= 0.0, "gap_probability needs r >= 0");
    if (r == 0.0) return 1.0;
    const double x = r / model.mean_spacing();
    switch (model.kind()) {
        case SpacingKind::Poisson: return std::exp(-x);
        case SpacingKind::WignerGOE: return erf_erfc(0.5 * kSqrtPi * x).erfc;
        case SpacingKind::WignerGUE: {
            const double e = std::exp(-4.0 / pi * x * x) - x * erf_erfc(2.0 * x / kSqrtPi).erfc;
            return clamp_unit(e);
        }
        case SpacingKind::WignerGSE: {
            const double c = 64.0 / (9.0 * pi);
            const double e = (1.0 + 16.0 / (9.0 * pi) * x * x) * std::exp(-c * x * x) -
                             x * erf_erfc(8.0 * x / (3.0 * kSqrtPi)).erfc;
            return clamp_unit(e);
        }
        case SpacingKind::EqualSpacing: return std::max(0.0, 1.0 - x);
        case SpacingKind::Tabulated:
            return clamp_unit(1.0 - integrated_survival(model, r, q) / model.mean_spacing());
    }
    return 0.0;
}

double integrated_survival(const SpacingModel& model, double r, const QuadratureConfig& q) {
    require(r >= 0.0, "integrated_survival needs r >= 0");
    if (r == 0.0) return 0.0;
    if (model.kind() == SpacingKind::EqualSpacing) return std::min(r, model.mean_spacing());
    const auto parts = transform_parts(model, r, q);
    return parts.moment + r * parts.survival;
}

double small_scale_series(SpacingKind kind, double x) {
    switch (kind) {
        case SpacingKind::Poisson: {
            // 1 - x/(eˣ - 1)
            const double x2 = x * x;
            return x / 2.0 - x2 / 12.0 + x2 * x2 / 720.0;
        }
        case SpacingKind::WignerGOE: return pi / 6.0 * x * x;
        case SpacingKind::WignerGUE: return 8.0 / (pi * pi) * x * x * x;
        case SpacingKind::WignerGSE: {
            const double a = 262144.0 / (729.0 * pi * pi * pi);
            const double x2 = x * x;
            return a / 6.0 * x2 * x2 * x;
        }
        default: break;
    }
    fail(ErrorKind::InvalidArgument, "no small-scale series for " + to_string(kind));
}

double dimension_transform(const SpacingModel& model, double r, const QuadratureConfig& q) {
    require(r > 0.0, "dimension_transform needs r > 0");
    if (model.kind() == SpacingKind::EqualSpacing)
        fail(ErrorKind::PointMass, "point-mass NNSD: use the equal-spacing closed form");
    const double x = r / model.mean_spacing();
    if (model.is_builtin() && x < kSmallScaleGuard) return small_scale_series(model.kind(), x);
    const auto parts = transform_parts(model, r, q);
    // 1 - r F(r) / (moment + r F(r)), without the 1 - (≈1) cancellation.
    const double denom = parts.moment + r * parts.survival;
    if (!(denom > 0.0)) return 0.0;
    return clamp_unit(parts.moment / denom);
}

double closed_form_poisson(double r, double sbar) {
    require(r > 0.0 && sbar > 0.0, "closed form needs r > 0 and s̄ > 0");
    const double x = r / sbar;
    if (x < kSmallScaleGuard) return small_scale_series(SpacingKind::Poisson, x);
    return clamp_unit(1.0 - x * std::exp(-x) / -std::expm1(-x));
}

double closed_form_goe(double r, double sbar) {
    require(r > 0.0 && sbar > 0.0, "closed form needs r > 0 and s̄ > 0");
    const double x = r / sbar;
    if (x < kSmallScaleGuard) return small_scale_series(SpacingKind::WignerGOE, x);
    return clamp_unit(1.0 - x * std::exp(-pi / 4.0 * x * x) / erf_erfc(0.5 * kSqrtPi * x).erf);
}

double closed_form_gue(double r, double sbar) {
    require(r > 0.0 && sbar > 0.0, "closed form needs r > 0 and s̄ > 0");
    const double x = r / sbar;
    if (x < kSmallScaleGuard) return small_scale_series(SpacingKind::WignerGUE, x);
    const double g = std::exp(-4.0 / pi * x * x);
    const double ec = erf_erfc(2.0 / kSqrtPi * x).erfc;
    const double num = x * (ec + 4.0 / pi * x * g);
    const double den = -std::expm1(-4.0 / pi * x * x) + x * ec;
    return clamp_unit(1.0 - num / den);
}

double closed_form_gse(double r, double sbar) {
    require(r > 0.0 && sbar > 0.0, "closed form needs r > 0 and s̄ > 0");
    const double x = r / sbar;
    if (x < kSmallScaleGuard) return small_scale_series(SpacingKind::WignerGSE, x);
    const double c = 64.0 / (9.0 * pi);
    const double g = std::exp(-c * x * x);
    const double ec = erf_erfc(8.0 / (3.0 * kSqrtPi) * x).erfc;
    const double num = x * (ec + (16.0 / (3.0 * pi) * x + 2048.0 / (81.0 * pi * pi) * x * x * x) * g);
    const double den = -std::expm1(-c * x * x) - 16.0 / (9.0 * pi) * x * x * g + x * ec;
    return clamp_unit(1.0 - num / den);
}

StepValue closed_form_equal_spacing(double r, double sbar) {
    require(r > 0.0 && sbar > 0.0, "closed form needs r > 0 and s̄ > 0");
    if (r < sbar) return {0.0, false};
    if (r == sbar) return {0.0, true};
    return {1.0, false};
}

double closed_form(const SpacingModel& model, double r) {
    const double sbar = model.mean_spacing();
    switch (model.kind()) {
        case SpacingKind::Poisson: return closed_form_poisson(r, sbar);
        case SpacingKind::WignerGOE: return closed_form_goe(r, sbar);
        case SpacingKind::WignerGUE: return closed_form_gue(r, sbar);
        case SpacingKind::WignerGSE: return closed_form_gse(r, sbar);
        case SpacingKind::EqualSpacing: return closed_form_equal_spacing(r, sbar).value;
        case SpacingKind::Tabulated: break;
    }
    fail(ErrorKind::InvalidArgument, "tabulated models have no closed form");
}

double theory_dimension(const SpacingModel& model, double r, const QuadratureConfig& q) {
    return model.is_builtin() ? closed_form(model, r) : dimension_transform(model, r, q);
}

DimensionCurve curve(const SpacingModel& model, std::span<const double> grid, CurveMethod method,
                     const QuadratureConfig& q) {
    require(!grid.empty(), "empty r grid");
    std::vector<DimensionPoint> points;
    points.reserve(grid.size());
    const double sbar = model.mean_spacing();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        require(x > 0.0 && (i == 0 || x > grid[i - 1]), "r grid must be positive and strictly increasing");
        const double r = x * sbar;
        try {
            if (method == CurveMethod::ClosedForm) {
                if (model.kind() == SpacingKind::EqualSpacing) {
                    const auto step = closed_form_equal_spacing(r, sbar);
                    points.push_back({x, step.value, step.discontinuous});
                } else {
                    points.push_back({x, closed_form(model, r)});
                }
            } else {
                points.push_back({x, dimension_transform(model, r, q)});
            }
        } catch (const ConvergenceError& e) {
            throw ConvergenceError(std::string(e.what()) + " at r/s̄ = " + detail::g17(x),
                                   e.achieved_error());
        } catch (const Error& e) {
            throw Error(e.kind(), std::string(e.what()) + " at r/s̄ = " + detail::g17(x));
        }
    }
    const auto source = method == CurveMethod::ClosedForm ? CurveSource::ClosedForm : CurveSource::Transform;
    return DimensionCurve(std::move(points), source, model.name());
}

double find_crossing(const SpacingModel& a, const SpacingModel& b, double r_lo, double r_hi,
                     const QuadratureConfig& q) {
    require(r_lo > 0.0 && r_lo < r_hi, "crossing bracket must satisfy 0 < r_lo < r_hi");
    auto diff = [&](double r) { return theory_dimension(a, r, q) - theory_dimension(b, r, q); };
    double f_lo = diff(r_lo);
    const double f_hi = diff(r_hi);
    if (f_lo == 0.0 && f_hi == 0.0)
        fail(ErrorKind::Bracketing, "curves coincide at both ends of the bracket");
    if (f_lo == 0.0) return r_lo;
    if (f_hi == 0.0) return r_hi;
    if ((f_lo < 0.0) == (f_hi < 0.0))
        fail(ErrorKind::Bracketing, "D_b difference does not change sign over the bracket");

    double lo = r_lo, hi = r_hi;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = diff(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void write_csv(std::ostream& out, const DimensionCurve& c) {
    out << "r_over_sbar,d_b,source\n";
    const auto source = to_string(c.source());
    for (const auto& p : c.points())
        out << detail::g17(p.r_over_sbar) << ',' << detail::g17(p.d_b) << ',' << source << '\n';
}

DimensionCurve read_dimension_csv(std::istream& in, std::string id) {
    std::string line;
    if (!std::getline(in, line) || detail::trim(line) != "r_over_sbar,d_b,source")
        fail(ErrorKind::InputData, "dimension CSV must start with header r_over_sbar,d_b,source");
    std::vector<DimensionPoint> points;
    std::optional<CurveSource> source;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::trim(line);
        if (body.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss{std::string(body)};
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
        if (fields.size() != 3)
            fail(ErrorKind::InputData, "line " + std::to_string(lineno) + ": expected 3 fields");
        DimensionPoint p{};
        try {
            std::size_t used = 0;
            p.r_over_sbar = std::stod(fields[0], &used);
            if (used != fields[0].size()) throw std::invalid_argument("trailing");
            p.d_b = std::stod(fields[1], &used);
            if (used != fields[1].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            fail(ErrorKind::InputData, "line " + std::to_string(lineno) + ": not a number");
        }
        const auto s = curve_source_from_string(fields[2]);
        if (source && *source != s)
            fail(ErrorKind::InputData, "line " + std::to_string(lineno) + ": mixed curve sources");
        source = s;
        points.push_back(p);
    }
    if (points.empty()) fail(ErrorKind::InputData, "dimension CSV has no rows");
    try {
        return DimensionCurve(std::move(points), *source, std::move(id));
    } catch (const Error& e) {
        fail(ErrorKind::InputData, std::string("invalid dimension curve: ") + e.what());
    }
}

}  // namespace specdim
