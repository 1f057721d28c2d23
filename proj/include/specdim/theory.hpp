#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specdim/nnsd.hpp"
#include "specdim/special.hpp"

namespace specdim {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t max_subdivisions = 200;
    /// Tail truncation: integrate densities only up to T with survival(T) below this.
    double tail_survival = 1e-16;

    void validate() const;
    /// Smallest T on a doubling ladder with survival(T) < tail_survival
    /// (built-ins), or the last table node (Tabulated).
    double tail_cut(const SpacingModel& model) const;
};

/// Below this r/s̄ the transform switches to the small-scale series.
inline constexpr double kSmallScaleGuard = 1e-4;

enum class CurveSource { ClosedForm, Transform, BoxCounting };

std::string to_string(CurveSource source);
CurveSource curve_source_from_string(const std::string& text);

struct DimensionPoint {
    double r_over_sbar;
    double d_b;
    /// Set where the curve jumps (equal spacing at r = s̄); d_b is the left limit there.
    bool discontinuous = false;
};

/// Local box-counting dimension sampled against r/s̄.
///
/// r/s̄ must be strictly increasing. ClosedForm and Transform curves are
/// held to [0, 1]; box-counting estimates may stray slightly outside.
class DimensionCurve {
public:
    DimensionCurve(std::vector<DimensionPoint> points, CurveSource source, std::string id);

    std::span<const DimensionPoint> points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const DimensionPoint& operator[](std::size_t i) const { return points_[i]; }
    CurveSource source() const { return source_; }
    const std::string& id() const { return id_; }

    /// Linear interpolation in ln(r/s̄); requires r/s̄ inside the sampled range.
    double interpolate(double r_over_sbar) const;

private:
    std::vector<DimensionPoint> points_;
    CurveSource source_;
    std::string id_;
};

/// E(r): probability that an interval of length r holds no level.
/// Analytic antiderivatives for built-ins, quadrature for tables.
double gap_probability(const SpacingModel& model, double r, const QuadratureConfig& q = {});

/// ∫₀ʳ F(x) dx evaluated purely by quadrature of the density P(s):
/// ∫₀ʳ F = ∫₀ʳ s P(s) ds + r F(r), with F(r) = ∫ᵣ^T P(s) ds.
double integrated_survival(const SpacingModel& model, double r, const QuadratureConfig& q = {});

/// D_b(r) = 1 - r F(r) / ∫₀ʳ F(x) dx with every integral taken by
/// quadrature of the density. Rejects EqualSpacing (point mass).
double dimension_transform(const SpacingModel& model, double r, const QuadratureConfig& q = {});

/// Leading behaviour of D_b at small x = r/s̄ for the built-in continuous
/// models: A x^(β+1)/(β+2) where P(s) ≈ A s^β.
double small_scale_series(SpacingKind kind, double x);

double closed_form_poisson(double r, double sbar);
double closed_form_goe(double r, double sbar);
double closed_form_gue(double r, double sbar);
double closed_form_gse(double r, double sbar);

struct StepValue {
    double value;
    bool discontinuous;
};
/// 0 below s̄, 1 above; left limit 0 (flagged) at r = s̄.
StepValue closed_form_equal_spacing(double r, double sbar);

/// Closed form for any built-in model (equal spacing returns the left limit).
double closed_form(const SpacingModel& model, double r);

/// Closed form for built-ins, transform for tabulated models.
double theory_dimension(const SpacingModel& model, double r, const QuadratureConfig& q = {});

enum class CurveMethod { ClosedForm, Transform };

/// Evaluates the model at r = x·s̄ for every x in `r_over_sbar` (strictly
/// increasing, positive).
DimensionCurve curve(const SpacingModel& model, std::span<const double> r_over_sbar,
                     CurveMethod method, const QuadratureConfig& q = {});

/// Root of D_a(r) - D_b(r) inside [r_lo, r_hi] by bisection to 1e-10 in r.
double find_crossing(const SpacingModel& a, const SpacingModel& b, double r_lo, double r_hi,
                     const QuadratureConfig& q = {});

/// CSV: header `r_over_sbar,d_b,source`, 17 significant digits.
void write_csv(std::ostream& out, const DimensionCurve& curve);
DimensionCurve read_dimension_csv(std::istream& in, std::string id = {});

}  // namespace specdim
