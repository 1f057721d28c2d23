#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "specdim/spectrum.hpp"
#include "specdim/theory.hpp"

namespace specdim {

struct SlopeConfig {
    std::size_t window = 5;               // odd, >= 3
    std::size_t points_per_decade = 48;
    double r_min_over_sbar = 0.02;
    double r_max_over_sbar = 5.0;

    void validate() const;
};

/// Grid {10^(k/ppd)} restricted to [lo, hi]. Anchored on powers of ten so
/// that r/s̄ = 1 is always a node when the range covers it.
std::vector<double> log_grid(double lo, double hi, std::size_t points_per_decade);

/// Number of r-mesh boxes [e_min + k r, e_min + (k+1) r) holding at least one
/// level, k < ceil(L/r). The last box is closed so e_max is covered.
std::size_t count_boxes(const Spectrum& spectrum, double r);

struct BoxCountPoint {
    double r;
    std::size_t n_boxes;
};

struct BoxCountCurve {
    std::vector<BoxCountPoint> points;
    std::string spectrum_id;
    double sbar = 1.0;

    bool is_non_increasing() const;
};

BoxCountCurve count_curve(const Spectrum& spectrum, const SlopeConfig& cfg = {});

/// Negated least-squares slope of ln N against ln r over a sliding window,
/// centred where possible and shifted inwards at the ends.
DimensionCurve local_slope_curve(const BoxCountCurve& curve, const SlopeConfig& cfg = {});

/// 1 - (r/L) N(r), clamped to [0, 1].
double empirical_gap_probability(const Spectrum& spectrum, double r);

/// CSV: header `r,n_boxes,r_over_sbar,ln_r_over_sbar,ln_n`, 17 significant digits.
void write_csv(std::ostream& out, const BoxCountCurve& curve);

}  // namespace specdim
