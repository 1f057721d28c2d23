#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "specdim/nnsd.hpp"
#include "specdim/rng.hpp"
#include "specdim/spectrum.hpp"

namespace specdim {

/// Levels are cumulative sums of i.i.d. spacings, starting at 0.
Spectrum renewal_spectrum(const SpacingModel& model, std::size_t n, RngSeed seed);

/// Symmetric tridiagonal matrix: diagonal[i], off_diagonal[i] couples i and i+1.
struct Tridiagonal {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;

    double trace() const;
};

/// β = 1 Hermite ensemble in tridiagonal form: diagonal N(0, 1),
/// off-diagonal χ_{n-k}/√2 for k = 1..n-1. Its eigenvalues are distributed
/// as those of an n×n GOE matrix with off-diagonal variance 1/2, whose
/// semicircle has radius √(2n).
Tridiagonal hermite_tridiagonal(std::size_t n, RngSeed seed);

/// All eigenvalues, ascending (LAPACK dsterf).
std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& m);

/// Number of eigenvalues strictly below x (Sturm sequence count).
std::size_t sturm_count(const Tridiagonal& m, double x);

Spectrum goe_spectrum(std::size_t n, RngSeed seed);

/// Expected number of GOE(n) eigenvalues below x: n times the integrated
/// semicircle on [-√(2n), √(2n)].
double semicircle_counting(double x, std::size_t n);

/// Maps every level through `counting`, drops floor(trim_fraction·n) levels
/// at each edge and rescales to unit mean spacing.
Spectrum unfold(const Spectrum& spectrum, const std::function<double(double)>& counting,
                double trim_fraction);

/// unfold() with the semicircle counting function of a GOE(n) spectrum,
/// n = spectrum.size(). A recorded offset is added back before mapping.
Spectrum unfold_semicircle(const Spectrum& spectrum, double trim_fraction = 0.05);

enum class Parity { Even, Odd };

/// Keeps the levels at even or odd indices; window shrinks to the survivors.
Spectrum decimate(const Spectrum& spectrum, Parity parity);

/// Affine map to first level 0 and mean spacing exactly 1.
Spectrum rescale_to_unit_mean(const Spectrum& spectrum);

/// One decimal real per line, `#` comments. Values are shifted by the
/// smallest one using exact decimal arithmetic, so ordinates of size ~1e21
/// keep their sub-unit digits.
Spectrum read_levels(std::istream& in, std::string label = {});
Spectrum ingest_levels(const std::filesystem::path& path);

/// Same format, 17 significant digits; offset recorded as a comment.
void write_levels(std::ostream& out, const Spectrum& spectrum);

}  // namespace specdim
