#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specdim/rng.hpp"

namespace specdim {

class Spectrum;

enum class SpacingKind { Poisson, WignerGOE, WignerGUE, WignerGSE, EqualSpacing, Tabulated };

std::string to_string(SpacingKind kind);

struct TableRow {
    double s;
    double density;
};

/// A nearest-neighbour spacing distribution P(s) with mean spacing s̄.
///
/// The Wigner surmises are parameterised by the level-repulsion exponent
/// beta (1, 2, 4); Poisson is the beta = 0 member in the sense that
/// P(s) ~ s^beta near the origin.
///
/// Tabulated models are histogram-like: row i carries the density on the
/// cell [s_i, s_{i+1}); the last row only closes the final cell. The CDF is
/// the exact (piecewise linear) integral of that density and is 1 beyond
/// the last node. Densities are renormalised to unit mass on construction.
class SpacingModel {
public:
    static SpacingModel poisson(double mean_spacing = 1.0);
    static SpacingModel wigner_goe(double mean_spacing = 1.0);
    static SpacingModel wigner_gue(double mean_spacing = 1.0);
    static SpacingModel wigner_gse(double mean_spacing = 1.0);
    static SpacingModel equal_spacing(double mean_spacing = 1.0);
    static SpacingModel builtin(SpacingKind kind, double mean_spacing = 1.0);
    /// Without `mean_spacing` the mean is taken from the table itself.
    static SpacingModel tabulated(std::vector<TableRow> table,
                                  std::optional<double> mean_spacing = std::nullopt);

    SpacingKind kind() const { return kind_; }
    double mean_spacing() const { return sbar_; }
    bool is_builtin() const { return kind_ != SpacingKind::Tabulated; }
    /// Repulsion exponent: 0 Poisson, 1/2/4 for the surmises. Built-in
    /// continuous models only.
    int beta() const;
    std::string name() const;

    /// Normalised table (empty unless Tabulated).
    std::span<const TableRow> table() const { return table_; }
    /// Mean of the normalised table density (Tabulated only).
    double table_mean() const;

    double density(double s) const;
    /// Ψ(x) = ∫₀ˣ P(s) ds.
    double cdf(double x) const;
    /// F(x) = 1 - Ψ(x), computed without cancellation for built-ins.
    double survival(double x) const;

private:
    SpacingModel(SpacingKind kind, double sbar) : kind_(kind), sbar_(sbar) {}

    SpacingKind kind_;
    double sbar_;
    std::vector<TableRow> table_;
    std::vector<double> cumulative_;  // Ψ at each table node
};

/// n i.i.d. draws from the model. Deterministic in `seed`.
std::vector<double> sample_spacings(const SpacingModel& model, std::size_t n, RngSeed seed);

/// Histogram NNSD of the spectrum's consecutive differences: `bins` uniform
/// cells over [0, max spacing], unit mass, mean set to the sample mean.
SpacingModel empirical_nnsd(const Spectrum& spectrum, std::size_t bins = 50);

/// Two-column `s P(s)` text file, ascending s, `#` comments.
SpacingModel load_tabulated(const std::filesystem::path& path);

}  // namespace specdim
