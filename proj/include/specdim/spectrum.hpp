#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace specdim {

/// A finite, strictly increasing sequence of levels observed on the window
/// [e_min, e_max]. Immutable after construction.
class Spectrum {
public:
    /// Window defaults to [levels.front(), levels.back()].
    explicit Spectrum(std::vector<double> levels, std::string label = {});
    Spectrum(std::vector<double> levels, double e_min, double e_max, std::string label = {});

    std::span<const double> levels() const { return levels_; }
    std::size_t size() const { return levels_.size(); }
    double operator[](std::size_t i) const { return levels_[i]; }

    double e_min() const { return e_min_; }
    double e_max() const { return e_max_; }
    /// L = e_max - e_min.
    double length() const { return e_max_ - e_min_; }
    const std::string& label() const { return label_; }

    /// (last - first) / (n - 1). Requires n >= 2.
    double mean_spacing() const;
    /// Consecutive differences. Requires n >= 2.
    std::vector<double> spacings() const;

    /// Decimal text of the value subtracted from the raw data on ingestion;
    /// empty when nothing was subtracted.
    const std::string& offset() const { return offset_; }
    Spectrum with_offset(std::string offset) const;

private:
    std::vector<double> levels_;
    double e_min_ = 0.0;
    double e_max_ = 0.0;
    std::string label_;
    std::string offset_;
};

}  // namespace specdim
