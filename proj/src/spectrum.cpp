#include "specdim/spectrum.hpp"

#include <cmath>
#include <utility>

#include "specdim/error.hpp"

namespace specdim {

Spectrum::Spectrum(std::vector<double> levels, std::string label)
    : Spectrum(levels, levels.empty() ? 0.0 : levels.front(),
               levels.empty() ? 0.0 : levels.back(), std::move(label)) {}

Spectrum::Spectrum(std::vector<double> levels, double e_min, double e_max, std::string label)
    : levels_(std::move(levels)), e_min_(e_min), e_max_(e_max), label_(std::move(label)) {
    if (levels_.empty()) fail(ErrorKind::InputData, "spectrum has no levels");
    for (double x : levels_)
        if (!std::isfinite(x)) fail(ErrorKind::InputData, "spectrum contains a non-finite level");
    for (std::size_t i = 1; i < levels_.size(); ++i) {
        if (levels_[i] == levels_[i - 1])
            fail(ErrorKind::InputData, "duplicate level at index " + std::to_string(i));
        if (levels_[i] < levels_[i - 1])
            fail(ErrorKind::InputData, "levels not increasing at index " + std::to_string(i));
    }
    require(e_min_ <= levels_.front() && levels_.back() <= e_max_,
            "spectrum window must contain every level");
}

double Spectrum::mean_spacing() const {
    require(levels_.size() >= 2, "mean spacing needs at least two levels");
    return (levels_.back() - levels_.front()) / static_cast<double>(levels_.size() - 1);
}

std::vector<double> Spectrum::spacings() const {
    require(levels_.size() >= 2, "spacings need at least two levels");
    std::vector<double> out(levels_.size() - 1);
    for (std::size_t i = 0; i + 1 < levels_.size(); ++i) out[i] = levels_[i + 1] - levels_[i];
    return out;
}

Spectrum Spectrum::with_offset(std::string offset) const {
    Spectrum copy = *this;
    copy.offset_ = std::move(offset);
    return copy;
}

}  // namespace specdim
