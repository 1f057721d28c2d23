#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace specdim {

struct RngSeed {
    std::uint64_t value = 0;
};

// Seeded generator with its own uniform/normal transforms so that sample
// streams do not depend on the standard library's distribution objects.
// Not shared between calls: every sampling operation builds its own.
class Rng {
public:
    explicit Rng(RngSeed seed) : engine_(seed.value) {}

    /// Uniform on the open interval (0, 1), 53 random bits.
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via the Marsaglia polar method.
    double normal();

    /// Gamma(shape, 1) via Marsaglia-Tsang; shape > 0.
    double gamma(double shape);

    /// χ variable with `dof` degrees of freedom (dof > 0, need not be integer).
    double chi(double dof) { return std::sqrt(2.0 * gamma(0.5 * dof)); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace specdim
