#pragma once

namespace specdim {

struct ErfPair {
    double erf;
    double erfc;
};

/// erf and erfc together. erfc is evaluated directly (not as 1 - erf), so
/// its relative accuracy holds far into the tail.
ErfPair erf_erfc(double z);

}  // namespace specdim
