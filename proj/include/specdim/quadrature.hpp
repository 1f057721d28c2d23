#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "specdim/error.hpp"

namespace specdim {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t intervals = 0;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair (QUADPACK dqk15 constants).
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod15(const F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    double abs_sum = std::abs(kronrod);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        fv1[j] = f(centre - dx);
        fv2[j] = f(centre + dx);
        kronrod += kKronrodWeights[j] * (fv1[j] + fv2[j]);
        abs_sum += kKronrodWeights[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (fv1[j] + fv2[j]);
    }
    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        asc += kKronrodWeights[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

    const double h = std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    asc *= h;
    abs_sum *= h;
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * abs_sum, err);
    return {a, b, kronrod * half, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b] with the
/// pieces split at `breaks` first (kinks and discontinuities of f belong
/// there). Stops once the summed error estimate is at most
/// max(abs_tol, rel_tol * |I|). Throws ConvergenceError when the segment
/// budget runs out first.
template <class F>
QuadratureResult integrate(const F& f, double a, double b, double abs_tol, double rel_tol,
                           std::size_t max_subdivisions, std::span<const double> breaks = {}) {
    require(abs_tol > 0.0 && rel_tol > 0.0, "quadrature tolerances must be positive");
    require(max_subdivisions >= 1, "quadrature needs at least one subdivision");
    if (a == b) return {};
    if (b < a) {
        auto r = integrate(f, b, a, abs_tol, rel_tol, max_subdivisions, breaks);
        r.value = -r.value;
        return r;
    }

    std::vector<double> edges{a};
    for (double x : breaks)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<detail::Segment> heap;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto seg = detail::gauss_kronrod15(f, edges[i], edges[i + 1]);
        total += seg.value;
        total_err += seg.error;
        heap.push(seg);
    }

    while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (heap.size() >= std::max(max_subdivisions, edges.size() - 1)) {
            throw ConvergenceError("quadrature did not converge within " +
                                       std::to_string(max_subdivisions) + " subdivisions",
                                   total_err);
        }
        const auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw ConvergenceError("quadrature interval underflow", total_err);
        }
        auto left = detail::gauss_kronrod15(f, worst.a, mid);
        auto right = detail::gauss_kronrod15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed the drift from incremental updates.
    QuadratureResult out;
    out.intervals = heap.size();
    std::vector<detail::Segment> segs;
    segs.reserve(heap.size());
    while (!heap.empty()) {
        segs.push_back(heap.top());
        heap.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    for (const auto& s : segs) {
        out.value += s.value;
        out.error += s.error;
    }
    return out;
}

}  // namespace specdim
