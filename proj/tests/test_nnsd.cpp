#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "specdim/error.hpp"
#include "specdim/nnsd.hpp"
#include "specdim/spectra.hpp"
#include "specdim/spectrum.hpp"
#include "specdim/theory.hpp"
#include "support.hpp"

using namespace specdim;
using specdim::testing::ks_distance;
using specdim::testing::ks_two_sample;
using specdim::testing::simpson;

namespace {

std::vector<SpacingModel> continuous_builtins(double sbar = 1.0) {
    return {SpacingModel::poisson(sbar), SpacingModel::wigner_goe(sbar),
            SpacingModel::wigner_gue(sbar), SpacingModel::wigner_gse(sbar)};
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an exception");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("density at the documented points") {
    CHECK(SpacingModel::poisson().density(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(SpacingModel::wigner_goe().density(0.0) == 0.0);
    // (32/π²) e^(-4/π), evaluated with mpmath at 40 digits.
    CHECK(std::abs(SpacingModel::wigner_gue().density(1.0) - 0.90758921091668136) < 1e-14);
}

TEST_CASE("density error paths") {
    CHECK(kind_of([] { SpacingModel::equal_spacing().density(0.5); }) == ErrorKind::PointMass);
    auto table = SpacingModel::tabulated({{0.0, 1.0}, {1.0, 1.0}, {2.0, 0.0}});
    CHECK(kind_of([&] { table.density(2.5); }) == ErrorKind::Extrapolation);
    CHECK(kind_of([] { SpacingModel::poisson(0.0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { SpacingModel::tabulated({{0.0, 1.0}, {1.0, -0.5}, {2.0, 0.0}}); }) ==
          ErrorKind::InputData);
    CHECK(kind_of([] { SpacingModel::tabulated({{0.0, 1.0}, {0.0, 1.0}}); }) == ErrorKind::InputData);
}

TEST_CASE("cdf examples") {
    for (const auto& m : continuous_builtins()) CHECK(m.cdf(0.0) == 0.0);
    CHECK(SpacingModel::equal_spacing().cdf(0.0) == 0.0);

    const auto poisson = SpacingModel::poisson();
    CHECK(poisson.cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
    const double quad = simpson([&](double s) { return poisson.density(s); }, 0.0, 1.0);
    CHECK(std::abs(poisson.cdf(1.0) - quad) < 1e-12);
    CHECK(std::abs(poisson.cdf(1.0) - 0.63212055882855768) < 1e-15);

    const auto eq = SpacingModel::equal_spacing();
    CHECK(eq.cdf(0.999) == 0.0);
    CHECK(eq.cdf(1.001) == 1.0);
    CHECK(eq.survival(0.999) == 1.0);
}

TEST_CASE("cdf is non-decreasing for random pairs") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 8.0);
    auto models = continuous_builtins();
    models.push_back(SpacingModel::equal_spacing());
    for (const auto& m : models) {
        for (int i = 0; i < 1000; ++i) {
            double a = u(gen), b = u(gen);
            if (a > b) std::swap(a, b);
            CHECK(m.cdf(a) <= m.cdf(b));
        }
    }
}

TEST_CASE("quadrature of the density reproduces the cdf, unit mass and the mean") {
    QuadratureConfig q;
    for (const auto& m : continuous_builtins()) {
        const double tail = q.tail_cut(m);
        CHECK(m.survival(tail) < 1e-16);
        auto p = [&](double s) { return m.density(s); };
        for (double x : {0.1, 0.5, 1.0, 2.0, 4.0}) {
            INFO(m.name() << " x=" << x);
            CHECK(std::abs(simpson(p, 0.0, x) - m.cdf(x)) < 1e-8);
        }
        CHECK(std::abs(simpson(p, 0.0, tail, 200000) - 1.0) < 1e-9);
        const double mean = simpson([&](double s) { return s * m.density(s); }, 0.0, tail, 200000);
        CHECK(std::abs(mean - m.mean_spacing()) < 1e-9);
    }
}

TEST_CASE("scaling property") {
    const double sbar = 2.75;
    const auto unit = continuous_builtins(1.0);
    const auto scaled = continuous_builtins(sbar);
    for (std::size_t k = 0; k < unit.size(); ++k) {
        for (double s : {0.0, 0.1, 0.7, 1.3, 2.9, 6.0}) {
            CHECK(std::abs(scaled[k].density(s) - unit[k].density(s / sbar) / sbar) < 1e-12);
            CHECK(std::abs(scaled[k].cdf(s) - unit[k].cdf(s / sbar)) < 1e-12);
        }
    }
}

TEST_CASE("tabulated model is a normalised histogram") {
    // Unnormalised on purpose: mass 2.
    auto m = SpacingModel::tabulated({{0.0, 0.5}, {1.0, 1.5}, {2.0, 0.0}});
    CHECK(m.cdf(1.0) == doctest::Approx(0.25));
    CHECK(m.cdf(1.5) == doctest::Approx(0.625));
    CHECK(m.cdf(2.5) == 1.0);
    CHECK(m.density(0.5) == doctest::Approx(0.25));
    CHECK(m.density(2.0) == doctest::Approx(0.75));  // last node belongs to the last cell
    // Midpoint rule: nodes are never sampled, so each cell's value is used.
    double mass = 0.0;
    const int steps = 1000;
    for (int k = 0; k < steps; ++k) mass += m.density((k + 0.5) * 2.0 / steps) * 2.0 / steps;
    CHECK(std::abs(mass - 1.0) < 1e-9);
    // mean = 0.25·0.5 + 0.75·1.5
    CHECK(m.mean_spacing() == doctest::Approx(1.25));
    auto declared = SpacingModel::tabulated({{0.0, 1.0}, {2.0, 0.0}}, 0.9);
    CHECK(declared.mean_spacing() == 0.9);
    CHECK(declared.table_mean() == doctest::Approx(1.0));
}

TEST_CASE("load_tabulated reads two columns with comments") {
    const auto path = std::filesystem::temp_directory_path() / "specdim_table_test.txt";
    {
        std::ofstream f(path);
        f << "# s P(s)\n0 0\n0.5 1.0  # mid\n\n1.0 1.0\n1.5 0\n";
    }
    const auto m = load_tabulated(path);
    CHECK(m.kind() == SpacingKind::Tabulated);
    CHECK(m.table().size() == 4);
    CHECK(m.cdf(1.5) == 1.0);
    CHECK(m.mean_spacing() == doctest::Approx(1.0));  // uniform on [0.5, 1.5)
    {
        std::ofstream f(path);
        f << "0 1\n1 x\n";
    }
    CHECK(kind_of([&] { load_tabulated(path); }) == ErrorKind::InputData);
    std::filesystem::remove(path);
}

TEST_CASE("sample_spacings: degenerate and reproducible") {
    const auto eq = sample_spacings(SpacingModel::equal_spacing(2.0), 3, RngSeed{99});
    CHECK(eq == std::vector<double>{2.0, 2.0, 2.0});

    const auto a = sample_spacings(SpacingModel::wigner_goe(), 1000, RngSeed{5});
    const auto b = sample_spacings(SpacingModel::wigner_goe(), 1000, RngSeed{5});
    CHECK(a == b);
    CHECK_THROWS_AS(sample_spacings(SpacingModel::poisson(), 0, RngSeed{1}), Error);
}

TEST_CASE("Poisson sampler: mean and chi-square goodness of fit") {
    const std::size_t n = 100000;
    const auto xs = sample_spacings(SpacingModel::poisson(), n, RngSeed{2024});
    CHECK(std::abs(specdim::testing::mean(xs) - 1.0) < 0.02);

    // 20 equiprobable cells of Exp(1); 19 dof, 0.999 quantile = 43.820.
    std::vector<double> counts(20, 0.0);
    for (double x : xs) {
        const auto k = static_cast<std::size_t>(20.0 * (1.0 - std::exp(-x)));
        counts[std::min<std::size_t>(k, 19)] += 1.0;
    }
    double chi2 = 0.0;
    const double expected = static_cast<double>(n) / 20.0;
    for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 43.820);
}

TEST_CASE("Wigner samplers match their cdfs") {
    const std::size_t n = 100000;
    for (const auto& m : {SpacingModel::wigner_goe(), SpacingModel::wigner_gue(),
                          SpacingModel::wigner_gse()}) {
        const auto xs = sample_spacings(m, n, RngSeed{11});
        INFO(m.name());
        CHECK(ks_distance(xs, [&](double x) { return m.cdf(x); }) < 0.01);
        CHECK(std::abs(specdim::testing::mean(xs) - 1.0) < 0.01);
    }
}

TEST_CASE("different seeds give statistically equivalent streams") {
    // Two-sample KS at the 1e-3 level: c(α) √(2/n) = 1.949 √(2/10⁴).
    const double critical = 1.949 * std::sqrt(2.0 / 10000.0);
    for (const auto& m : continuous_builtins()) {
        const auto a = sample_spacings(m, 10000, RngSeed{1});
        const auto b = sample_spacings(m, 10000, RngSeed{2});
        CHECK(a != b);
        CHECK(ks_two_sample(a, b) < critical);
    }
}

TEST_CASE("tabulated sampler inverts the piecewise-linear cdf") {
    auto m = SpacingModel::tabulated({{0.0, 0.2}, {1.0, 1.0}, {1.5, 0.0}, {2.0, 0.6}, {3.0, 0.0}});
    const auto xs = sample_spacings(m, 50000, RngSeed{3});
    for (double x : xs) {
        CHECK(x >= 0.0);
        CHECK(x <= 3.0);
        CHECK(!(x > 1.5 && x < 2.0));  // zero-density cell
    }
    CHECK(ks_distance(xs, [&](double x) { return m.cdf(x); }) < 0.01);
}

TEST_CASE("empirical_nnsd") {
    const Spectrum equal({0.0, 1.0, 2.0, 3.0});
    const auto flat = empirical_nnsd(equal, 8);
    CHECK(flat.mean_spacing() == 1.0);
    std::size_t occupied = 0;
    for (std::size_t i = 0; i + 1 < flat.table().size(); ++i) occupied += flat.table()[i].density > 0.0;
    CHECK(occupied == 1);

    CHECK(kind_of([] { empirical_nnsd(Spectrum({1.0}), 10); }) == ErrorKind::InputData);
    CHECK(kind_of([&] { empirical_nnsd(equal, 3); }) == ErrorKind::InvalidArgument);

    for (const auto& model : {SpacingModel::poisson(), SpacingModel::wigner_goe()}) {
        const auto spectrum = renewal_spectrum(model, 100000, RngSeed{77});
        const auto table = empirical_nnsd(spectrum, 50);
        double sup = 0.0;
        for (double x = 0.0; x < 12.0; x += 0.001) sup = std::max(sup, std::abs(table.cdf(x) - model.cdf(x)));
        INFO(model.name());
        CHECK(sup < 0.01);
        CHECK(std::abs(table.mean_spacing() - spectrum.mean_spacing()) < 1e-9);
    }
}
