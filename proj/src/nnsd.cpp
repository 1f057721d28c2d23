#include "specdim/nnsd.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "specdim/error.hpp"
#include "specdim/special.hpp"
#include "specdim/spectrum.hpp"
#include "text_util.hpp"

namespace specdim {

namespace {

using std::numbers::pi;

// Unit-mean surmise constants: P(x) = A x^β exp(-c x²).
constexpr double kGoeA = pi / 2.0;
constexpr double kGoeC = pi / 4.0;
constexpr double kGueA = 32.0 / (pi * pi);
constexpr double kGueC = 4.0 / pi;
constexpr double kGseA = 262144.0 / (729.0 * pi * pi * pi);  // 2^18 / (3^6 π^3)
constexpr double kGseC = 64.0 / (9.0 * pi);

double unit_density(SpacingKind kind, double x) {
    switch (kind) {
        case SpacingKind::Poisson: return std::exp(-x);
        case SpacingKind::WignerGOE: return kGoeA * x * std::exp(-kGoeC * x * x);
        case SpacingKind::WignerGUE: return kGueA * x * x * std::exp(-kGueC * x * x);
        case SpacingKind::WignerGSE: {
            const double x2 = x * x;
            return kGseA * x2 * x2 * std::exp(-kGseC * x2);
        }
        default: break;
    }
    fail(ErrorKind::InvalidArgument, "no unit density for this kind");
}

double unit_survival(SpacingKind kind, double x) {
    switch (kind) {
        case SpacingKind::Poisson: return std::exp(-x);
        case SpacingKind::WignerGOE: return std::exp(-kGoeC * x * x);
        case SpacingKind::WignerGUE:
            return erf_erfc(2.0 * x / std::sqrt(pi)).erfc + (4.0 / pi) * x * std::exp(-kGueC * x * x);
        case SpacingKind::WignerGSE: {
            const double poly = 16.0 / (3.0 * pi) * x + 2048.0 / (81.0 * pi * pi) * x * x * x;
            return erf_erfc(8.0 * x / (3.0 * std::sqrt(pi))).erfc + poly * std::exp(-kGseC * x * x);
        }
        case SpacingKind::EqualSpacing: return x < 1.0 ? 1.0 : 0.0;
        default: break;
    }
    fail(ErrorKind::InvalidArgument, "no unit survival for this kind");
}

void check_mean(double sbar) {
    require(std::isfinite(sbar) && sbar > 0.0, "mean spacing must be positive and finite");
}

}  // namespace

std::string to_string(SpacingKind kind) {
    switch (kind) {
        case SpacingKind::Poisson: return "poisson";
        case SpacingKind::WignerGOE: return "goe";
        case SpacingKind::WignerGUE: return "gue";
        case SpacingKind::WignerGSE: return "gse";
        case SpacingKind::EqualSpacing: return "equal";
        case SpacingKind::Tabulated: return "tabulated";
    }
    return "unknown";
}

SpacingModel SpacingModel::builtin(SpacingKind kind, double mean_spacing) {
    require(kind != SpacingKind::Tabulated, "tabulated models need a table");
    check_mean(mean_spacing);
    return SpacingModel(kind, mean_spacing);
}

SpacingModel SpacingModel::poisson(double m) { return builtin(SpacingKind::Poisson, m); }
SpacingModel SpacingModel::wigner_goe(double m) { return builtin(SpacingKind::WignerGOE, m); }
SpacingModel SpacingModel::wigner_gue(double m) { return builtin(SpacingKind::WignerGUE, m); }
SpacingModel SpacingModel::wigner_gse(double m) { return builtin(SpacingKind::WignerGSE, m); }
SpacingModel SpacingModel::equal_spacing(double m) { return builtin(SpacingKind::EqualSpacing, m); }

SpacingModel SpacingModel::tabulated(std::vector<TableRow> table, std::optional<double> mean) {
    if (table.size() < 2) fail(ErrorKind::InputData, "spacing table needs at least two rows");
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& row = table[i];
        if (!std::isfinite(row.s) || !std::isfinite(row.density))
            fail(ErrorKind::InputData, "spacing table has a non-finite entry");
        if (row.density < 0.0)
            fail(ErrorKind::InputData, "cannot invert CDF: negative density in spacing table");
        if (i == 0 && row.s < 0.0) fail(ErrorKind::InputData, "spacing table starts below 0");
        if (i > 0 && !(row.s > table[i - 1].s))
            fail(ErrorKind::InputData, "spacing table must have strictly ascending s");
    }

    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < table.size(); ++i)
        mass += table[i].density * (table[i + 1].s - table[i].s);
    if (!(mass > 0.0)) fail(ErrorKind::InputData, "cannot invert CDF: spacing table has zero mass");

    SpacingModel model(SpacingKind::Tabulated, 1.0);
    for (auto& row : table) row.density /= mass;
    model.cumulative_.resize(table.size());
    model.cumulative_[0] = 0.0;
    for (std::size_t i = 0; i + 1 < table.size(); ++i)
        model.cumulative_[i + 1] =
            model.cumulative_[i] + table[i].density * (table[i + 1].s - table[i].s);
    model.table_ = std::move(table);
    model.sbar_ = mean.value_or(model.table_mean());
    check_mean(model.sbar_);
    return model;
}

int SpacingModel::beta() const {
    switch (kind_) {
        case SpacingKind::Poisson: return 0;
        case SpacingKind::WignerGOE: return 1;
        case SpacingKind::WignerGUE: return 2;
        case SpacingKind::WignerGSE: return 4;
        default: break;
    }
    fail(ErrorKind::InvalidArgument, "beta is defined for Poisson and the Wigner surmises only");
}

std::string SpacingModel::name() const { return to_string(kind_); }

double SpacingModel::table_mean() const {
    require(kind_ == SpacingKind::Tabulated, "table_mean on a non-tabulated model");
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < table_.size(); ++i) {
        const double a = table_[i].s, b = table_[i + 1].s;
        m += table_[i].density * 0.5 * (b * b - a * a);
    }
    return m;
}

double SpacingModel::density(double s) const {
    require(s >= 0.0, "density needs s >= 0");
    switch (kind_) {
        case SpacingKind::EqualSpacing:
            fail(ErrorKind::PointMass, "density undefined (point mass)");
        case SpacingKind::Tabulated: {
            if (s < table_.front().s || s > table_.back().s)
                fail(ErrorKind::Extrapolation, "s outside tabulated range");
            auto it = std::upper_bound(table_.begin(), table_.end(), s,
                                       [](double v, const TableRow& r) { return v < r.s; });
            auto idx = static_cast<std::size_t>(it - table_.begin());
            idx = std::min(idx, table_.size() - 1);  // s == last node: last cell
            return table_[idx - 1 + (idx == 0)].density;
        }
        default: return unit_density(kind_, s / sbar_) / sbar_;
    }
}

double SpacingModel::cdf(double x) const {
    require(x >= 0.0, "cdf needs x >= 0");
    switch (kind_) {
        case SpacingKind::Poisson: return -std::expm1(-x / sbar_);
        case SpacingKind::WignerGOE: {
            const double u = x / sbar_;
            return -std::expm1(-kGoeC * u * u);
        }
        case SpacingKind::EqualSpacing: return x < sbar_ ? 0.0 : 1.0;
        case SpacingKind::Tabulated: {
            if (x <= table_.front().s) return 0.0;
            if (x >= table_.back().s) return 1.0;
            auto it = std::upper_bound(table_.begin(), table_.end(), x,
                                       [](double v, const TableRow& r) { return v < r.s; });
            const auto i = static_cast<std::size_t>(it - table_.begin()) - 1;
            return std::min(1.0, cumulative_[i] + table_[i].density * (x - table_[i].s));
        }
        default: return 1.0 - unit_survival(kind_, x / sbar_);
    }
}

double SpacingModel::survival(double x) const {
    require(x >= 0.0, "survival needs x >= 0");
    if (kind_ == SpacingKind::Tabulated) return 1.0 - cdf(x);
    return unit_survival(kind_, x / sbar_);
}

std::vector<double> sample_spacings(const SpacingModel& model, std::size_t n, RngSeed seed) {
    require(n >= 1, "sample_spacings needs n >= 1");
    Rng rng(seed);
    std::vector<double> out(n);
    const double sbar = model.mean_spacing();

    // Surmises are scaled χ_{β+1} variables: s = s̄ c_β √(Σ z²).
    auto chi = [&](int dof, double scale) {
        for (auto& s : out) {
            double sum = 0.0;
            for (int k = 0; k < dof; ++k) {
                const double z = rng.normal();
                sum += z * z;
            }
            s = sbar * scale * std::sqrt(sum);
        }
    };

    switch (model.kind()) {
        case SpacingKind::Poisson:
            for (auto& s : out) s = -sbar * std::log(rng.uniform());
            break;
        case SpacingKind::WignerGOE: chi(2, std::sqrt(2.0 / pi)); break;
        case SpacingKind::WignerGUE: chi(3, std::sqrt(pi / 8.0)); break;
        case SpacingKind::WignerGSE: chi(5, std::sqrt(9.0 * pi / 128.0)); break;
        case SpacingKind::EqualSpacing: std::fill(out.begin(), out.end(), sbar); break;
        case SpacingKind::Tabulated: {
            const auto table = model.table();
            std::vector<double> node_cdf;
            node_cdf.reserve(table.size());
            for (const auto& row : table) node_cdf.push_back(model.cdf(row.s));
            for (auto& s : out) {
                const double u = rng.uniform();
                // Cell i with Ψ_i <= u < Ψ_{i+1} has positive density.
                auto it = std::upper_bound(node_cdf.begin(), node_cdf.end(), u);
                if (it == node_cdf.end()) {
                    s = table.back().s;
                    continue;
                }
                const auto i = static_cast<std::size_t>(it - node_cdf.begin()) - 1;
                s = std::min(table[i].s + (u - node_cdf[i]) / table[i].density, table[i + 1].s);
            }
            break;
        }
    }
    return out;
}

SpacingModel empirical_nnsd(const Spectrum& spectrum, std::size_t bins) {
    if (spectrum.size() < 2) fail(ErrorKind::InputData, "no spacings");
    require(bins >= 4, "empirical_nnsd needs at least 4 bins");
    const auto gaps = spectrum.spacings();
    const double top = *std::max_element(gaps.begin(), gaps.end());
    const double width = top / static_cast<double>(bins);

    std::vector<double> counts(bins, 0.0);
    double sum = 0.0;
    for (double g : gaps) {
        auto k = static_cast<std::size_t>(g / width);
        counts[std::min(k, bins - 1)] += 1.0;
        sum += g;
    }
    const double total = static_cast<double>(gaps.size());
    std::vector<TableRow> rows;
    rows.reserve(bins + 1);
    for (std::size_t k = 0; k < bins; ++k)
        rows.push_back({static_cast<double>(k) * width, counts[k] / (total * width)});
    rows.push_back({top, 0.0});
    return SpacingModel::tabulated(std::move(rows), sum / total);
}

SpacingModel load_tabulated(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InputData, "cannot open spacing table " + path.string());
    std::vector<TableRow> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::strip_comment(line);
        if (body.empty()) continue;
        std::istringstream fields{std::string(body)};
        TableRow row{};
        std::string extra;
        if (!(fields >> row.s >> row.density) || (fields >> extra))
            fail(ErrorKind::InputData, path.string() + ":" + std::to_string(lineno) +
                                           ": expected two numbers `s P(s)`");
        rows.push_back(row);
    }
    return SpacingModel::tabulated(std::move(rows));
}

}  // namespace specdim
