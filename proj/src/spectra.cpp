#include "specdim/spectra.hpp"

#include <lapacke.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>

#include "specdim/error.hpp"
#include "text_util.hpp"

namespace specdim {

Spectrum renewal_spectrum(const SpacingModel& model, std::size_t n, RngSeed seed) {
    require(n >= 2, "renewal_spectrum needs n >= 2");
    const auto gaps = sample_spacings(model, n - 1, seed);
    std::vector<double> levels(n);
    levels[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) levels[i] = levels[i - 1] + gaps[i - 1];
    const double last = levels.back();
    return Spectrum(std::move(levels), 0.0, last,
                    "renewal:" + model.name() + ":n=" + std::to_string(n) + ":seed=" +
                        std::to_string(seed.value));
}

double Tridiagonal::trace() const {
    return std::accumulate(diagonal.begin(), diagonal.end(), 0.0);
}

Tridiagonal hermite_tridiagonal(std::size_t n, RngSeed seed) {
    require(n >= 1, "hermite_tridiagonal needs n >= 1");
    Rng rng(seed);
    Tridiagonal m;
    m.diagonal.resize(n);
    m.off_diagonal.resize(n - 1);
    for (auto& d : m.diagonal) d = rng.normal();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t k = 1; k < n; ++k)
        m.off_diagonal[k - 1] = inv_sqrt2 * rng.chi(static_cast<double>(n - k));
    return m;
}

std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& m) {
    const auto n = m.diagonal.size();
    require(n >= 1 && m.off_diagonal.size() + 1 == n, "malformed tridiagonal matrix");
    std::vector<double> d = m.diagonal;
    std::vector<double> e = m.off_diagonal;
    e.push_back(0.0);  // dsterf wants room even though it reads n-1 entries
    const lapack_int info = LAPACKE_dsterf(static_cast<lapack_int>(n), d.data(), e.data());
    if (info > 0) {
        throw ConvergenceError("tridiagonal eigensolver (dsterf) failed: " + std::to_string(info) +
                                   " off-diagonal elements did not converge",
                               static_cast<double>(info));
    }
    if (info < 0) fail(ErrorKind::InvalidArgument, "dsterf rejected argument " + std::to_string(-info));
    return d;
}

std::size_t sturm_count(const Tridiagonal& m, double x) {
    const auto n = m.diagonal.size();
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double b2 = i == 0 ? 0.0 : m.off_diagonal[i - 1] * m.off_diagonal[i - 1];
        q = m.diagonal[i] - x - (i == 0 ? 0.0 : b2 / q);
        if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::abs(x) + 1.0);
        if (q < 0.0) ++count;
    }
    return count;
}

Spectrum goe_spectrum(std::size_t n, RngSeed seed) {
    require(n >= 2, "goe_spectrum needs n >= 2");
    auto eig = tridiagonal_eigenvalues(hermite_tridiagonal(n, seed));
    return Spectrum(std::move(eig),
                    "goe:n=" + std::to_string(n) + ":seed=" + std::to_string(seed.value));
}

double semicircle_counting(double x, std::size_t n) {
    const double radius = std::sqrt(2.0 * static_cast<double>(n));
    const double t = std::clamp(x / radius, -1.0, 1.0);
    return static_cast<double>(n) *
           (0.5 + (t * std::sqrt(1.0 - t * t) + std::asin(t)) / std::numbers::pi);
}

Spectrum unfold(const Spectrum& spectrum, const std::function<double(double)>& counting,
                double trim_fraction) {
    require(trim_fraction >= 0.0 && trim_fraction <= 0.25, "trim fraction must lie in [0, 0.25]");
    const auto n = spectrum.size();
    const auto cut = static_cast<std::size_t>(std::floor(trim_fraction * static_cast<double>(n)));
    if (2 * cut + 2 > n) fail(ErrorKind::InvalidArgument, "trimming leaves fewer than two levels");
    std::vector<double> mapped;
    mapped.reserve(n - 2 * cut);
    for (std::size_t i = cut; i < n - cut; ++i) mapped.push_back(counting(spectrum[i]));
    for (std::size_t i = 1; i < mapped.size(); ++i)
        if (!(mapped[i] > mapped[i - 1]))
            fail(ErrorKind::InputData, "counting function is not strictly increasing on the levels");
    return rescale_to_unit_mean(Spectrum(std::move(mapped), spectrum.label() + "|unfolded"));
}

Spectrum unfold_semicircle(const Spectrum& spectrum, double trim_fraction) {
    const auto n = spectrum.size();
    // Ingested levels are stored relative to their minimum; the law needs absolute energies.
    const double shift = spectrum.offset().empty() ? 0.0 : std::stod(spectrum.offset());
    return unfold(spectrum, [n, shift](double x) { return semicircle_counting(x + shift, n); }, trim_fraction);
}

Spectrum decimate(const Spectrum& spectrum, Parity parity) {
    require(spectrum.size() >= 4, "decimate needs at least four levels");
    std::vector<double> kept;
    kept.reserve(spectrum.size() / 2 + 1);
    for (std::size_t i = parity == Parity::Even ? 0 : 1; i < spectrum.size(); i += 2)
        kept.push_back(spectrum[i]);
    return Spectrum(std::move(kept),
                    spectrum.label() + (parity == Parity::Even ? "|even" : "|odd"));
}

Spectrum rescale_to_unit_mean(const Spectrum& spectrum) {
    const double first = spectrum[0];
    const double sbar = spectrum.mean_spacing();
    const auto n = spectrum.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (spectrum[i] - first) / sbar;
    // Pin the endpoints so the mean spacing is exactly 1 (and a second
    // application is the identity).
    out.front() = 0.0;
    out.back() = static_cast<double>(n - 1);
    if (n > 2 && !(out[n - 2] < out.back())) fail(ErrorKind::InputData, "levels collapse on rescaling");
    const double lo = std::min(0.0, (spectrum.e_min() - first) / sbar);
    const double hi = std::max(out.back(), (spectrum.e_max() - first) / sbar);
    return Spectrum(std::move(out), lo, hi, spectrum.label()).with_offset(spectrum.offset());
}

namespace {

__extension__ using Int128 = __int128;

// Exact decimal value mantissa · 10^(-scale).
struct Decimal {
    Int128 mantissa = 0;
    int scale = 0;
};

constexpr Int128 kMantissaLimit = static_cast<Int128>(1) << 120;

std::optional<Decimal> parse_decimal(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
    Decimal d;
    int digits = 0;
    bool dot = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '.' && !dot) {
            dot = true;
            continue;
        }
        if (c < '0' || c > '9') break;
        if (d.mantissa > kMantissaLimit / 10) return std::nullopt;
        d.mantissa = d.mantissa * 10 + (c - '0');
        if (dot) ++d.scale;
        ++digits;
    }
    if (digits == 0) return std::nullopt;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        int exponent = 0;
        const auto* begin = text.data() + i + 1;
        const auto* end = text.data() + text.size();
        if (begin < end && *begin == '+') ++begin;
        auto [ptr, ec] = std::from_chars(begin, end, exponent);
        if (ec != std::errc{} || ptr != end) return std::nullopt;
        d.scale -= exponent;
        i = text.size();
    }
    if (i != text.size()) return std::nullopt;
    while (d.scale < 0) {
        if (d.mantissa > kMantissaLimit / 10) return std::nullopt;
        d.mantissa *= 10;
        ++d.scale;
    }
    if (negative) d.mantissa = -d.mantissa;
    return d;
}

std::string to_decimal_string(Int128 v) {
    if (v == 0) return "0";
    const bool negative = v < 0;
    std::string out;
    while (v != 0) {
        const int digit = static_cast<int>(v % 10);
        out.push_back(static_cast<char>('0' + (negative ? -digit : digit)));
        v /= 10;
    }
    if (negative) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

struct Entry {
    std::string text;
    std::size_t line;
    double value;
    std::optional<Decimal> exact;
};

}  // namespace

Spectrum read_levels(std::istream& in, std::string label) {
    std::vector<Entry> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::strip_comment(line);
        if (body.empty()) continue;
        Entry e{std::string(body), lineno, 0.0, parse_decimal(body)};
        auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), e.value);
        const bool plus = !body.empty() && body.front() == '+';
        if (plus) {
            auto r = std::from_chars(body.data() + 1, body.data() + body.size(), e.value);
            ptr = r.ptr;
            ec = r.ec;
        }
        if (ec != std::errc{} || ptr != body.data() + body.size() || !std::isfinite(e.value))
            fail(ErrorKind::InputData, "line " + std::to_string(lineno) + ": not a number: '" +
                                           std::string(body) + "'");
        entries.push_back(std::move(e));
    }
    if (entries.empty()) fail(ErrorKind::InputData, "level file contains no levels");

    // Align all values to a common decimal scale when int128 allows it.
    int common_scale = 0;
    bool exact = true;
    for (const auto& e : entries) {
        if (!e.exact) exact = false;
        else common_scale = std::max(common_scale, e.exact->scale);
    }
    std::vector<Int128> aligned(entries.size());
    if (exact) {
        for (std::size_t k = 0; k < entries.size() && exact; ++k) {
            Int128 m = entries[k].exact->mantissa;
            for (int s = entries[k].exact->scale; s < common_scale; ++s) {
                if (m > kMantissaLimit / 10 || m < -kMantissaLimit / 10) {
                    exact = false;
                    break;
                }
                m *= 10;
            }
            aligned[k] = m;
        }
    }

    std::vector<std::size_t> order(entries.size());
    std::iota(order.begin(), order.end(), 0);
    auto less = [&](std::size_t a, std::size_t b) {
        return exact ? aligned[a] < aligned[b] : entries[a].value < entries[b].value;
    };
    std::stable_sort(order.begin(), order.end(), less);
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (!less(order[k - 1], order[k]))
            fail(ErrorKind::InputData, "duplicate level on lines " +
                                           std::to_string(entries[order[k - 1]].line) + " and " +
                                           std::to_string(entries[order[k]].line));
    }

    const auto& origin = entries[order.front()];
    std::vector<double> levels;
    levels.reserve(order.size());
    for (auto idx : order) {
        if (exact) {
            const std::string diff =
                to_decimal_string(aligned[idx] - aligned[order.front()]) + "e-" + std::to_string(common_scale);
            double v = 0.0;
            std::from_chars(diff.data(), diff.data() + diff.size(), v);
            levels.push_back(v);
        } else {
            levels.push_back(entries[idx].value - origin.value);
        }
    }
    for (std::size_t k = 1; k < levels.size(); ++k)
        if (!(levels[k] > levels[k - 1]))
            fail(ErrorKind::InputData, "levels on lines " + std::to_string(entries[order[k - 1]].line) +
                                           " and " + std::to_string(entries[order[k]].line) +
                                           " are indistinguishable in double precision");

    const bool shifted = exact ? aligned[order.front()] != 0 : origin.value != 0.0;
    Spectrum spectrum(std::move(levels), std::move(label));
    return shifted ? spectrum.with_offset(origin.text) : spectrum;
}

Spectrum ingest_levels(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InputData, "cannot open level file " + path.string());
    try {
        return read_levels(in, path.filename().string());
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

void write_levels(std::ostream& out, const Spectrum& spectrum) {
    if (!spectrum.label().empty()) out << "# label: " << spectrum.label() << '\n';
    if (!spectrum.offset().empty()) out << "# offset: " << spectrum.offset() << '\n';
    for (double x : spectrum.levels()) out << detail::g17(x) << '\n';
}

}  // namespace specdim
