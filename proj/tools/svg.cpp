#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace specdim::cli {

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Frame {
    double x0, y0, w, h;
    double lo, hi, ylo, yhi;
    bool log_x;

    double px(double x) const {
        const double t = log_x ? (std::log10(x) - std::log10(lo)) / (std::log10(hi) - std::log10(lo))
                               : (x - lo) / (hi - lo);
        return x0 + t * w;
    }
    double py(double y) const { return y0 + h - (y - ylo) / (yhi - ylo) * h; }
};

const char* kColours[] = {"#1f4e9c", "#b2182b", "#1b7837", "#762a83", "#e08214"};

void polyline(std::ostringstream& out, const Frame& f, const std::vector<std::pair<double, double>>& pts,
              const std::string& stroke, const std::string& extra) {
    out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"" << extra << " points=\"";
    for (const auto& [x, y] : pts)
        if (x >= f.lo && x <= f.hi) out << num(f.px(x)) << ',' << num(f.py(std::clamp(y, f.ylo, f.yhi))) << ' ';
    out << "\"/>\n";
}

}  // namespace

std::string dimension_plot(const std::vector<Series>& series, const std::string& title,
                           const std::vector<std::pair<double, double>>& inset) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& s : series)
        for (const auto& p : s.points) {
            lo = std::min(lo, p.first);
            hi = std::max(hi, p.first);
        }
    if (!(lo < hi)) {
        lo = 0.02;
        hi = 5.0;
    }
    const Frame f{kLeft, kTop, kWidth - kLeft - kRight, kHeight - kTop - kBottom, lo, hi, 0.0, 1.1, true};

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(title) << "</text>\n";
    out << "<rect x=\"" << num(f.x0) << "\" y=\"" << num(f.y0) << "\" width=\"" << num(f.w) << "\" height=\""
        << num(f.h) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int e = static_cast<int>(std::floor(std::log10(lo))); e <= static_cast<int>(std::ceil(std::log10(hi))); ++e) {
        for (int m = 1; m < 10; ++m) {
            const double x = m * std::pow(10.0, e);
            if (x < lo || x > hi) continue;
            const double px = f.px(x);
            out << "<line x1=\"" << num(px) << "\" x2=\"" << num(px) << "\" y1=\"" << num(f.y0 + f.h) << "\" y2=\""
                << num(f.y0 + f.h - (m == 1 ? 8 : 4)) << "\" stroke=\"black\"/>\n";
            if (m == 1 || m == 2 || m == 5)
                out << "<text x=\"" << num(px) << "\" y=\"" << num(f.y0 + f.h + 18) << "\" text-anchor=\"middle\">"
                    << x << "</text>\n";
        }
    }
    for (int k = 0; k <= 5; ++k) {
        const double y = 0.2 * k;
        out << "<line x1=\"" << num(f.x0) << "\" x2=\"" << num(f.x0 + 6) << "\" y1=\"" << num(f.py(y)) << "\" y2=\""
            << num(f.py(y)) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(f.x0 - 8) << "\" y=\"" << num(f.py(y) + 4) << "\" text-anchor=\"end\">"
            << num(y).substr(0, 3) << "</text>\n";
    }
    out << "<text x=\"" << num(f.x0 + f.w / 2) << "\" y=\"" << num(kHeight - 15)
        << "\" text-anchor=\"middle\">r / s&#772;</text>\n";
    out << "<text transform=\"translate(20," << num(f.y0 + f.h / 2)
        << ") rotate(-90)\" text-anchor=\"middle\">D_b(r)</text>\n";

    if (lo < 1.0 && hi > 1.0) {
        polyline(out, f, {{lo, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {hi, 1.0}}, "gray", " stroke-dasharray=\"8,3,2,3\"");
    }

    std::size_t colour = 0;
    double legend_y = f.y0 + f.h - 12.0 * static_cast<double>(series.size()) - 8;
    for (const auto& s : series) {
        const std::string stroke = kColours[colour++ % std::size(kColours)];
        if (s.style == Style::Markers) {
            for (const auto& [x, y] : s.points) {
                if (x < lo || x > hi) continue;
                out << "<circle cx=\"" << num(f.px(x)) << "\" cy=\"" << num(f.py(std::clamp(y, f.ylo, f.yhi)))
                    << "\" r=\"2.5\" fill=\"none\" stroke=\"" << stroke << "\"/>\n";
            }
        } else {
            polyline(out, f, s.points, stroke, s.style == Style::DashDot ? " stroke-dasharray=\"8,3,2,3\"" : "");
        }
        out << "<text x=\"" << num(f.x0 + f.w - 10) << "\" y=\"" << num(legend_y) << "\" text-anchor=\"end\" fill=\""
            << stroke << "\">" << escape(s.label) << "</text>\n";
        legend_y += 14;
    }

    if (!inset.empty()) {
        double xl = inset.front().first, xh = inset.back().first;
        double yl = std::numeric_limits<double>::infinity(), yh = -yl;
        for (const auto& p : inset) {
            yl = std::min(yl, p.second);
            yh = std::max(yh, p.second);
        }
        if (!(yl < yh)) yh = yl + 1.0;
        const Frame g{f.x0 + 30, f.y0 + 20, f.w * 0.35, f.h * 0.35, xl, xh, yl, yh, false};
        out << "<rect x=\"" << num(g.x0) << "\" y=\"" << num(g.y0) << "\" width=\"" << num(g.w) << "\" height=\""
            << num(g.h) << "\" fill=\"white\" stroke=\"black\"/>\n";
        polyline(out, g, inset, "black", "");
        out << "<text x=\"" << num(g.x0 + g.w / 2) << "\" y=\"" << num(g.y0 + g.h + 14)
            << "\" text-anchor=\"middle\" font-size=\"10\">ln(r/s&#772;)</text>\n";
        out << "<text x=\"" << num(g.x0 + 4) << "\" y=\"" << num(g.y0 + 12) << "\" font-size=\"10\">ln N(r)</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace specdim::cli
