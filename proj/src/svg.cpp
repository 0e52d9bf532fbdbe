#include "pqc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pqc {

namespace {

constexpr double width = 720.0;
constexpr double height = 480.0;
constexpr double margin_left = 70.0;
constexpr double margin_right = 20.0;
constexpr double margin_top = 40.0;
constexpr double margin_bottom = 55.0;

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// round a span to 1/2/5 * 10^k tick steps
double tick_step(double span) {
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    if (frac < 1.5)
        return mag;
    if (frac < 3.5)
        return 2.0 * mag;
    if (frac < 7.5)
        return 5.0 * mag;
    return 10.0 * mag;
}

} // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgPlot::add_line(const std::vector<std::pair<double, double>>& xy, const std::string& color) {
    series_.push_back({Series::Kind::Line, xy, {}, color, "", 0.0});
}

void SvgPlot::add_points(const std::vector<std::pair<double, double>>& xy,
                         const std::vector<double>& y_errors, const std::string& color) {
    series_.push_back({Series::Kind::Points, xy, y_errors, color, "", 0.0});
}

void SvgPlot::add_hline(double y, const std::string& color, const std::string& name) {
    series_.push_back({Series::Kind::HLine, {}, {}, color, name, y});
}

std::string SvgPlot::render() const {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const Series& s : series_) {
        if (s.kind == Series::Kind::HLine) {
            ymin = std::min(ymin, s.level);
            ymax = std::max(ymax, s.level);
            continue;
        }
        for (std::size_t i = 0; i < s.xy.size(); ++i) {
            const auto [x, y] = s.xy[i];
            const double e = i < s.errors.size() ? s.errors[i] : 0.0;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y - e);
            ymax = std::max(ymax, y + e);
        }
    }
    if (!std::isfinite(xmin) || !std::isfinite(ymin))
        throw std::runtime_error("SvgPlot: nothing to draw");
    if (xmax == xmin) {
        xmax += 1.0;
        xmin -= 1.0;
    }
    if (ymax == ymin) {
        ymax += 1.0;
        ymin -= 1.0;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double plot_w = width - margin_left - margin_right;
    const double plot_h = height - margin_top - margin_bottom;
    auto px = [&](double x) { return margin_left + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return margin_top + (ymax - y) / (ymax - ymin) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << title_ << "</text>\n";

    // axes
    svg << "<rect x=\"" << margin_left << "\" y=\"" << margin_top << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

    const double xstep = tick_step(xmax - xmin);
    for (double t = std::ceil(xmin / xstep) * xstep; t <= xmax + 1e-9 * xstep; t += xstep) {
        svg << "<line x1=\"" << px(t) << "\" y1=\"" << margin_top + plot_h << "\" x2=\"" << px(t)
            << "\" y2=\"" << margin_top + plot_h + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << px(t) << "\" y=\"" << margin_top + plot_h + 20
            << "\" text-anchor=\"middle\" font-size=\"11\">" << num(t) << "</text>\n";
    }
    const double ystep = tick_step(ymax - ymin);
    for (double t = std::ceil(ymin / ystep) * ystep; t <= ymax + 1e-9 * ystep; t += ystep) {
        svg << "<line x1=\"" << margin_left - 5 << "\" y1=\"" << py(t) << "\" x2=\"" << margin_left
            << "\" y2=\"" << py(t) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << margin_left - 9 << "\" y=\"" << py(t) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << num(t) << "</text>\n";
    }
    svg << "<text x=\"" << margin_left + plot_w / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label_ << "</text>\n";
    svg << "<text x=\"16\" y=\"" << margin_top + plot_h / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
        << margin_top + plot_h / 2 << ")\">" << y_label_ << "</text>\n";

    for (const Series& s : series_) {
        if (s.kind == Series::Kind::HLine) {
            svg << "<line x1=\"" << margin_left << "\" y1=\"" << py(s.level) << "\" x2=\""
                << margin_left + plot_w << "\" y2=\"" << py(s.level) << "\" stroke=\"" << s.color
                << "\" stroke-dasharray=\"6 3\"/>\n";
            if (!s.name.empty())
                svg << "<text x=\"" << margin_left + 6 << "\" y=\"" << py(s.level) - 4
                    << "\" font-size=\"11\" fill=\"" << s.color << "\">" << s.name << "</text>\n";
        } else if (s.kind == Series::Kind::Line) {
            svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [x, y] : s.xy)
                svg << num(px(x)) << ',' << num(py(y)) << ' ';
            svg << "\"/>\n";
        } else {
            for (std::size_t i = 0; i < s.xy.size(); ++i) {
                const auto [x, y] = s.xy[i];
                if (i < s.errors.size() && s.errors[i] > 0.0) {
                    svg << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(py(y - s.errors[i]))
                        << "\" x2=\"" << num(px(x)) << "\" y2=\"" << num(py(y + s.errors[i]))
                        << "\" stroke=\"" << s.color << "\"/>\n";
                }
                svg << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y))
                    << "\" r=\"2.5\" fill=\"" << s.color << "\"/>\n";
            }
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

void SvgPlot::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << render();
}

} // namespace pqc
