#ifndef PQC_SVG_HPP
#define PQC_SVG_HPP

#include <string>
#include <vector>

namespace pqc {

/// Minimal line/scatter plot writer: axes with ticks, polylines, points
/// with optional error bars, horizontal reference lines. Enough for dip
/// curves and visibility scans; styling is intentionally plain.
class SvgPlot {
  public:
    SvgPlot(std::string title, std::string x_label, std::string y_label);

    void add_line(const std::vector<std::pair<double, double>>& xy, const std::string& color);
    void add_points(const std::vector<std::pair<double, double>>& xy,
                    const std::vector<double>& y_errors, const std::string& color);
    void add_hline(double y, const std::string& color, const std::string& name);

    std::string render() const;
    void save(const std::string& path) const;

  private:
    struct Series {
        enum class Kind { Line, Points, HLine } kind;
        std::vector<std::pair<double, double>> xy;
        std::vector<double> errors;
        std::string color;
        std::string name;
        double level = 0.0;
    };

    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
};

} // namespace pqc

#endif
