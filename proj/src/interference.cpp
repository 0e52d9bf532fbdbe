#include "pqc/interference.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pqc {

double v_ideal(double eta) {
    if (eta < 0.0 || eta > 1.0)
        throw std::invalid_argument("v_ideal: reflectivity must be in [0, 1]");
    return 2.0 * eta * (1.0 - eta) / (1.0 - 2.0 * eta + 2.0 * eta * eta);
}

double visibility(double c_class, double c_quant) {
    if (c_class <= 0.0)
        throw std::invalid_argument("visibility: classical rate must be positive");
    return (c_class - c_quant) / c_class;
}

CorrectedRates correct_accidentals(double c_class, double c_quant, double c_acc) {
    if (c_acc < 0.0)
        throw std::invalid_argument("correct_accidentals: accidental rate must be non-negative");
    if (c_acc > c_quant)
        throw std::invalid_argument(
            "correct_accidentals: accidental rate exceeds the quantum coincidence rate");
    if (c_acc >= c_class)
        throw std::invalid_argument(
            "correct_accidentals: accidental rate must be below the classical rate");
    return {c_class - c_acc, c_quant - c_acc};
}

VisibilityRecord visibility_record(double c_class, double c_quant, double c_acc, double eta) {
    VisibilityRecord rec;
    rec.c_class = c_class;
    rec.c_quant = c_quant;
    rec.c_acc = c_acc;
    rec.v_raw = visibility(c_class, c_quant);
    const CorrectedRates corr = correct_accidentals(c_class, c_quant, c_acc);
    rec.v_corrected = visibility(corr.c_class, corr.c_quant);
    rec.v_ideal = v_ideal(eta);
    rec.v_rel = rec.v_ideal > 0.0 ? rec.v_corrected / rec.v_ideal : 0.0;
    return rec;
}

double dip_model(double delay_um, const DipParams& p) {
    const double d = delay_um - p.x0;
    const double gauss = std::exp(-d * d / (2.0 * p.w * p.w));
    return (p.a + p.b * d) * (1.0 - p.v * gauss);
}

double dip_fwhm(const DipParams& p) { return 2.0 * std::sqrt(2.0 * std::numbers::ln2) * std::abs(p.w); }

double width_from_fwhm(double fwhm_um) { return fwhm_um / (2.0 * std::sqrt(2.0 * std::numbers::ln2)); }

double dip_fwhm_from_filter(double center_wavelength_nm, double filter_fwhm_nm) {
    if (center_wavelength_nm <= 0.0 || filter_fwhm_nm <= 0.0)
        throw std::invalid_argument("dip_fwhm_from_filter: wavelengths must be positive");
    const double fwhm_nm =
        2.0 * std::numbers::ln2 * center_wavelength_nm * center_wavelength_nm /
        (std::numbers::pi * filter_fwhm_nm);
    return fwhm_nm * 1e-3; // nm of path -> um
}

double DipCurve::error_of(double counts) { return std::sqrt(std::max(counts, 1.0)); }

std::vector<double> DipCurve::errors() const {
    std::vector<double> e;
    e.reserve(points.size());
    for (const DipPoint& p : points)
        e.push_back(error_of(p.counts));
    return e;
}

DipCurve read_dip_csv(const std::string& text) {
    DipCurve curve;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line_no == 1) {
            if (line != "delay_um,counts")
                throw std::runtime_error("dip csv: expected header 'delay_um,counts'");
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("dip csv line " + std::to_string(line_no) +
                                     ": expected 'delay,counts'");
        DipPoint pt;
        try {
            pt.delay_um = std::stod(line.substr(0, comma));
            pt.counts = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw std::runtime_error("dip csv line " + std::to_string(line_no) + ": malformed number");
        }
        if (pt.counts < 0.0)
            throw std::runtime_error("dip csv line " + std::to_string(line_no) + ": negative counts");
        if (!curve.points.empty() && pt.delay_um <= curve.points.back().delay_um)
            throw std::runtime_error("dip csv line " + std::to_string(line_no) +
                                     ": delays must be strictly increasing");
        curve.points.push_back(pt);
    }
    return curve;
}

DipCurve load_dip_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_dip_csv(buf.str());
}

std::string write_dip_csv(const DipCurve& curve) {
    std::ostringstream out;
    out << "delay_um,counts\n";
    char buf[64];
    for (const DipPoint& p : curve.points) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", p.delay_um, p.counts);
        out << buf;
    }
    return out.str();
}

void save_dip_csv(const DipCurve& curve, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << write_dip_csv(curve);
}

} // namespace pqc
