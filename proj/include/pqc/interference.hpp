#ifndef PQC_INTERFERENCE_HPP
#define PQC_INTERFERENCE_HPP

#include <optional>
#include <string>
#include <vector>

namespace pqc {

/// Ideal two-photon interference visibility of a coupler with
/// reflectivity eta: 2*eta*(1-eta) / (1 - 2*eta + 2*eta^2). Value in
/// [0, 1]; the denominator never drops below 1/2.
double v_ideal(double eta);

/// Dip visibility (c_class - c_quant) / c_class. May be negative
/// (anti-dip); throws when c_class is not positive.
double visibility(double c_class, double c_quant);

struct CorrectedRates {
    double c_class;
    double c_quant;
};

/// Subtract the accidental-coincidence rate from both the classical and
/// the quantum rate. Throws when c_acc exceeds c_quant (negative physical
/// coincidences) or is not below c_class.
CorrectedRates correct_accidentals(double c_class, double c_quant, double c_acc);

/// Raw/corrected/ideal/relative visibilities for one coupler measurement.
struct VisibilityRecord {
    double c_class = 0.0;
    double c_quant = 0.0;
    double c_acc = 0.0;
    double v_raw = 0.0;
    double v_corrected = 0.0;
    double v_ideal = 0.0;
    double v_rel = 0.0; // v_corrected / v_ideal
};

VisibilityRecord visibility_record(double c_class, double c_quant, double c_acc, double eta);

/// Gaussian dip on a linear baseline. The baseline multiplies the dip:
/// translation decoupling scales the whole collection rate.
struct DipParams {
    double a = 0.0;  // baseline counts at the dip centre
    double b = 0.0;  // baseline slope, counts per um
    double v = 0.0;  // visibility, depth fraction
    double x0 = 0.0; // dip centre, um of path delay
    double w = 0.0;  // gaussian width, um
};

/// (a + b*(x - x0)) * (1 - v*exp(-(x - x0)^2 / (2 w^2)))
double dip_model(double delay_um, const DipParams& p);

/// FWHM of the dip in delay: 2*sqrt(2 ln 2) * w.
double dip_fwhm(const DipParams& p);
double width_from_fwhm(double fwhm_um);

/// Expected path-delay FWHM for a Gaussian filter spectrum:
/// 2*ln2*lambda^2 / (pi * dlambda), both wavelengths in nm, result in um.
double dip_fwhm_from_filter(double center_wavelength_nm, double filter_fwhm_nm);

/// Coincidence counts vs relative path delay. Poissonian errors are
/// computed as sqrt(max(counts, 1)), never stored.
struct DipPoint {
    double delay_um = 0.0;
    double counts = 0.0;
};

struct DipCurve {
    std::vector<DipPoint> points; // delays strictly increasing

    static double error_of(double counts);
    std::vector<double> errors() const;
};

/// CSV with header `delay_um,counts`, one point per line.
DipCurve read_dip_csv(const std::string& text);
DipCurve load_dip_csv(const std::string& path);
std::string write_dip_csv(const DipCurve& curve);
void save_dip_csv(const DipCurve& curve, const std::string& path);

} // namespace pqc

#endif
