#ifndef PQC_FIT_HPP
#define PQC_FIT_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pqc/interference.hpp"

namespace pqc {

struct FitResult {
    DipParams params;
    DipParams uncertainties; // one-sigma, from the inverse approximate Hessian
    double residual_sse = 0.0;
    double gradient_norm = 0.0; // scale-invariant: max_k |g_k|*max(|x_k|,1)/max(sse,1)
    bool converged = false;     // gradient_norm < FitOptions::gradient_tol
    int iterations = 0;
    std::vector<std::string> flags; // e.g. "flat-data"

    double fwhm() const { return dip_fwhm(params); }
};

struct FitOptions {
    int max_iterations = 200;
    double lambda_init = 1e-3; // Levenberg damping, x10 on reject, /10 on accept
    double sse_rel_tol = 1e-14; // stop when an accepted step improves less than this
    double gradient_tol = 1e-6; // convergence bound on the scaled gradient norm
};

/// Residuals of the model against the curve, weighted by the Poisson
/// errors: r_i = (counts_i - model(delay_i)) / err_i.
std::vector<double> dip_residuals(const DipCurve& curve, const DipParams& p);

/// Analytic Jacobian of the weighted residuals wrt (a, b, v, x0, w),
/// row-major, one row per point.
std::vector<std::array<double, 5>> dip_jacobian(const DipCurve& curve, const DipParams& p);

/// Weighted least-squares fit of the Gaussian-with-linear-baseline dip.
/// Self-seeds when no guess is given: a from the max counts, x0 from the
/// argmin, v from the min/max ratio, w from the span of points below half
/// depth. Throws when the curve has fewer than 6 points.
FitResult fit_dip(const DipCurve& curve, const FitOptions& options = {});
FitResult fit_dip(const DipCurve& curve, const DipParams& initial_guess,
                  const FitOptions& options = {});

/// Poisson-sampled counts with mean dip_model(delay) at each delay.
/// Deterministic per (params, delays, seed).
DipCurve synth_dip(const DipParams& params, const std::vector<double>& delays, std::uint64_t seed);

std::string fit_result_to_json(const FitResult& result);
void save_fit_result(const FitResult& result, const std::string& path);

} // namespace pqc

#endif
