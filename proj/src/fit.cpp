#include "pqc/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "pqc/json_util.hpp"
#include "pqc/rng.hpp"

#include <json.hpp>

namespace pqc {

namespace {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

Vec5 pack(const DipParams& p) {
    Vec5 x;
    x << p.a, p.b, p.v, p.x0, p.w;
    return x;
}

DipParams unpack(const Vec5& x) { return {x[0], x[1], x[2], x[3], x[4]}; }

double sse_of(const std::vector<double>& r) {
    double s = 0.0;
    for (double v : r)
        s += v * v;
    return s;
}

DipParams self_seed(const DipCurve& curve) {
    const auto& pts = curve.points;
    double cmin = pts[0].counts, cmax = pts[0].counts;
    double xmin = pts[0].delay_um;
    for (const DipPoint& p : pts) {
        if (p.counts < cmin) {
            cmin = p.counts;
            xmin = p.delay_um;
        }
        cmax = std::max(cmax, p.counts);
    }

    DipParams guess;
    guess.a = cmax;
    guess.x0 = xmin;
    guess.v = cmax > 0.0 ? std::clamp(1.0 - cmin / cmax, 0.0, 1.0) : 0.0;

    const double span = pts.back().delay_um - pts.front().delay_um;
    const double n = static_cast<double>(pts.size());
    guess.b = span != 0.0 ? (pts.back().counts - pts.front().counts) / span : 0.0;

    // width from the delay span of points below half depth
    const double half_level = cmax - 0.5 * (cmax - cmin);
    double lo = xmin, hi = xmin;
    for (const DipPoint& p : pts) {
        if (p.counts < half_level) {
            lo = std::min(lo, p.delay_um);
            hi = std::max(hi, p.delay_um);
        }
    }
    const double fwhm_est = hi > lo ? hi - lo : span / n;
    guess.w = std::max(width_from_fwhm(fwhm_est), 1e-6);
    return guess;
}

} // namespace

std::vector<double> dip_residuals(const DipCurve& curve, const DipParams& p) {
    std::vector<double> r;
    r.reserve(curve.points.size());
    for (const DipPoint& pt : curve.points)
        r.push_back((pt.counts - dip_model(pt.delay_um, p)) / DipCurve::error_of(pt.counts));
    return r;
}

std::vector<std::array<double, 5>> dip_jacobian(const DipCurve& curve, const DipParams& p) {
    std::vector<std::array<double, 5>> jac;
    jac.reserve(curve.points.size());
    for (const DipPoint& pt : curve.points) {
        const double err = DipCurve::error_of(pt.counts);
        const double d = pt.delay_um - p.x0;
        const double gauss = std::exp(-d * d / (2.0 * p.w * p.w));
        const double base = p.a + p.b * d;
        const double depth = 1.0 - p.v * gauss;
        // residual = (counts - model)/err, so each entry is -dmodel/dp / err
        const double da = depth;
        const double db = d * depth;
        const double dv = -base * gauss;
        const double dx0 = -p.b * depth - base * p.v * gauss * d / (p.w * p.w);
        const double dw = -base * p.v * gauss * d * d / (p.w * p.w * p.w);
        jac.push_back({-da / err, -db / err, -dv / err, -dx0 / err, -dw / err});
    }
    return jac;
}

FitResult fit_dip(const DipCurve& curve, const FitOptions& options) {
    if (curve.points.size() < 6)
        throw std::invalid_argument("fit_dip: need at least 6 points");
    const DipParams guess = self_seed(curve);
    FitResult result = fit_dip(curve, guess, options);
    if (guess.v < 0.01)
        result.flags.push_back("flat-data");
    return result;
}

FitResult fit_dip(const DipCurve& curve, const DipParams& initial_guess, const FitOptions& options) {
    if (curve.points.size() < 6)
        throw std::invalid_argument("fit_dip: need at least 6 points");

    Vec5 x = pack(initial_guess);
    std::vector<double> res = dip_residuals(curve, unpack(x));
    double sse = sse_of(res);
    double lambda = options.lambda_init;

    FitResult result;
    bool stalled = false;
    int iter = 0;
    for (; iter < options.max_iterations && !stalled; ++iter) {
        const auto jac = dip_jacobian(curve, unpack(x));
        const std::size_t m = res.size();

        Mat5 jtj = Mat5::Zero();
        Vec5 jtr = Vec5::Zero();
        for (std::size_t i = 0; i < m; ++i)
            for (int a = 0; a < 5; ++a) {
                jtr[a] += jac[i][a] * res[i];
                for (int b = 0; b < 5; ++b)
                    jtj(a, b) += jac[i][a] * jac[i][b];
            }

        // Levenberg step with Marquardt diagonal scaling; reject/accept
        // adapts lambda by x10 / /10
        bool stepped = false;
        for (int attempt = 0; attempt < 32; ++attempt) {
            Mat5 damped = jtj;
            for (int a = 0; a < 5; ++a)
                damped(a, a) += lambda * std::max(jtj(a, a), 1e-30);
            const Vec5 step = damped.ldlt().solve(-jtr);
            const Vec5 trial = x + step;
            const std::vector<double> trial_res = dip_residuals(curve, unpack(trial));
            const double trial_sse = sse_of(trial_res);
            if (std::isfinite(trial_sse) && trial_sse <= sse) {
                const double improvement = sse - trial_sse;
                x = trial;
                res = trial_res;
                if (improvement <= options.sse_rel_tol * std::max(sse, 1e-300))
                    stalled = true;
                sse = trial_sse;
                lambda = std::max(lambda / 10.0, 1e-14);
                stepped = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped)
            stalled = true; // damping exhausted, no downhill step found
    }

    DipParams fitted = unpack(x);
    fitted.w = std::abs(fitted.w); // model depends on w^2 only
    result.params = fitted;
    result.residual_sse = sse;
    result.iterations = iter;

    // convergence is a property of the end point: scaled gradient norm
    {
        const auto jac = dip_jacobian(curve, fitted);
        const std::vector<double> final_res = dip_residuals(curve, fitted);
        Vec5 g = Vec5::Zero();
        for (std::size_t i = 0; i < final_res.size(); ++i)
            for (int a = 0; a < 5; ++a)
                g[a] += jac[i][a] * final_res[i];
        double norm = 0.0;
        for (int a = 0; a < 5; ++a)
            norm = std::max(norm, std::abs(g[a]) * std::max(std::abs(x[a]), 1.0));
        result.gradient_norm = norm / std::max(sse, 1.0);
        result.converged = result.gradient_norm < options.gradient_tol;
    }

    // one-sigma uncertainties from the unit-damping normal equations
    const auto jac = dip_jacobian(curve, fitted);
    Mat5 jtj = Mat5::Zero();
    for (const auto& row : jac)
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b)
                jtj(a, b) += row[a] * row[b];
    const Mat5 cov = jtj.ldlt().solve(Mat5::Identity());
    const auto sigma = [&](int k) {
        const double v = cov(k, k);
        return v > 0.0 ? std::sqrt(v) : 0.0;
    };
    result.uncertainties = {sigma(0), sigma(1), sigma(2), sigma(3), sigma(4)};

    if (result.params.v < 0.01)
        result.flags.push_back("no-dip-resolved");
    return result;
}

DipCurve synth_dip(const DipParams& params, const std::vector<double>& delays, std::uint64_t seed) {
    Rng rng(seed);
    DipCurve curve;
    curve.points.reserve(delays.size());
    for (double d : delays) {
        const double mean = std::max(dip_model(d, params), 0.0);
        curve.points.push_back({d, static_cast<double>(rng.poisson(mean))});
    }
    return curve;
}

std::string fit_result_to_json(const FitResult& result) {
    nlohmann::json j;
    auto params = nlohmann::json::object();
    auto errors = nlohmann::json::object();
    const auto put = [&](const char* name, double value, double err) {
        params[name] = round_sig(value);
        errors[name] = round_sig(err);
    };
    put("a", result.params.a, result.uncertainties.a);
    put("b", result.params.b, result.uncertainties.b);
    put("v", result.params.v, result.uncertainties.v);
    put("x0", result.params.x0, result.uncertainties.x0);
    put("w", result.params.w, result.uncertainties.w);
    j["params"] = params;
    j["uncertainties"] = errors;
    j["fwhm_um"] = round_sig(result.fwhm());
    j["residual_sse"] = round_sig(result.residual_sse);
    j["gradient_norm"] = round_sig(result.gradient_norm);
    j["converged"] = result.converged;
    j["iterations"] = result.iterations;
    j["flags"] = result.flags;
    j["error_model"] = "first-order propagation of Poissonian count errors";
    return j.dump(2) + "\n";
}

void save_fit_result(const FitResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << fit_result_to_json(result);
}

} // namespace pqc
