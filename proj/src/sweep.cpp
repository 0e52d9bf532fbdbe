#include "pqc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pqc/json_util.hpp"
#include "pqc/rng.hpp"

#include <json.hpp>

namespace pqc {

namespace {

struct VaryTarget {
    VarySpec spec;
    std::vector<std::size_t> element_indices;
    double nominal = 0.0;
    double width = 0.0; // resolved absolute half-width (or sigma)
};

std::vector<VaryTarget> resolve_targets(const Netlist& netlist, const std::vector<VarySpec>& vary) {
    std::vector<VaryTarget> targets;
    for (const VarySpec& spec : vary) {
        VaryTarget t;
        t.spec = spec;
        t.element_indices = netlist.find_label(spec.label);
        if (t.element_indices.empty()) {
            std::ostringstream msg;
            msg << "sweep_eta: unknown label '" << spec.label << "'; available labels:";
            for (const std::string& l : netlist.labels())
                msg << ' ' << l;
            throw std::invalid_argument(msg.str());
        }
        for (std::size_t idx : t.element_indices)
            if (!std::holds_alternative<DirectionalCoupler>(netlist.elements[idx].op))
                throw std::invalid_argument("sweep_eta: label '" + spec.label +
                                            "' does not name a coupler");
        t.nominal =
            std::get<DirectionalCoupler>(netlist.elements[t.element_indices.front()].op).coupler.eta;
        t.width = spec.relative ? spec.half_width * t.nominal : spec.half_width;
        if (t.nominal - t.width < 0.0 || t.nominal + t.width > 1.0)
            throw std::invalid_argument("sweep_eta: label '" + spec.label +
                                        "' range leaves [0, 1]");
        targets.push_back(std::move(t));
    }
    return targets;
}

double evaluate_metric(const Netlist& base, const std::vector<VaryTarget>& targets,
                       const std::vector<double>& etas, const LogicalEncoding& encoding,
                       const SweepMetric& metric, Convention convention, bool& ok) {
    Netlist varied = base;
    for (std::size_t t = 0; t < targets.size(); ++t)
        for (std::size_t idx : targets[t].element_indices)
            std::get<DirectionalCoupler>(varied.elements[idx].op).coupler.eta = etas[t];
    try {
        const TruthTable table = truth_table(varied, encoding, convention);
        ok = true;
        return metric.kind == SweepMetric::Kind::SimilarityToReference
                   ? similarity(metric.reference, table)
                   : logical_fidelity(table, metric.target);
    } catch (const post_selection_error&) {
        ok = false; // zero-success assignment
        return 0.0;
    }
}

double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty())
        return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

} // namespace

SweepMode SweepMode::grid(int points_per_axis) {
    SweepMode m;
    m.kind = Kind::Grid;
    m.grid_points = points_per_axis;
    return m;
}

SweepMode SweepMode::monte_carlo(std::int64_t samples) {
    SweepMode m;
    m.kind = Kind::MonteCarlo;
    m.samples = samples;
    return m;
}

SweepReport sweep_eta(const Netlist& netlist, const LogicalEncoding& encoding,
                      const std::vector<VarySpec>& vary, const SweepMode& mode,
                      const SweepMetric& metric, const SweepOptions& options) {
    const std::vector<VaryTarget> targets = resolve_targets(netlist, vary);
    const std::size_t k = targets.size();

    std::int64_t total = 0;
    if (mode.kind == SweepMode::Kind::Grid) {
        if (mode.grid_points < 1)
            throw std::invalid_argument("sweep_eta: grid needs at least 1 point per axis");
        total = 1;
        for (std::size_t t = 0; t < k; ++t)
            total *= mode.grid_points;
    } else {
        if (mode.samples < 1)
            throw std::invalid_argument("sweep_eta: need at least 1 Monte Carlo sample");
        total = mode.samples;
    }

    // eta assignment for sample index i, as a pure function of i
    auto assignment_for = [&](std::int64_t i) {
        std::vector<double> etas(k);
        if (mode.kind == SweepMode::Kind::Grid) {
            std::int64_t rem = i;
            for (std::size_t t = 0; t < k; ++t) {
                const int step = static_cast<int>(rem % mode.grid_points);
                rem /= mode.grid_points;
                const VaryTarget& vt = targets[t];
                etas[t] = mode.grid_points == 1
                              ? vt.nominal
                              : vt.nominal - vt.width +
                                    2.0 * vt.width * static_cast<double>(step) /
                                        static_cast<double>(mode.grid_points - 1);
            }
        } else {
            Rng rng(options.seed, static_cast<std::uint64_t>(i));
            for (std::size_t t = 0; t < k; ++t) {
                const VaryTarget& vt = targets[t];
                etas[t] = vt.spec.gaussian
                              ? rng.gaussian(vt.nominal, vt.width)
                              : rng.uniform(vt.nominal - vt.width, vt.nominal + vt.width);
                etas[t] = std::clamp(etas[t], 0.0, 1.0);
            }
        }
        return etas;
    };

    std::vector<double> values(static_cast<std::size_t>(total));
    std::vector<char> valid(static_cast<std::size_t>(total));

#pragma omp parallel for schedule(static) if (options.parallel)
    for (std::int64_t i = 0; i < total; ++i) {
        bool ok = false;
        values[static_cast<std::size_t>(i)] = evaluate_metric(
            netlist, targets, assignment_for(i), encoding, metric, options.convention, ok);
        valid[static_cast<std::size_t>(i)] = ok ? 1 : 0;
    }

    SweepReport report;
    report.metric_name =
        metric.kind == SweepMetric::Kind::SimilarityToReference ? "similarity" : "fidelity";
    report.mode = mode.kind == SweepMode::Kind::Grid
                      ? "grid:" + std::to_string(mode.grid_points)
                      : "mc:" + std::to_string(mode.samples);
    report.rng_algorithm = Rng::algorithm;
    report.seed = options.seed;
    report.width_interpretation =
        !targets.empty() && targets.front().spec.relative ? "relative" : "absolute";

    std::int64_t worst_i = -1, best_i = -1;
    std::vector<double> kept;
    kept.reserve(static_cast<std::size_t>(total));
    for (std::int64_t i = 0; i < total; ++i) {
        if (!valid[static_cast<std::size_t>(i)]) {
            ++report.excluded;
            continue;
        }
        const double v = values[static_cast<std::size_t>(i)];
        kept.push_back(v);
        if (worst_i < 0 || v < values[static_cast<std::size_t>(worst_i)])
            worst_i = i;
        if (best_i < 0 || v > values[static_cast<std::size_t>(best_i)])
            best_i = i;
    }
    report.samples = static_cast<std::int64_t>(kept.size());
    if (kept.empty())
        throw std::runtime_error("sweep_eta: every assignment failed post-selection");

    auto sample_at = [&](std::int64_t i) {
        SweepSample s;
        s.value = values[static_cast<std::size_t>(i)];
        const std::vector<double> etas = assignment_for(i);
        for (std::size_t t = 0; t < k; ++t)
            s.assignment[targets[t].spec.label] = etas[t];
        return s;
    };
    report.worst = sample_at(worst_i);
    report.best = sample_at(best_i);

    std::sort(kept.begin(), kept.end());
    report.quantile_1 = quantile(kept, 0.01);
    report.quantile_50 = quantile(kept, 0.50);
    report.quantile_99 = quantile(kept, 0.99);

    if (mode.kind == SweepMode::Kind::Grid) {
        report.worst_at_corner = true;
        const std::vector<double> etas = assignment_for(worst_i);
        for (std::size_t t = 0; t < k; ++t) {
            const VaryTarget& vt = targets[t];
            const bool at_edge = std::abs(std::abs(etas[t] - vt.nominal) - vt.width) < 1e-12 ||
                                 vt.width == 0.0;
            if (!at_edge)
                report.worst_at_corner = false;
        }
    }
    return report;
}

std::string sweep_report_to_json(const SweepReport& report) {
    nlohmann::json j;
    j["samples"] = report.samples;
    j["excluded"] = report.excluded;
    j["metric"] = report.metric_name;
    j["mode"] = report.mode;
    j["rng"] = report.rng_algorithm;
    j["width_interpretation"] = report.width_interpretation;
    j["seed"] = report.seed;
    auto sample_json = [](const SweepSample& s) {
        nlohmann::json out;
        out["value"] = round_sig(s.value);
        nlohmann::json assign = nlohmann::json::object();
        for (const auto& [label, eta] : s.assignment)
            assign[label] = round_sig(eta);
        out["assignment"] = assign;
        return out;
    };
    j["worst"] = sample_json(report.worst);
    j["best"] = sample_json(report.best);
    j["quantiles"] = {{"1%", round_sig(report.quantile_1)},
                      {"50%", round_sig(report.quantile_50)},
                      {"99%", round_sig(report.quantile_99)}};
    j["worst_at_corner"] = report.worst_at_corner;
    return j.dump(2) + "\n";
}

SweepReport sweep_report_from_json(const std::string& json_text) {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    SweepReport r;
    r.samples = j.at("samples").get<std::int64_t>();
    r.excluded = j.at("excluded").get<std::int64_t>();
    r.metric_name = j.at("metric").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    r.rng_algorithm = j.at("rng").get<std::string>();
    r.width_interpretation = j.at("width_interpretation").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    auto sample_from = [](const nlohmann::json& s) {
        SweepSample out;
        out.value = s.at("value").get<double>();
        for (const auto& [label, eta] : s.at("assignment").items())
            out.assignment[label] = eta.get<double>();
        return out;
    };
    r.worst = sample_from(j.at("worst"));
    r.best = sample_from(j.at("best"));
    r.quantile_1 = j.at("quantiles").at("1%").get<double>();
    r.quantile_50 = j.at("quantiles").at("50%").get<double>();
    r.quantile_99 = j.at("quantiles").at("99%").get<double>();
    r.worst_at_corner = j.at("worst_at_corner").get<bool>();
    return r;
}

void save_sweep_report(const SweepReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << sweep_report_to_json(report);
}

} // namespace pqc
