#ifndef PQC_SWEEP_HPP
#define PQC_SWEEP_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pqc/metrics.hpp"

namespace pqc {

/// How a labelled coupler's reflectivity is varied around its netlist
/// value. Uniform draws (and grid axes) span +-half_width; Gaussian draws
/// use half_width as one sigma. Widths are absolute in eta by default;
/// relative multiplies by the nominal eta.
struct VarySpec {
    std::string label;
    double half_width = 0.0;
    bool relative = false;
    bool gaussian = false; // MC only; grids always span +-half_width
};

struct SweepMode {
    enum class Kind { Grid, MonteCarlo } kind = Kind::Grid;
    int grid_points = 11;     // per axis, endpoints included
    std::int64_t samples = 0; // MonteCarlo only

    static SweepMode grid(int points_per_axis);
    static SweepMode monte_carlo(std::int64_t samples);
};

struct SweepMetric {
    enum class Kind { SimilarityToReference, FidelityToTarget } kind =
        Kind::SimilarityToReference;
    TruthTable reference;                          // similarity
    std::array<int, 4> target = cnot_permutation; // fidelity
};

struct SweepOptions {
    Convention convention = Convention::Real;
    std::uint64_t seed = 0;
    bool parallel = true; // OpenMP over samples; reports match serial runs
};

struct SweepSample {
    double value = 0.0;
    std::map<std::string, double> assignment; // label -> eta used
};

struct SweepReport {
    std::int64_t samples = 0; // evaluated (excluded ones not counted)
    std::int64_t excluded = 0; // zero-success assignments
    std::string metric_name;  // "similarity" | "fidelity"
    std::string mode;         // e.g. "grid:11" | "mc:10000"
    std::string rng_algorithm;
    std::string width_interpretation; // "absolute" | "relative"
    std::uint64_t seed = 0;
    SweepSample worst;
    SweepSample best;
    double quantile_1 = 0.0;
    double quantile_50 = 0.0;
    double quantile_99 = 0.0;
    bool worst_at_corner = false; // grid mode: worst sample sits at axis endpoints

    bool operator==(const SweepReport&) const = default;
};

/// Evaluate the metric over reflectivity assignments around the netlist's
/// nominal values. Grid mode enumerates the full cartesian grid per
/// varied label (corners included); Monte Carlo derives one RNG stream
/// per sample from (seed, sample index), so parallel and serial execution
/// produce identical reports. Unknown labels throw; assignments whose
/// post-selection fails are excluded and counted.
SweepReport sweep_eta(const Netlist& netlist, const LogicalEncoding& encoding,
                      const std::vector<VarySpec>& vary, const SweepMode& mode,
                      const SweepMetric& metric, const SweepOptions& options = {});

std::string sweep_report_to_json(const SweepReport& report);
SweepReport sweep_report_from_json(const std::string& json_text);
void save_sweep_report(const SweepReport& report, const std::string& path);

} // namespace pqc

#endif
