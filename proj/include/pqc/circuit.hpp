#ifndef PQC_CIRCUIT_HPP
#define PQC_CIRCUIT_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pqc/permanent.hpp"

namespace pqc {

/// Directional-coupler reflectivity with optional measured uncertainty.
struct CouplerSpec {
    double eta = 0.5;
    std::optional<double> uncertainty;

    bool operator==(const CouplerSpec&) const = default;
};

/// Beamsplitter matrix convention. REAL places +sqrt(eta) on the first
/// mode's diagonal and -sqrt(eta) on the second; SYMMETRIC uses the
/// i*sqrt(1-eta) cross terms.
enum class Convention { Real, Symmetric };

struct DirectionalCoupler {
    int mode_a = 1; // 1-based; keeps the +sqrt(eta) diagonal sign
    int mode_b = 2; // carries the -sqrt(eta) sign under Convention::Real
    CouplerSpec coupler;

    bool operator==(const DirectionalCoupler&) const = default;
};

struct PhaseShifter {
    int mode = 1; // 1-based
    double phase = 0.0;

    bool operator==(const PhaseShifter&) const = default;
};

struct Element {
    std::variant<DirectionalCoupler, PhaseShifter> op;
    std::string label; // empty when unnamed

    bool operator==(const Element&) const = default;
};

/// Ordered coupler/phase-shifter sequence over n_modes waveguides.
/// Elements apply input to output in list order.
struct Netlist {
    int n_modes = 0;
    std::vector<Element> elements;

    bool operator==(const Netlist&) const = default;

    /// Indices of elements carrying the given label.
    std::vector<std::size_t> find_label(const std::string& label) const;
    std::vector<std::string> labels() const;
};

/// Dual-rail CNOT mode assignment: rail pairs for control and target plus
/// ancilla modes that must stay empty on success. 1-based mode indices.
struct LogicalEncoding {
    std::pair<int, int> control_modes; // |0>c rail, |1>c rail
    std::pair<int, int> target_modes;  // |0>t rail, |1>t rail
    std::vector<int> ancilla_modes;
};

class parse_error : public std::runtime_error {
  public:
    parse_error(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_ = 0;
};

/// Parse the `.pqc` netlist text format:
///   modes <m>
///   dc <a> <b> <eta> [±<unc>] [#label]
///   ph <mode> <radians> [#label]
/// `#` starts a comment except when it introduces a trailing label on an
/// element line. Throws parse_error with the offending line number.
Netlist parse_netlist(const std::string& text);

/// Emit the netlist in the same format, `# pqc v1` header first, values
/// at 12 significant digits. serialize(parse(x)) reparses identically for
/// files produced by this function.
std::string serialize_netlist(const Netlist& netlist);

/// 2x2 coupler matrix for the chosen convention; unitary to 1e-12 by
/// construction.
Matrix coupler_unitary(const CouplerSpec& coupler, Convention convention);

/// Product of element unitaries embedded in the identity, applied in
/// netlist order.
Matrix assemble_unitary(const Netlist& netlist, Convention convention);

struct CnotCircuit {
    Netlist netlist;
    LogicalEncoding encoding;
};

/// Six-mode post-selected CNOT: modes (ancilla-A, c0, c1, t0, t1,
/// ancilla-B). Elements: half coupler on the target rails, the three
/// third couplers (labels control-third, central-third, lower-third),
/// second half coupler. With all etas nominal (1/2, 1/2, 1/3, 1/3, 1/3)
/// the post-selected action is the CNOT permutation with success 1/9.
/// For Convention::Symmetric the netlist includes compensating -pi/2
/// phases so the assembled unitary matches the Real-convention one.
CnotCircuit cnot_netlist(const CouplerSpec& eta_half_1, const CouplerSpec& eta_half_2,
                         const CouplerSpec& eta_third_control, const CouplerSpec& eta_third_lower_a,
                         const CouplerSpec& eta_third_lower_b,
                         Convention convention = Convention::Real);

} // namespace pqc

#endif
