#ifndef PQC_METRICS_HPP
#define PQC_METRICS_HPP

#include <array>
#include <string>

#include "pqc/circuit.hpp"
#include "pqc/fock.hpp"

namespace pqc {

/// Post-selected logical truth table. Rows are inputs, columns outputs,
/// both ordered 00, 01, 10, 11 with the control bit first. Each row is a
/// renormalized conditional distribution; per-input success probabilities
/// are kept separately.
struct TruthTable {
    std::array<std::array<double, 4>, 4> rows{};
    std::array<double, 4> per_input_success{};

    static const std::array<std::string, 4> basis_labels;

    double operator()(int input, int output) const { return rows[input][output]; }
};

/// Identity and CNOT permutations on the logical basis (input -> output).
inline constexpr std::array<int, 4> identity_permutation{0, 1, 2, 3};
inline constexpr std::array<int, 4> cnot_permutation{0, 1, 3, 2};

/// Permutation truth table (rows one-hot on the permuted column).
TruthTable permutation_table(const std::array<int, 4>& permutation);

/// Raised when a logical input cannot pass post-selection at all.
class post_selection_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Simulate the four logical inputs through the netlist: inject one
/// photon per rail, evolve, post-select on one photon in the control
/// pair, one in the target pair, none in the ancillae. Throws
/// post_selection_error when any input has zero success probability,
/// naming the input.
TruthTable truth_table(const Netlist& netlist, const LogicalEncoding& encoding,
                       Convention convention = Convention::Real);

/// Mean over inputs of the probability mass on the target output.
double logical_fidelity(const TruthTable& table, const std::array<int, 4>& target);

/// Similarity between two row-stochastic tables:
/// (sum_ij sqrt(I_ij * M_ij))^2 / 16. Equals 1 iff the tables match.
double similarity(const TruthTable& ideal, const TruthTable& measured);

/// JSON with explicit basis ordering, 12-significant-digit values.
std::string truth_table_to_json(const TruthTable& table);
TruthTable truth_table_from_json(const std::string& json_text);
void save_truth_table(const TruthTable& table, const std::string& path);
TruthTable load_truth_table(const std::string& path);

} // namespace pqc

#endif
