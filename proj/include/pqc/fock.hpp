#ifndef PQC_FOCK_HPP
#define PQC_FOCK_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "pqc/permanent.hpp"

namespace pqc {

/// Occupation-number state: photon count per waveguide mode.
class FockState {
  public:
    FockState() = default;
    explicit FockState(std::vector<int> occupations);

    int modes() const { return static_cast<int>(occ_.size()); }
    int photons() const;
    int operator[](int mode) const { return occ_[mode]; }
    const std::vector<int>& occupations() const { return occ_; }

    bool operator==(const FockState&) const = default;
    auto operator<=>(const FockState&) const = default;

    std::string str() const; // e.g. "|1,0,2>"

  private:
    std::vector<int> occ_;
};

/// All n-photon states over m modes in lexicographic-descending order:
/// (n,0,...,0) first, (0,...,0,n) last. Size is binomial(n+m-1, n).
class FockBasis {
  public:
    FockBasis(int n_photons, int n_modes);

    int photons() const { return photons_; }
    int modes() const { return modes_; }
    std::size_t size() const { return states_.size(); }
    const FockState& operator[](std::size_t i) const { return states_[i]; }
    const std::vector<FockState>& states() const { return states_; }

    /// Position of a state in the basis order; nullopt if not a member.
    std::optional<std::size_t> index_of(const FockState& s) const;

    auto begin() const { return states_.begin(); }
    auto end() const { return states_.end(); }

  private:
    int photons_ = 0;
    int modes_ = 0;
    std::vector<FockState> states_;
};

FockBasis enumerate_basis(int n_photons, int n_modes);

/// Probabilities (and retained amplitudes) over an n-photon basis, stored
/// in basis order so iteration is deterministic.
class OutputDistribution {
  public:
    struct Entry {
        FockState state;
        Complex amplitude; // zero when only probabilities are meaningful
        double probability;
    };

    OutputDistribution() = default;
    explicit OutputDistribution(std::vector<Entry> entries) : entries_(std::move(entries)) {}

    std::size_t size() const { return entries_.size(); }
    const Entry& operator[](std::size_t i) const { return entries_[i]; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    /// Probability of an exact state; 0 if absent.
    double probability_of(const FockState& s) const;
    double total_probability() const;

  private:
    std::vector<Entry> entries_;
};

/// Per-mode post-selection constraint: exact photon count or "any".
using ModePattern = std::vector<std::optional<int>>;

/// Transition amplitude <output| U(hat) |input> for an m-mode unitary:
/// permanent of U with columns repeated per input occupation and rows per
/// output occupation, normalized by sqrt of the occupation factorials.
/// Throws if the photon numbers differ or shapes are inconsistent.
Complex transition_amplitude(const Matrix& u, const FockState& input, const FockState& output);

/// Full output distribution of a pure Fock input under U. Rejects U whose
/// deviation from unitarity exceeds `unitarity_tol` (max-norm of U*U - I).
/// Evaluates basis states across OpenMP threads; per-entry results are
/// identical to evolve_serial.
OutputDistribution evolve(const Matrix& u, const FockState& input, double unitarity_tol = 1e-6);

/// Single-threaded reference implementation of evolve.
OutputDistribution evolve_serial(const Matrix& u, const FockState& input, double unitarity_tol = 1e-6);

struct PostSelection {
    OutputDistribution distribution; // renormalized over matching states
    double success_probability = 0.0;
};

/// Keep only states matching the per-mode pattern; renormalize. A pattern
/// with no matching populated state yields success 0 and an empty
/// distribution.
PostSelection post_select(const OutputDistribution& dist, const ModePattern& pattern);

/// Max-norm deviation of U*U from the identity.
double unitarity_deviation(const Matrix& u);

} // namespace pqc

#endif
