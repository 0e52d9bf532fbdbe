#include "pqc/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pqc {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

// Modes listed once per photon, e.g. (2,0,1) -> [0,0,2].
std::vector<int> expand_modes(const FockState& s) {
    std::vector<int> modes;
    modes.reserve(static_cast<std::size_t>(s.photons()));
    for (int m = 0; m < s.modes(); ++m)
        for (int k = 0; k < s[m]; ++k)
            modes.push_back(m);
    return modes;
}

double occupation_factorial_product(const FockState& s) {
    double p = 1.0;
    for (int m = 0; m < s.modes(); ++m)
        p *= factorial(s[m]);
    return p;
}

Complex amplitude_unchecked(const Matrix& u, const FockState& input, const FockState& output) {
    const int n = input.photons();
    if (n == 0)
        return 1.0;
    const std::vector<int> cols = expand_modes(input);
    const std::vector<int> rows = expand_modes(output);
    Matrix sub(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            sub(r, c) = u(rows[r], cols[c]);
    const double norm =
        std::sqrt(occupation_factorial_product(input) * occupation_factorial_product(output));
    return permanent(sub) / norm;
}

template <bool UseOpenMp>
OutputDistribution evolve_impl(const Matrix& u, const FockState& input, double unitarity_tol) {
    if (u.rows() != u.cols())
        throw std::invalid_argument("evolve: unitary must be square");
    if (u.rows() != input.modes())
        throw std::invalid_argument("evolve: mode count mismatch between unitary and input state");
    const double dev = unitarity_deviation(u);
    if (dev > unitarity_tol) {
        std::ostringstream msg;
        msg << "evolve: matrix deviates from unitarity by " << dev << " (tolerance " << unitarity_tol
            << ")";
        throw std::invalid_argument(msg.str());
    }

    const FockBasis basis(input.photons(), input.modes());
    std::vector<OutputDistribution::Entry> entries(basis.size());

#pragma omp parallel for schedule(static) if (UseOpenMp)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(basis.size()); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const Complex a = amplitude_unchecked(u, input, basis[idx]);
        entries[idx] = {basis[idx], a, std::norm(a)};
    }
    return OutputDistribution(std::move(entries));
}

} // namespace

FockState::FockState(std::vector<int> occupations) : occ_(std::move(occupations)) {
    for (int n : occ_)
        if (n < 0)
            throw std::invalid_argument("FockState: negative occupation");
}

int FockState::photons() const {
    int n = 0;
    for (int k : occ_)
        n += k;
    return n;
}

std::string FockState::str() const {
    std::ostringstream out;
    out << '|';
    for (std::size_t i = 0; i < occ_.size(); ++i) {
        if (i)
            out << ',';
        out << occ_[i];
    }
    out << '>';
    return out.str();
}

FockBasis::FockBasis(int n_photons, int n_modes) : photons_(n_photons), modes_(n_modes) {
    if (n_modes < 1)
        throw std::invalid_argument("FockBasis: need at least one mode");
    if (n_photons < 0)
        throw std::invalid_argument("FockBasis: negative photon number");

    // lexicographic-descending walk from (n,0,...,0) to (0,...,0,n)
    std::vector<int> occ(static_cast<std::size_t>(n_modes), 0);
    occ[0] = n_photons;
    while (true) {
        states_.emplace_back(occ);
        // find rightmost non-last mode with a photon to move
        int k = n_modes - 2;
        while (k >= 0 && occ[static_cast<std::size_t>(k)] == 0)
            --k;
        if (k < 0)
            break;
        --occ[static_cast<std::size_t>(k)];
        int carry = occ[static_cast<std::size_t>(n_modes - 1)] + 1;
        occ[static_cast<std::size_t>(n_modes - 1)] = 0;
        occ[static_cast<std::size_t>(k + 1)] = carry;
    }
}

std::optional<std::size_t> FockBasis::index_of(const FockState& s) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), s,
                               [](const FockState& a, const FockState& b) { return a > b; });
    if (it == states_.end() || !(*it == s))
        return std::nullopt;
    return static_cast<std::size_t>(it - states_.begin());
}

FockBasis enumerate_basis(int n_photons, int n_modes) { return FockBasis(n_photons, n_modes); }

double OutputDistribution::probability_of(const FockState& s) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
                               [](const Entry& e, const FockState& t) { return e.state > t; });
    if (it == entries_.end() || !(it->state == s))
        return 0.0;
    return it->probability;
}

double OutputDistribution::total_probability() const {
    double t = 0.0;
    for (const Entry& e : entries_)
        t += e.probability;
    return t;
}

double unitarity_deviation(const Matrix& u) {
    const Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

Complex transition_amplitude(const Matrix& u, const FockState& input, const FockState& output) {
    if (u.rows() != u.cols())
        throw std::invalid_argument("transition_amplitude: unitary must be square");
    if (u.rows() != input.modes() || u.rows() != output.modes())
        throw std::invalid_argument("transition_amplitude: mode count mismatch");
    if (input.photons() != output.photons())
        throw std::invalid_argument("transition_amplitude: photon number mismatch between " +
                                    input.str() + " and " + output.str());
    return amplitude_unchecked(u, input, output);
}

OutputDistribution evolve(const Matrix& u, const FockState& input, double unitarity_tol) {
    return evolve_impl<true>(u, input, unitarity_tol);
}

OutputDistribution evolve_serial(const Matrix& u, const FockState& input, double unitarity_tol) {
    return evolve_impl<false>(u, input, unitarity_tol);
}

PostSelection post_select(const OutputDistribution& dist, const ModePattern& pattern) {
    PostSelection result;
    std::vector<OutputDistribution::Entry> kept;
    for (const auto& e : dist) {
        if (e.state.modes() != static_cast<int>(pattern.size()))
            throw std::invalid_argument("post_select: pattern length differs from mode count");
        bool match = true;
        for (int m = 0; m < e.state.modes(); ++m) {
            const auto& want = pattern[static_cast<std::size_t>(m)];
            if (want && *want != e.state[m]) {
                match = false;
                break;
            }
        }
        if (match) {
            kept.push_back(e);
            result.success_probability += e.probability;
        }
    }
    if (result.success_probability > 0.0) {
        const double inv = 1.0 / result.success_probability;
        const double amp_scale = std::sqrt(inv);
        for (auto& e : kept) {
            e.probability *= inv;
            e.amplitude *= amp_scale;
        }
    } else {
        kept.clear();
    }
    result.distribution = OutputDistribution(std::move(kept));
    return result;
}

} // namespace pqc
