#include "pqc/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace pqc {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

double parse_double(const std::string& tok, int line, const char* what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw parse_error(line, std::string("malformed ") + what + " '" + tok + "'");
    }
    if (pos != tok.size())
        throw parse_error(line, std::string("malformed ") + what + " '" + tok + "'");
    return v;
}

int parse_mode_index(const std::string& tok, int line, int n_modes) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(tok, &pos);
    } catch (const std::exception&) {
        throw parse_error(line, "malformed mode index '" + tok + "'");
    }
    if (pos != tok.size())
        throw parse_error(line, "malformed mode index '" + tok + "'");
    if (v < 1 || v > n_modes)
        throw parse_error(line, "mode index " + tok + " out of range [1, " +
                                    std::to_string(n_modes) + "]");
    return static_cast<int>(v);
}

constexpr const char* plus_minus = "±";

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

std::vector<std::size_t> Netlist::find_label(const std::string& label) const {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (elements[i].label == label)
            hits.push_back(i);
    return hits;
}

std::vector<std::string> Netlist::labels() const {
    std::vector<std::string> out;
    for (const Element& e : elements)
        if (!e.label.empty())
            out.push_back(e.label);
    return out;
}

Netlist parse_netlist(const std::string& text) {
    Netlist netlist;
    bool saw_modes = false;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#')
            continue;

        // trailing "#..." on a directive line is the element label
        std::string label;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            label = trim(line.substr(hash + 1));
            line = trim(line.substr(0, hash));
        }

        const std::vector<std::string> tok = split_ws(line);
        if (tok.empty())
            continue;

        if (tok[0] == "modes") {
            if (saw_modes)
                throw parse_error(line_no, "duplicate 'modes' directive");
            if (tok.size() != 2)
                throw parse_error(line_no, "expected 'modes <m>'");
            const double m = parse_double(tok[1], line_no, "mode count");
            if (m < 1 || m != std::floor(m))
                throw parse_error(line_no, "mode count must be a positive integer");
            netlist.n_modes = static_cast<int>(m);
            saw_modes = true;
            continue;
        }
        if (!saw_modes)
            throw parse_error(line_no, "first directive must be 'modes <m>'");

        if (tok[0] == "dc") {
            if (tok.size() < 4 || tok.size() > 5)
                throw parse_error(line_no, "expected 'dc <a> <b> <eta> [" + std::string(plus_minus) +
                                               "<unc>]'");
            DirectionalCoupler dc;
            dc.mode_a = parse_mode_index(tok[1], line_no, netlist.n_modes);
            dc.mode_b = parse_mode_index(tok[2], line_no, netlist.n_modes);
            if (dc.mode_a == dc.mode_b)
                throw parse_error(line_no, "coupler modes must differ");
            dc.coupler.eta = parse_double(tok[3], line_no, "reflectivity");
            if (dc.coupler.eta < 0.0 || dc.coupler.eta > 1.0)
                throw parse_error(line_no, "reflectivity out of range [0, 1]");
            if (tok.size() == 5) {
                std::string unc = tok[4];
                if (unc.rfind(plus_minus, 0) == 0)
                    unc = unc.substr(std::string(plus_minus).size());
                else
                    throw parse_error(line_no, "expected '" + std::string(plus_minus) +
                                                   "<unc>' after reflectivity");
                const double u = parse_double(unc, line_no, "uncertainty");
                if (u < 0.0)
                    throw parse_error(line_no, "uncertainty must be non-negative");
                dc.coupler.uncertainty = u;
            }
            netlist.elements.push_back({dc, label});
            continue;
        }

        if (tok[0] == "ph") {
            if (tok.size() != 3)
                throw parse_error(line_no, "expected 'ph <mode> <radians>'");
            PhaseShifter ph;
            ph.mode = parse_mode_index(tok[1], line_no, netlist.n_modes);
            ph.phase = parse_double(tok[2], line_no, "phase");
            netlist.elements.push_back({ph, label});
            continue;
        }

        throw parse_error(line_no, "unknown directive '" + tok[0] + "'");
    }

    if (!saw_modes)
        throw parse_error(line_no == 0 ? 1 : line_no, "missing 'modes' directive");
    return netlist;
}

std::string serialize_netlist(const Netlist& netlist) {
    std::ostringstream out;
    out << "# pqc v1\n";
    out << "modes " << netlist.n_modes << "\n";
    for (const Element& e : netlist.elements) {
        if (const auto* dc = std::get_if<DirectionalCoupler>(&e.op)) {
            out << "dc " << dc->mode_a << ' ' << dc->mode_b << ' ' << format_number(dc->coupler.eta);
            if (dc->coupler.uncertainty)
                out << ' ' << plus_minus << format_number(*dc->coupler.uncertainty);
        } else {
            const auto& ph = std::get<PhaseShifter>(e.op);
            out << "ph " << ph.mode << ' ' << format_number(ph.phase);
        }
        if (!e.label.empty())
            out << " #" << e.label;
        out << "\n";
    }
    return out.str();
}

Matrix coupler_unitary(const CouplerSpec& coupler, Convention convention) {
    const double t = std::sqrt(coupler.eta);
    const double r = std::sqrt(1.0 - coupler.eta);
    Matrix u(2, 2);
    if (convention == Convention::Real) {
        u << t, r, r, -t;
    } else {
        u << Complex(t, 0), Complex(0, r), Complex(0, r), Complex(t, 0);
    }
    return u;
}

Matrix assemble_unitary(const Netlist& netlist, Convention convention) {
    Matrix u = Matrix::Identity(netlist.n_modes, netlist.n_modes);
    for (const Element& e : netlist.elements) {
        if (const auto* dc = std::get_if<DirectionalCoupler>(&e.op)) {
            const Matrix b = coupler_unitary(dc->coupler, convention);
            const int a = dc->mode_a - 1;
            const int c = dc->mode_b - 1;
            // embed the 2x2 block: rows (a,c) of U get mixed
            const Matrix row_a = u.row(a);
            const Matrix row_c = u.row(c);
            u.row(a) = b(0, 0) * row_a + b(0, 1) * row_c;
            u.row(c) = b(1, 0) * row_a + b(1, 1) * row_c;
        } else {
            const auto& ph = std::get<PhaseShifter>(e.op);
            u.row(ph.mode - 1) *= std::exp(Complex(0.0, ph.phase));
        }
    }
    return u;
}

CnotCircuit cnot_netlist(const CouplerSpec& eta_half_1, const CouplerSpec& eta_half_2,
                         const CouplerSpec& eta_third_control, const CouplerSpec& eta_third_lower_a,
                         const CouplerSpec& eta_third_lower_b, Convention convention) {
    // modes: 1 ancilla-A, 2 c0, 3 c1, 4 t0, 5 t1, 6 ancilla-B
    CnotCircuit circuit;
    circuit.netlist.n_modes = 6;
    circuit.encoding.control_modes = {2, 3};
    circuit.encoding.target_modes = {4, 5};
    circuit.encoding.ancilla_modes = {1, 6};

    auto add_dc = [&](int a, int b, const CouplerSpec& spec, const std::string& label) {
        if (convention == Convention::Symmetric) {
            // -pi/2 phases on the minus-sign port turn the symmetric
            // coupler into the real-convention matrix
            const double comp = -std::numbers::pi / 2.0;
            circuit.netlist.elements.push_back({PhaseShifter{b, comp}, ""});
            circuit.netlist.elements.push_back({DirectionalCoupler{a, b, spec}, label});
            circuit.netlist.elements.push_back({PhaseShifter{b, comp}, ""});
        } else {
            circuit.netlist.elements.push_back({DirectionalCoupler{a, b, spec}, label});
        }
    };

    add_dc(4, 5, eta_half_1, "half-1");
    add_dc(2, 1, eta_third_control, "control-third");
    add_dc(4, 3, eta_third_lower_a, "central-third");
    add_dc(5, 6, eta_third_lower_b, "lower-third");
    add_dc(4, 5, eta_half_2, "half-2");
    return circuit;
}

} // namespace pqc
