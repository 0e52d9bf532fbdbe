#include "pqc/metrics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pqc/json_util.hpp"

#include <json.hpp>

namespace pqc {

const std::array<std::string, 4> TruthTable::basis_labels{"00", "01", "10", "11"};

TruthTable permutation_table(const std::array<int, 4>& permutation) {
    TruthTable t;
    for (int i = 0; i < 4; ++i) {
        t.rows[i][permutation[i]] = 1.0;
        t.per_input_success[i] = 1.0;
    }
    return t;
}

TruthTable truth_table(const Netlist& netlist, const LogicalEncoding& encoding,
                       Convention convention) {
    const auto [c0, c1] = encoding.control_modes;
    const auto [t0, t1] = encoding.target_modes;
    std::vector<int> rail_modes{c0, c1, t0, t1};
    for (int anc : encoding.ancilla_modes)
        rail_modes.push_back(anc);
    for (std::size_t i = 0; i < rail_modes.size(); ++i) {
        if (rail_modes[i] < 1 || rail_modes[i] > netlist.n_modes)
            throw std::invalid_argument("truth_table: encoding mode out of range");
        for (std::size_t k = i + 1; k < rail_modes.size(); ++k)
            if (rail_modes[i] == rail_modes[k])
                throw std::invalid_argument("truth_table: encoding modes must be distinct");
    }

    const Matrix u = assemble_unitary(netlist, convention);

    auto rails = [&](int logical) {
        const int control_mode = (logical & 2) ? c1 : c0;
        const int target_mode = (logical & 1) ? t1 : t0;
        return std::pair{control_mode, target_mode};
    };

    auto state_for = [&](int logical) {
        std::vector<int> occ(static_cast<std::size_t>(netlist.n_modes), 0);
        const auto [cm, tm] = rails(logical);
        occ[static_cast<std::size_t>(cm - 1)] += 1;
        occ[static_cast<std::size_t>(tm - 1)] += 1;
        return FockState(occ);
    };

    TruthTable table;
    for (int input = 0; input < 4; ++input) {
        const OutputDistribution dist = evolve(u, state_for(input));
        double success = 0.0;
        std::array<double, 4> row{};
        for (int output = 0; output < 4; ++output) {
            const double p = dist.probability_of(state_for(output));
            row[output] = p;
            success += p;
        }
        if (success <= 0.0)
            throw post_selection_error("truth_table: zero success probability for input " +
                                       TruthTable::basis_labels[input]);
        for (int output = 0; output < 4; ++output)
            table.rows[input][output] = row[output] / success;
        table.per_input_success[input] = success;
    }
    return table;
}

double logical_fidelity(const TruthTable& table, const std::array<int, 4>& target) {
    double f = 0.0;
    for (int i = 0; i < 4; ++i)
        f += table.rows[i][target[i]];
    return f / 4.0;
}

double similarity(const TruthTable& ideal, const TruthTable& measured) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            s += std::sqrt(ideal.rows[i][j] * measured.rows[i][j]);
    return s * s / 16.0;
}

std::string truth_table_to_json(const TruthTable& table) {
    nlohmann::json j;
    j["basis"] = TruthTable::basis_labels;
    auto rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        auto r = nlohmann::json::array();
        for (double v : row)
            r.push_back(round_sig(v));
        rows.push_back(r);
    }
    j["rows"] = rows;
    auto success = nlohmann::json::array();
    for (double v : table.per_input_success)
        success.push_back(round_sig(v));
    j["success"] = success;
    return j.dump(2) + "\n";
}

TruthTable truth_table_from_json(const std::string& json_text) {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    const auto basis = j.at("basis").get<std::vector<std::string>>();
    for (int i = 0; i < 4; ++i)
        if (basis.at(i) != TruthTable::basis_labels[i])
            throw std::runtime_error("truth table json: unexpected basis ordering");
    TruthTable t;
    const auto& rows = j.at("rows");
    if (rows.size() != 4)
        throw std::runtime_error("truth table json: need 4 rows");
    for (int i = 0; i < 4; ++i) {
        if (rows.at(i).size() != 4)
            throw std::runtime_error("truth table json: need 4 columns per row");
        for (int k = 0; k < 4; ++k)
            t.rows[i][k] = rows.at(i).at(k).get<double>();
    }
    const auto& success = j.at("success");
    for (int i = 0; i < 4; ++i)
        t.per_input_success[i] = success.at(i).get<double>();
    return t;
}

void save_truth_table(const TruthTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << truth_table_to_json(table);
}

TruthTable load_truth_table(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return truth_table_from_json(buf.str());
}

} // namespace pqc
