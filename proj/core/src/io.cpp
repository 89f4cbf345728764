#include "qcorr/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qcorr {

using nlohmann::json;

std::string format_g12(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of -0 so entropies of pure states print as 0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double parse_number(const std::string& s) {
    auto parse_plain = [](const std::string& t) {
        size_t used = 0;
        double v;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a number: '" + t + "'");
        }
        while (used < t.size() && std::isspace(static_cast<unsigned char>(t[used])))
            ++used;
        if (used != t.size())
            throw std::invalid_argument("trailing characters in number: '" + t + "'");
        return v;
    };
    const size_t slash = s.find('/');
    if (slash == std::string::npos) return parse_plain(s);
    const double num = parse_plain(s.substr(0, slash));
    const double den = parse_plain(s.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return num / den;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.empty()) throw std::runtime_error("empty csv file " + path);

    CsvTable table;
    size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        const std::string line = text.substr(pos, nl - pos);
        pos = nl + 1;
        std::vector<std::string> cells;
        size_t c = 0;
        for (;;) {
            const size_t comma = line.find(',', c);
            if (comma == std::string::npos) {
                cells.push_back(line.substr(c));
                break;
            }
            cells.push_back(line.substr(c, comma - c));
            c = comma + 1;
        }
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

void write_fig1_csv(const std::string& path, const std::vector<Fig1Row>& rows) {
    std::vector<std::vector<std::string>> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
        out.push_back({format_g12(r.mu), format_g12(r.lambda), format_g12(r.p2_norm)});
    write_csv(path, {"mu", "lambda", "p2_norm"}, out);
}

void write_fig2_csv(const std::string& path, const std::vector<Fig2Row>& rows) {
    std::vector<std::vector<std::string>> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
        out.push_back({format_g12(r.mu), format_g12(r.lambda), format_g12(r.mu_c),
                       format_g12(r.theta_opt), format_g12(r.linear_entropy),
                       format_g12(r.vn_entropy)});
    write_csv(path, {"mu", "lambda", "mu_c", "theta_opt", "linear_entropy", "vn_entropy"},
              out);
}

void write_fig3_csv(const std::string& path, const std::vector<Fig3Row>& rows) {
    std::vector<std::vector<std::string>> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
        out.push_back({format_g12(r.p), format_g12(r.s_p),
                       r.conjectured ? "conjectured" : "random"});
    write_csv(path, {"p", "s_p", "source"}, out);
}

void write_sweep_csv(const std::string& path, const std::vector<SweepCell>& cells) {
    std::vector<std::vector<std::string>> out;
    out.reserve(cells.size());
    for (const auto& c : cells)
        out.push_back({format_g12(c.mu), format_g12(c.lambda), c.order.str(),
                       format_g12(c.conjectured), format_g12(c.best_random),
                       format_g12(c.gap), c.violation ? "1" : "0"});
    write_csv(path, {"mu", "lambda", "p", "conjectured", "best_random", "gap",
                     "violation_flag"},
              out);
}

void write_suite_csv(const std::string& path, const std::vector<SuiteReport>& reports) {
    std::vector<std::vector<std::string>> out;
    out.reserve(reports.size());
    for (const auto& r : reports)
        out.push_back({r.name, std::to_string(r.passes), std::to_string(r.fails)});
    write_csv(path, {"suite", "passes", "fails"}, out);
}

namespace {

json amp_pair(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex pair_amp(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::runtime_error(std::string(what) + ": expected [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json parse_checked(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(e.what());  // message carries the byte position
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

std::string state_to_json(const PureState4& psi) {
    json j;
    j["basis"] = "computational";
    json amps = json::array();
    for (const auto& a : psi.amplitudes()) amps.push_back(amp_pair(a));
    j["amplitudes"] = amps;
    return j.dump(2) + "\n";
}

PureState4 state_from_json(const std::string& text) {
    const json j = parse_checked(text);
    if (!j.is_object() || !j.contains("amplitudes"))
        throw std::runtime_error("state json: missing 'amplitudes'");
    const json& amps = j["amplitudes"];
    if (!amps.is_array() || amps.size() != 4)
        throw std::runtime_error("state json: 'amplitudes' must hold 4 entries");
    std::array<Complex, 4> a;
    for (size_t i = 0; i < 4; ++i) a[i] = pair_amp(amps[i], "state json amplitude");
    std::string basis = "computational";
    if (j.contains("basis")) {
        if (!j["basis"].is_string())
            throw std::runtime_error("state json: 'basis' must be a string");
        basis = j["basis"].get<std::string>();
    }
    if (basis == "computational") return PureState4::from_amplitudes(a);
    if (basis == "bell") {
        // amplitudes are coefficients over |b_k> = (I (x) sigma_k)|b0>
        std::array<Complex, 4> comp{};
        for (int k = 0; k < 4; ++k) {
            const PureState4 b = bell_state(k);
            for (size_t i = 0; i < 4; ++i)
                comp[i] += a[static_cast<size_t>(k)] * b.amplitudes()[i];
        }
        return PureState4::from_amplitudes(comp);
    }
    throw std::runtime_error("state json: basis must be 'computational' or 'bell', got '" +
                             basis + "'");
}

void write_state_json(const std::string& path, const PureState4& psi) {
    write_text(path, state_to_json(psi));
}

PureState4 read_state_json(const std::string& path) {
    return state_from_json(read_text(path));
}

std::string channel_to_json(const ChannelParams& cp) {
    json j;
    j["mu"] = cp.mu;
    j["lambda"] = cp.lambda;
    json u = json::array();
    for (int r = 0; r < 2; ++r) {
        json row = json::array();
        for (int c = 0; c < 2; ++c) row.push_back(amp_pair(cp.beta.unitary()(r, c)));
        u.push_back(row);
    }
    j["beta_unitary"] = u;
    return j.dump(2) + "\n";
}

ChannelParams channel_from_json(const std::string& text) {
    const json j = parse_checked(text);
    if (!j.is_object() || !j.contains("mu") || !j.contains("lambda"))
        throw std::runtime_error("channel json: need 'mu' and 'lambda'");
    if (!j["mu"].is_number() || !j["lambda"].is_number())
        throw std::runtime_error("channel json: 'mu' and 'lambda' must be numbers");
    const double mu = j["mu"].get<double>();
    const double lambda = j["lambda"].get<double>();
    if (!j.contains("beta_unitary")) return ChannelParams::bell0(mu, lambda);
    const json& u = j["beta_unitary"];
    if (!u.is_array() || u.size() != 2 || !u[0].is_array() || u[0].size() != 2 ||
        !u[1].is_array() || u[1].size() != 2)
        throw std::runtime_error("channel json: 'beta_unitary' must be 2x2");
    CMatrix m(2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            m(r, c) = pair_amp(u[static_cast<size_t>(r)][static_cast<size_t>(c)],
                               "channel json unitary entry");
    return ChannelParams(mu, lambda, MaxEntangled(m));
}

std::string sweep_cell_to_json(const SweepCell& cell) {
    json j;
    j["mu"] = cell.mu;
    j["lambda"] = cell.lambda;
    j["p"] = cell.order.str();
    j["conjectured"] = cell.conjectured;
    j["best_random"] = cell.best_random;
    j["gap"] = cell.gap;
    j["violation"] = cell.violation;
    j["theta_opt"] = cell.theta_opt;
    j["linear_entropy"] = cell.linear_entropy;
    j["vn_entropy"] = cell.vn_entropy;
    json amps = json::array();
    for (const auto& a : cell.best_state) amps.push_back(amp_pair(a));
    j["best_state"] = amps;
    return j.dump();
}

std::string perturbation_to_json(const PerturbationReport& rep) {
    json j;
    j["mu"] = rep.mu;
    j["lambda"] = rep.lambda;
    j["theta"] = rep.rp.theta;
    j["phi"] = rep.rp.phi;
    j["a_mod"] = rep.rp.a_mod;
    j["direction"] = rep.direction == ShiftDirection::c_phi ? "c_phi" : "a_sq";
    j["epsilon"] = rep.epsilon;
    j["base"] = json::array({rep.base[0], rep.base[1], rep.base[2]});
    j["predicted_shift"] = json::array(
        {rep.predicted_shift[0], rep.predicted_shift[1], rep.predicted_shift[2]});
    j["measured_shift"] = json::array(
        {rep.measured_shift[0], rep.measured_shift[1], rep.measured_shift[2]});
    j["max_shift_error"] = rep.max_shift_error;
    j["degenerate"] = rep.degenerate;
    j["mu_c"] = rep.mu_c;
    j["mu_inner"] = rep.mu_inner;
    json rows = json::array();
    for (const auto& r : rep.rows) {
        json row;
        if (std::isinf(r.p))
            row["p"] = "inf";
        else
            row["p"] = r.p;
        row["predicted_sign"] = r.predicted_sign;
        row["measured_sign"] = r.measured_sign;
        row["measured_change"] = r.measured_change;
        row["first_order"] = r.first_order;
        row["bracket"] = r.bracket;
        row["term_main"] = r.term_main;
        row["term_cross"] = r.term_cross;
        row["acute"] = json::array({r.acute1, r.acute3});
        row["grave"] = json::array({r.grave1, r.grave3});
        row["acute2"] = r.acute2;
        row["grave2"] = r.grave2;
        row["mvt_close"] = r.mvt_close;
        row["mid_above"] = r.mid_above;
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j.dump();
}

std::string suite_to_json(const SuiteReport& rep) {
    json j;
    j["suite"] = rep.name;
    j["passes"] = rep.passes;
    j["fails"] = rep.fails;
    j["ok"] = rep.ok();
    j["messages"] = rep.messages;
    return j.dump();
}

void write_violations_jsonl(const std::string& path,
                            const std::vector<SweepCell>& cells) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (const auto& c : cells)
        if (c.violation) out << sweep_cell_to_json(c) << "\n";
    if (!out) throw std::runtime_error("write failed for " + path);
}

void write_perturbation_jsonl(const std::string& path,
                              const std::vector<PerturbationReport>& reps) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (const auto& r : reps) out << perturbation_to_json(r) << "\n";
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace qcorr
