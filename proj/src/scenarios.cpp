#include "qtt/scenarios.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

namespace qtt {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        const auto piece = trim(s.substr(start, pos == std::string_view::npos ? s.size() - start : pos - start));
        if (!piece.empty()) out.push_back(piece);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double to_number(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

bool to_bool(const std::string& s) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw std::invalid_argument("not a boolean: '" + s + "'");
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return v;
}

SweepConfig transient(std::string name, std::vector<std::string> states, std::vector<double> times) {
    SweepConfig c;
    c.scenario = std::move(name);
    c.tb_grid = default_tb_grid();
    c.states = std::move(states);
    c.times = std::move(times);
    return c;
}

}  // namespace

std::vector<double> default_tb_grid() {
    std::vector<double> g;
    const double lo = std::log(0.004), hi = std::log(0.8);
    for (int i = 0; i < 150; ++i) g.push_back(i == 149 ? 0.8 : std::exp(lo + (hi - lo) * i / 149.0));
    g.front() = 0.004;
    for (int i = 0; i < 50; ++i) g.push_back(0.10 + (i + 0.5) * 0.06 / 50.0);
    std::sort(g.begin(), g.end());
    return g;
}

std::vector<double> parse_grid(std::string_view text) {
    const std::string t = trim(text);
    if (t == "default") return default_tb_grid();
    if (t.rfind("log:", 0) == 0 || t.rfind("lin:", 0) == 0) {
        const auto parts = split(t.substr(4), ':');
        if (parts.size() != 3) throw std::invalid_argument("grid: expected <kind>:<a>:<b>:<n>, got '" + t + "'");
        const double a = to_number(parts[0]), b = to_number(parts[1]);
        const double n_real = to_number(parts[2]);
        const int n = static_cast<int>(n_real);
        if (n < 1 || n != n_real) throw std::invalid_argument("grid: point count must be a positive integer");
        if (t[1] == 'i') return linspace(a, b, n);
        if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("grid: log spacing needs positive bounds");
        auto v = linspace(std::log(a), std::log(b), n);
        for (auto& x : v) x = std::exp(x);
        v.front() = a;
        v.back() = b;
        return v;
    }
    std::vector<double> v;
    for (const auto& p : split(t, ',')) v.push_back(to_number(p));
    if (v.empty()) throw std::invalid_argument("grid: empty");
    return v;
}

const std::vector<ScenarioInfo>& scenario_catalog() {
    static const std::vector<ScenarioInfo> catalog{
        {"steady-sweep", "F1", "steady-state alpha_A, alpha_C vs T_B; dJB/dTB sign change flagged", false},
        {"ghz-transient", "F1", "GHZ initial state, alpha vs T_B at t = 0.1, 0.3, 0.8, 3, 6, 10", false},
        {"w-transient", "-", "W initial state, alpha vs T_B at the default times", false},
        {"k000-transient", "-", "|000> initial state, alpha vs T_B at the default times", false},
        {"k001-transient", "F2", "|001> initial state, alpha vs T_B at the default times", false},
        {"k011-transient", "F3", "|011> initial state, alpha vs T_B at the default times", false},
        {"random-states", "F4", "two random states per scan class, alpha vs T_B at t = 0.1", false},
        {"necessarily-transient", "F5", "GHZ', AB:C', W', Product' at t = 0.1 over T_B in (0.004, 0.8]", false},
        {"time-scan", "F6", "GHZ' and W', alpha vs t at T_B = 0.05, 0.13, 0.26, 0.36", false},
        {"random-scan", "F7a", "7 classes x 50 Haar samples at t = 0.1; alpha_gap vs T_B", false},
        {"random-time-scan", "F7b", "7 classes x 50 Haar samples at T_B = 0.08; alpha_gap vs t", false},
        {"identity-check", "-", "transient sum-rule residual for the paradigm states at t = 0.1", true},
    };
    return catalog;
}

void write_catalog(std::ostream& os) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& s : scenario_catalog()) {
        nlohmann::ordered_json e;
        e["name"] = s.name;
        e["figure"] = s.figure;
        e["description"] = s.description;
        e["schema"] = std::string(kCsvSchema) + (s.identity_columns ? "+identity" : "");
        e["columns"] = csv_columns(s.identity_columns);
        j.push_back(e);
    }
    os << j.dump(2) << '\n';
}

SweepConfig scenario_config(std::string_view name) {
    const std::vector<std::string> paradigms{"GHZ", "W", "k000", "k001", "k011"};
    if (name == "steady-sweep") {
        SweepConfig c;
        c.scenario = "steady-sweep";
        c.tb_grid = default_tb_grid();
        c.steady = true;
        return c;
    }
    if (name == "ghz-transient") return transient("ghz-transient", {"GHZ"}, kDefaultTimes);
    if (name == "w-transient") return transient("w-transient", {"W"}, kDefaultTimes);
    if (name == "k000-transient") return transient("k000-transient", {"k000"}, kDefaultTimes);
    if (name == "k001-transient") return transient("k001-transient", {"k001"}, kDefaultTimes);
    if (name == "k011-transient") return transient("k011-transient", {"k011"}, kDefaultTimes);
    if (name == "random-states") return transient("random-states", {"random:all:2"}, {0.1});
    if (name == "necessarily-transient") {
        return transient("necessarily-transient", {"GHZ'", "AB:C'", "W'", "Product'"}, {0.1});
    }
    if (name == "time-scan") {
        auto c = transient("time-scan", {"GHZ'", "W'"}, linspace(0.05, 10.0, 200));
        c.tb_grid = {0.05, 0.13, 0.26, 0.36};
        return c;
    }
    if (name == "random-scan") return transient("random-scan", {"random:all:50"}, {0.1});
    if (name == "random-time-scan") {
        auto c = transient("random-time-scan", {"random:all:50"}, linspace(0.1, 10.0, 100));
        c.tb_grid = {0.08};
        return c;
    }
    if (name == "identity-check") {
        auto c = transient("identity-check", paradigms, {0.1});
        c.identity_columns = true;
        return c;
    }
    throw std::invalid_argument("unknown scenario: " + std::string(name));
}

void apply_config_file(SweepConfig& cfg, const std::filesystem::path& path) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(path.string(), tree);
    } catch (const pt::ini_parser_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    static const std::set<std::string> known{
        "scenario.name", "model.t_a",   "model.t_c",     "model.omega_ab", "model.omega_bc", "model.omega_ca",
        "model.kappa",   "model.zero_frequency",         "grid.t_b",       "grid.times",     "states.initial",
        "numerics.h",    "numerics.dt", "run.seed",      "run.jobs",       "run.out",        "run.identity_columns"};
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw std::invalid_argument("config: key '" + section + "' outside a section");
        for (const auto& [key, value] : body) {
            const std::string full = section + "." + key;
            if (!known.count(full)) throw std::invalid_argument("config: unknown key '" + full + "'");
            const std::string v = trim(value.data());
            try {
                if (full == "scenario.name") cfg.scenario = v;
                else if (full == "model.t_a") cfg.t_a = to_number(v);
                else if (full == "model.t_c") cfg.t_c = to_number(v);
                else if (full == "model.omega_ab") cfg.coupling.omega_ab = to_number(v);
                else if (full == "model.omega_bc") cfg.coupling.omega_bc = to_number(v);
                else if (full == "model.omega_ca") cfg.coupling.omega_ca = to_number(v);
                else if (full == "model.kappa") cfg.kappa = to_number(v);
                else if (full == "model.zero_frequency") {
                    if (v == "ohmic-limit") cfg.zero_frequency = ZeroFrequencyPolicy::kOhmicLimit;
                    else if (v == "drop") cfg.zero_frequency = ZeroFrequencyPolicy::kDrop;
                    else throw std::invalid_argument("expected ohmic-limit or drop");
                } else if (full == "grid.t_b") cfg.tb_grid = parse_grid(v);
                else if (full == "grid.times") {
                    cfg.steady = (v == "steady");
                    if (!cfg.steady) cfg.times = parse_grid(v);
                } else if (full == "states.initial") cfg.states = split(v, ',');
                else if (full == "numerics.h") cfg.h = to_number(v);
                else if (full == "numerics.dt") cfg.dt = to_number(v);
                else if (full == "run.seed") cfg.master_seed = std::stoull(v);
                else if (full == "run.jobs") cfg.jobs = std::stoi(v);
                else if (full == "run.out") cfg.out_dir = v;
                else if (full == "run.identity_columns") cfg.identity_columns = to_bool(v);
            } catch (const std::exception& e) {
                throw std::invalid_argument("config: bad value for '" + full + "': " + e.what());
            }
        }
    }
}

}  // namespace qtt
