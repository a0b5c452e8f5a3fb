#include "qtt/scenarios.hpp"
#include "qtt/sweep.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

using namespace qtt;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

std::string csv_text(const SweepResult& r, bool identity) {
    std::ostringstream os;
    write_csv(os, r.records, identity);
    return os.str();
}

SweepConfig small_transient() {
    SweepConfig c;
    c.scenario = "unit";
    c.states = {"GHZ", "random:WClassX:2", "W'"};
    c.times = {0.1, 0.3};
    c.tb_grid = {0.05, 0.13};
    return c;
}

fs::path scratch_dir(const std::string& name) {
    auto p = fs::temp_directory_path() / ("qtt_unit_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("expand_states tokens") {
    const auto s = expand_states({"GHZ", "k011", "Product'", "random:GHZClass:3", "random:all:2"}, 5);
    REQUIRE(s.size() == 2 + 1 + 3 + 14);
    CHECK(s[0].id == "GHZ");
    CHECK(s[0].cls == "paradigm");
    CHECK(s[2].id == "Product'");
    CHECK(s[2].cls == "example");
    CHECK(s[3].id == "GHZClass-0000");
    CHECK(s[3].cls == "GHZClass");
    CHECK(s[3].seed == scan_seed(5, StateClass::kGhz, 0));
    CHECK(s[3].psi.amplitudes == sample_random(StateClass::kGhz, s[3].seed).amplitudes);
    std::set<std::string> classes;
    for (std::size_t i = 6; i < s.size(); ++i) classes.insert(s[i].cls);
    CHECK(classes.size() == 7);

    CHECK_THROWS_AS(expand_states({"random:GHZClass"}, 1), std::invalid_argument);
    CHECK_THROWS_AS(expand_states({"random:GHZClass:0"}, 1), std::invalid_argument);
    CHECK_THROWS_AS(expand_states({"random:Nope:3"}, 1), std::invalid_argument);
    CHECK_THROWS_AS(expand_states({"Nope"}, 1), std::invalid_argument);
}

TEST_CASE("config validation") {
    auto c = small_transient();
    CHECK_NOTHROW(c.validate());
    auto bad = c;
    bad.tb_grid = {0.0015};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = c;
    bad.times = {0.3, 0.1};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = c;
    bad.dt = 0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = c;
    bad.states.clear();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = c;
    bad.t_c = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("CSV schema and values round-trip") {
    const auto cfg = small_transient();
    const auto res = run_sweep(cfg, Execution::kSerial);
    CHECK(res.failures.empty());
    REQUIRE(res.records.size() == 4 * 2 * 2);

    std::istringstream in(csv_text(res, false));
    std::string line;
    std::getline(in, line);
    CHECK(line == "# qtt sweep-record-v1");
    std::getline(in, line);
    CHECK(split_csv(line) == csv_columns(false));
    CHECK(line == "scenario,state_id,class,seed,T_B,t,J_A,J_B,J_C,alpha_A,alpha_C,dJB_dTB,diverged,alpha_gap");

    // Oracle: direct amplification evaluation for the GHZ rows.
    const auto protocol = Protocol::transient(density_of(paradigm_state(ParadigmState::kGhz)));
    int ghz_rows = 0;
    while (std::getline(in, line)) {
        const auto f = split_csv(line);
        REQUIRE(f.size() == 14);
        CHECK(f[0] == "unit");
        if (f[1] != "GHZ") continue;
        ++ghz_rows;
        const double tb = std::stod(f[4]), t = std::stod(f[5]);
        const auto a = amplification(cfg.model_spec(), protocol, tb, t);
        CHECK(std::stod(f[9]) == a.alpha_a);
        CHECK(std::stod(f[10]) == a.alpha_c);
        CHECK(std::stod(f[11]) == a.djb_dtb);
        CHECK(std::stod(f[13]) == alpha_gap(a));
        CHECK(f[12] == "0");
    }
    CHECK(ghz_rows == 4);
}

TEST_CASE("records are ordered by state, time, then T_B") {
    const auto res = run_sweep(small_transient(), Execution::kSerial);
    for (std::size_t i = 1; i < res.records.size(); ++i) {
        const auto& a = res.records[i - 1];
        const auto& b = res.records[i];
        if (a.state_id != b.state_id) {
            CHECK(a.state_id < b.state_id);
        } else if (*a.t != *b.t) {
            CHECK(*a.t < *b.t);
        } else {
            CHECK(a.t_b < b.t_b);
        }
    }
}

TEST_CASE("serial and parallel sweeps are byte-identical and rerunnable") {
    auto cfg = small_transient();
    cfg.jobs = 3;
    const auto serial = csv_text(run_sweep(cfg, Execution::kSerial), false);
    CHECK(csv_text(run_sweep(cfg, Execution::kParallel), false) == serial);
    CHECK(csv_text(run_sweep(cfg, Execution::kParallel), false) == serial);
    cfg.master_seed += 1;
    CHECK(csv_text(run_sweep(cfg, Execution::kSerial), false) != serial);
}

TEST_CASE("steady mode rows and sign changes") {
    SweepConfig cfg;
    cfg.scenario = "steady-unit";
    cfg.steady = true;
    cfg.tb_grid = parse_grid("lin:0.05:0.2:16");
    const auto res = run_sweep(cfg, Execution::kSerial);
    REQUIRE(res.records.size() == 16);
    for (const auto& r : res.records) {
        CHECK_FALSE(r.t.has_value());
        CHECK(r.state_id == "steady");
        CHECK(std::abs(r.j_a + r.j_b + r.j_c) <= 1e-10);
    }
    const auto roots = grid_sign_changes(res.records);
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0] - 0.12) <= 0.03);
    const auto text = csv_text(res, false);
    CHECK(text.find(",steady,") != std::string::npos);
}

TEST_CASE("identity columns") {
    auto cfg = small_transient();
    cfg.states = {"GHZ"};
    cfg.times = {0.1};
    cfg.tb_grid = {0.08};
    cfg.identity_columns = true;
    const auto res = run_sweep(cfg, Execution::kSerial);
    REQUIRE(res.records.size() == 1);
    REQUIRE(res.records[0].identity.has_value());
    const auto& id = *res.records[0].identity;
    CHECK(std::abs(id.lhs - id.rhs) <= 1e-3 * std::max(std::abs(id.lhs), std::abs(id.rhs)));
    const auto text = csv_text(res, true);
    CHECK(text.rfind("# qtt sweep-record-v1+identity\n", 0) == 0);
    CHECK(text.find("identity_lhs,identity_rhs,identity_residual") != std::string::npos);
}

TEST_CASE("run_scenario writes csv and manifest") {
    auto cfg = small_transient();
    cfg.states = {"W"};
    cfg.out_dir = scratch_dir("run");
    const auto out = run_scenario(cfg, Execution::kSerial);
    CHECK(fs::exists(out.csv));
    CHECK(out.csv.filename() == "unit.csv");
    std::ifstream m(out.manifest);
    std::stringstream ss;
    ss << m.rdbuf();
    const std::string manifest = ss.str();
    for (const char* section : {"[run]", "[model]", "[numerics]", "[rng]", "[grid]", "[failures]"})
        CHECK(manifest.find(section) != std::string::npos);
    CHECK(manifest.find("zero_frequency") != std::string::npos);
    fs::remove_all(cfg.out_dir);
}

TEST_CASE("format_double") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("grid parsing") {
    const auto lin = parse_grid("lin:0.1:0.5:5");
    REQUIRE(lin.size() == 5);
    CHECK(lin[2] == doctest::Approx(0.3));
    const auto lg = parse_grid("log:0.01:1:3");
    REQUIRE(lg.size() == 3);
    CHECK(lg[1] == doctest::Approx(0.1));
    CHECK(parse_grid("0.05, 0.13,0.26") == std::vector<double>{0.05, 0.13, 0.26});
    const auto def = parse_grid("default");
    CHECK(def.size() == 200);
    CHECK(std::is_sorted(def.begin(), def.end()));
    CHECK(def.front() == doctest::Approx(0.004));
    CHECK(def.back() == doctest::Approx(0.8));
    CHECK(std::count_if(def.begin(), def.end(), [](double x) { return x >= 0.12 && x <= 0.15; }) >= 25);
    CHECK_THROWS_AS(parse_grid("lin:0.1:0.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("log:0:1:4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("a,b"), std::invalid_argument);
}

TEST_CASE("config file loading") {
    const auto dir = scratch_dir("cfg");
    const auto path = dir / "run.ini";
    {
        std::ofstream f(path);
        f << "[scenario]\nname = mine\n"
             "[model]\nt_a = 0.3\nomega_ca = 0.5\nzero_frequency = drop\n"
             "[grid]\nt_b = lin:0.05:0.1:3\ntimes = 0.1,0.2\n"
             "[states]\ninitial = GHZ, random:Product:4\n"
             "[run]\nseed = 17\nidentity_columns = true\n";
    }
    SweepConfig cfg;
    apply_config_file(cfg, path);
    CHECK(cfg.scenario == "mine");
    CHECK(cfg.t_a == 0.3);
    CHECK(cfg.coupling.omega_ca == 0.5);
    CHECK(cfg.zero_frequency == ZeroFrequencyPolicy::kDrop);
    CHECK(cfg.tb_grid.size() == 3);
    CHECK(cfg.times == std::vector<double>{0.1, 0.2});
    CHECK(cfg.states == std::vector<std::string>{"GHZ", "random:Product:4"});
    CHECK(cfg.master_seed == 17);
    CHECK(cfg.identity_columns);
    CHECK_NOTHROW(cfg.validate());

    {
        std::ofstream f(path);
        f << "[model]\ntemperature = 0.3\n";
    }
    CHECK_THROWS_AS(apply_config_file(cfg, path), std::invalid_argument);
    {
        std::ofstream f(path);
        f << "[model]\nt_a = warm\n";
    }
    CHECK_THROWS_AS(apply_config_file(cfg, path), std::invalid_argument);
    {
        std::ofstream f(path);
        f << "[grid]\ntimes = steady\n";
    }
    apply_config_file(cfg, path);
    CHECK(cfg.steady);
    fs::remove_all(dir);
}

TEST_CASE("scenario catalog") {
    const auto& cat = scenario_catalog();
    CHECK(cat.size() == 12);
    for (const auto& s : cat) {
        const auto cfg = scenario_config(s.name);
        CHECK(cfg.scenario == s.name);
        CHECK_NOTHROW(cfg.validate());
        CHECK(cfg.identity_columns == s.identity_columns);
    }
    CHECK(scenario_config("random-scan").states == std::vector<std::string>{"random:all:50"});
    CHECK(expand_states(scenario_config("random-scan").states, 1).size() == 350);
    CHECK_THROWS_AS(scenario_config("nope"), std::invalid_argument);

    std::ostringstream os;
    write_catalog(os);
    const auto j = nlohmann::json::parse(os.str());
    REQUIRE(j.is_array());
    CHECK(j.size() == 12);
    for (const auto& e : j) {
        CHECK(e.contains("name"));
        CHECK(e["columns"].get<std::vector<std::string>>() ==
              csv_columns(e["schema"].get<std::string>().find("+identity") != std::string::npos));
    }
}
