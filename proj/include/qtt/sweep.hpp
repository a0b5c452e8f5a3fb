// sweep.hpp: batch evaluation over (initial state x T_B x t) with deterministic CSV output
#pragma once

#include "qtt/model.hpp"
#include "qtt/observables.hpp"
#include "qtt/states.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qtt {

struct SweepConfig {
    std::string scenario{"custom"};
    CouplingConfig coupling{};
    double t_a{0.2};
    double t_c{0.02};
    double kappa{1.0};
    ZeroFrequencyPolicy zero_frequency{ZeroFrequencyPolicy::kOhmicLimit};
    std::vector<double> tb_grid;
    bool steady{false};          // steady mode: `times` and `states` are ignored
    std::vector<double> times;   // strictly increasing
    std::vector<std::string> states;  // tokens, see expand_states
    double h{1e-3};
    double dt{1e-3};
    int jobs{0};                 // 0: OpenMP default
    std::filesystem::path out_dir{"."};
    std::uint64_t master_seed{20220607};
    bool identity_columns{false};

    ModelSpec model_spec() const;
    // Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

struct InitialStateEntry {
    std::string id;
    std::string cls;  // "paradigm", "example", a StateClass name, or "steady"
    std::uint64_t seed{0};
    PureState psi;
};

// Tokens: paradigm names (GHZ, W, k000, k001, k011), example names (GHZ', AB:C',
// W', Product'), random:<StateClass>:<count>, random:all:<count> (the seven scan classes).
std::vector<InitialStateEntry> expand_states(const std::vector<std::string>& tokens, std::uint64_t master_seed);

struct IdentityColumns {
    double lhs{0.0};
    double rhs{0.0};
    double residual{0.0};
};

struct SweepRecord {
    std::string scenario;
    std::string state_id;
    std::string cls;
    std::uint64_t seed{0};
    double t_b{0.0};
    std::optional<double> t;  // empty means steady
    double j_a{0.0}, j_b{0.0}, j_c{0.0};
    double alpha_a{0.0}, alpha_c{0.0};
    double djb_dtb{0.0};
    bool diverged{false};
    double alpha_gap{0.0};  // nan when diverged
    std::optional<IdentityColumns> identity;
};

struct SweepFailure {
    std::string state_id;
    double t_b{0.0};
    std::string message;
};

struct SweepResult {
    std::vector<SweepRecord> records;  // sorted by (state_id, t, T_B)
    std::vector<SweepFailure> failures;
    double seconds{0.0};
    int threads{1};
};

enum class Execution { kSerial, kParallel };

SweepResult run_sweep(const SweepConfig& cfg, Execution exec = Execution::kParallel);

inline constexpr const char* kCsvSchema = "sweep-record-v1";

std::string format_double(double v);  // 17 significant digits
void write_csv(std::ostream& os, const std::vector<SweepRecord>& records, bool identity_columns);
std::vector<std::string> csv_columns(bool identity_columns);

// Steady-mode sign changes of dJ_B/dT_B between adjacent grid rows, linearly interpolated.
std::vector<double> grid_sign_changes(const std::vector<SweepRecord>& records);

void write_manifest(std::ostream& os, const SweepConfig& cfg, const SweepResult& result, Execution exec);

struct RunOutput {
    std::filesystem::path csv;
    std::filesystem::path manifest;
    SweepResult result;
};

// Validates, runs, and writes <out>/<scenario>.csv and <out>/<scenario>.manifest.
RunOutput run_scenario(const SweepConfig& cfg, Execution exec = Execution::kParallel);

}  // namespace qtt
