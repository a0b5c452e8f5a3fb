// dynamics.hpp: RK4 time evolution and null-space steady state of the master equation
#pragma once

#include "qtt/model.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtt {

inline constexpr double kTraceTolerance = 1e-8;
inline constexpr double kHermiticityTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-8;

struct DensityDiagnostics {
    double trace_error{0.0};        // |Tr rho - 1|
    double hermiticity_error{0.0};  // max |rho - rho^+|
    double min_eigenvalue{0.0};     // of the Hermitian part

    bool valid() const noexcept {
        return trace_error <= kTraceTolerance && hermiticity_error <= kHermiticityTolerance &&
               min_eigenvalue >= -kPositivityTolerance;
    }
};

DensityDiagnostics diagnose(const Operator& rho);

// Hermitian, unit-trace, positive-semidefinite 8x8 state.
class DensityMatrix {
public:
    // Throws std::invalid_argument if `m` violates the invariants.
    static DensityMatrix from_matrix(const Operator& m);

    const Operator& matrix() const noexcept { return m_; }
    operator const Operator&() const noexcept { return m_; }

private:
    explicit DensityMatrix(const Operator& m) : m_(m) {}
    Operator m_;
};

// Half the trace norm of the difference of two Hermitian matrices.
double trace_distance(const Operator& a, const Operator& b);

// exp(-H/T)/Z for a diagonal Hamiltonian.
DensityMatrix gibbs_state(const Hamiltonian& h, double temperature);

struct IntegratorConfig {
    double dt{1e-3};
};

// Largest admissible dt: at least 50 steps per fastest rate of the model.
double max_stable_dt(const TransistorModel& model);

struct TrajectorySample {
    double time{0.0};
    Operator rho;
    DensityDiagnostics diagnostics;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;

    const TrajectorySample& back() const { return samples.back(); }
};

class InvariantViolation : public std::runtime_error {
public:
    InvariantViolation(double time, const DensityDiagnostics& d, const std::string& what)
        : std::runtime_error(what), time_(time), diagnostics_(d) {}
    double time() const noexcept { return time_; }
    const DensityDiagnostics& diagnostics() const noexcept { return diagnostics_; }

private:
    double time_;
    DensityDiagnostics diagnostics_;
};

// Classical fixed-step RK4 from t = 0 to t_end. Samples are taken at each entry
// of `sample_times` (strictly increasing, inside [0, t_end]); with no sample
// times the trajectory holds only t_end. The state is never renormalized; a
// sample outside tolerance throws InvariantViolation carrying its time.
Trajectory evolve(const TransistorModel& model, const DensityMatrix& rho0, double t_end,
                  const IntegratorConfig& cfg, std::span<const double> sample_times = {});

// One RK4 step of size h applied in place.
void rk4_step(const TransistorModel& model, Operator& rho, double h);

// Vectorized generator: vec(master_rhs(rho)) = L vec(rho), column-major vec.
Eigen::MatrixXcd liouvillian_matrix(const TransistorModel& model);

// RK4 step as a 64x64 map, raised to `steps` by repeated squaring.
Eigen::MatrixXcd rk4_propagator(const TransistorModel& model, double dt, std::uint64_t steps);

Operator apply_superoperator(const Eigen::MatrixXcd& map, const Operator& rho);

class NonUniqueSteadyState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SteadyStateSolution {
    Operator rho;
    double smallest_singular_value{0.0};
    double second_singular_value{0.0};
};

inline constexpr double kNullSingularValueMax = 1e-10;
inline constexpr double kSingularGapMin = 1e-6;

// Null vector of the vectorized generator, Hermitized and trace-normalized.
// Throws NonUniqueSteadyState when the singular-value gap check fails.
SteadyStateSolution solve_steady_state(const TransistorModel& model);

DensityMatrix steady_state(const TransistorModel& model);

}  // namespace qtt
