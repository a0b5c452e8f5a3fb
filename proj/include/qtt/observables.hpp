// observables.hpp: heat currents, five-point stencil, amplification factors and the transient sum rule
#pragma once

#include "qtt/dynamics.hpp"
#include "qtt/model.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qtt {

struct HeatCurrents {
    double a{0.0};
    double b{0.0};
    double c{0.0};

    double sum() const noexcept { return a + b + c; }
    double operator[](QubitLabel q) const noexcept {
        return q == QubitLabel::A ? a : (q == QubitLabel::B ? b : c);
    }
};

// Tr(H L_X[rho]); positive means energy flowing from bath X into the system.
// Throws std::runtime_error if the imaginary residue exceeds 1e-10.
double heat_current(const TransistorModel& model, QubitLabel bath, const Operator& rho);
HeatCurrents heat_currents(const TransistorModel& model, const Operator& rho);

// Tr(H drho/dt) through the full generator, commutator included.
double energy_rate(const TransistorModel& model, const Operator& rho);

// [f(x-2h) - 8 f(x-h) + 8 f(x+h) - f(x+2h)] / (12 h), from the four samples in that order.
inline double five_point_combine(const std::array<double, 4>& f, double h) {
    return (f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * h);
}

template <class F>
double five_point_derivative(F&& f, double x0, double h) {
    return five_point_combine({f(x0 - 2.0 * h), f(x0 - h), f(x0 + h), f(x0 + 2.0 * h)}, h);
}

struct StencilConfig {
    double h{1e-3};
};

inline constexpr double kDivergenceThreshold = 1e-12;

// How the state is prepared at every stencil temperature: the steady state,
// or evolution from one fixed rho0 with the shifted bath-B temperature.
class Protocol {
public:
    static Protocol steady() { return Protocol(); }
    static Protocol transient(const DensityMatrix& rho0, IntegratorConfig integrator = {}) {
        Protocol p;
        p.rho0_ = rho0;
        p.integrator_ = integrator;
        return p;
    }

    bool is_steady() const noexcept { return !rho0_.has_value(); }
    const DensityMatrix& initial_state() const { return rho0_.value(); }
    const IntegratorConfig& integrator() const noexcept { return integrator_; }

private:
    std::optional<DensityMatrix> rho0_;
    IntegratorConfig integrator_{};
};

struct AmplificationContext {
    double t_b{0.0};
    std::optional<double> time;  // empty in steady mode
    double h{0.0};
};

struct AmplificationResult {
    double alpha_a{0.0};
    double alpha_c{0.0};
    double djb_dtb{0.0};
    std::array<double, 3> derivatives{};  // dJ_X/dT_B for A, B, C
    bool diverged{false};
    AmplificationContext context{};
};

// Currents at T_B - 2h, T_B - h, T_B, T_B + h, T_B + 2h for one time (or steady).
struct StencilPoint {
    std::optional<double> time;
    std::array<HeatCurrents, 5> currents{};
    std::array<double, 5> energy_rates{};  // Tr(H drho/dt) at each temperature
};

// Runs the five evaluations once and samples all `times` (ignored in steady mode).
// Throws std::invalid_argument unless t_b - 2h > 0.
std::vector<StencilPoint> evaluate_stencil(const ModelSpec& tmpl, const Protocol& protocol, double t_b,
                                           std::span<const double> times, const StencilConfig& stencil);

AmplificationResult amplification_from(const StencilPoint& point, double t_b, const StencilConfig& stencil);

AmplificationResult amplification(const ModelSpec& tmpl, const Protocol& protocol, double t_b, double t,
                                  const StencilConfig& stencil = {});

std::vector<AmplificationResult> amplification_series(const ModelSpec& tmpl, const Protocol& protocol, double t_b,
                                                      std::span<const double> times,
                                                      const StencilConfig& stencil = {});

struct IdentityResidual {
    double lhs{0.0};  // alpha_A + alpha_C + 1 from the heat currents
    double rhs{0.0};  // (dJ_B/dT_B)^-1 d/dT_B Tr(H drho/dt)
    double residual{0.0};
    bool diverged{false};

    double relative() const noexcept;
};

IdentityResidual identity_residual_from(const StencilPoint& point, const StencilConfig& stencil);

IdentityResidual transient_identity_residual(const ModelSpec& tmpl, const Protocol& protocol, double t_b, double t,
                                             const StencilConfig& stencil = {});

// ||alpha_A| - |alpha_C||. Throws std::domain_error on a diverged result.
double alpha_gap(const AmplificationResult& r);

// Steady-mode T_B values in (lo, hi) where dJ_B/dT_B changes sign, located by
// a uniform scan of `samples` points and bisection to `tolerance`.
std::vector<double> denominator_sign_changes(const ModelSpec& tmpl, double lo, double hi, int samples,
                                             const StencilConfig& stencil = {}, double tolerance = 1e-6);

double steady_denominator(const ModelSpec& tmpl, double t_b, const StencilConfig& stencil = {});

}  // namespace qtt
