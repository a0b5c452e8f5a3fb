#include "qtt/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qtt {

namespace {

constexpr std::array<int, 5> kOffsets{-2, -1, 0, 1, 2};

double real_checked(cplx v, const char* what) {
    if (std::abs(v.imag()) > 1e-10) {
        std::ostringstream os;
        os << what << ": imaginary residue " << v.imag() << " exceeds 1e-10";
        throw std::runtime_error(os.str());
    }
    return v.real();
}

cplx energy_trace(const Hamiltonian& h, const Operator& m) {
    cplx acc{0.0, 0.0};
    for (int k = 0; k < kDim; ++k) acc += h.energy(k) * m(k, k);
    return acc;
}

double stencil_derivative(const std::array<double, 5>& v, double h) {
    return five_point_combine({v[0], v[1], v[3], v[4]}, h);
}

double sentinel(double numerator, double denominator) {
    const double s = (numerator < 0.0 ? -1.0 : 1.0) * (denominator < 0.0 ? -1.0 : 1.0);
    return s * std::numeric_limits<double>::max();
}

}  // namespace

double heat_current(const TransistorModel& model, QubitLabel bath, const Operator& rho) {
    return real_checked(energy_trace(model.hamiltonian(), model.dissipator(bath, rho)), "heat_current");
}

HeatCurrents heat_currents(const TransistorModel& model, const Operator& rho) {
    return {heat_current(model, QubitLabel::A, rho), heat_current(model, QubitLabel::B, rho),
            heat_current(model, QubitLabel::C, rho)};
}

double energy_rate(const TransistorModel& model, const Operator& rho) {
    return real_checked(energy_trace(model.hamiltonian(), model.master_rhs(rho)), "energy_rate");
}

std::vector<StencilPoint> evaluate_stencil(const ModelSpec& tmpl, const Protocol& protocol, double t_b,
                                           std::span<const double> times, const StencilConfig& stencil) {
    if (!(stencil.h > 0.0)) throw std::invalid_argument("evaluate_stencil: h must be positive");
    if (!(t_b - 2.0 * stencil.h > 0.0)) {
        throw std::invalid_argument("evaluate_stencil: T_B - 2h must be positive");
    }
    if (!protocol.is_steady() && times.empty()) {
        throw std::invalid_argument("evaluate_stencil: transient mode needs at least one time");
    }

    const std::size_t n_points = protocol.is_steady() ? 1 : times.size();
    std::vector<StencilPoint> points(n_points);
    if (!protocol.is_steady()) {
        for (std::size_t i = 0; i < n_points; ++i) points[i].time = times[i];
    }

    for (std::size_t k = 0; k < kOffsets.size(); ++k) {
        const TransistorModel model(tmpl.with_base_temperature(t_b + kOffsets[k] * stencil.h));
        if (protocol.is_steady()) {
            const auto rho = steady_state(model);
            points[0].currents[k] = heat_currents(model, rho);
            points[0].energy_rates[k] = energy_rate(model, rho);
            continue;
        }
        const auto traj = evolve(model, protocol.initial_state(), times.back(), protocol.integrator(), times);
        for (std::size_t i = 0; i < n_points; ++i) {
            const auto& rho = traj.samples[i].rho;
            points[i].currents[k] = heat_currents(model, rho);
            points[i].energy_rates[k] = energy_rate(model, rho);
        }
    }
    return points;
}

AmplificationResult amplification_from(const StencilPoint& point, double t_b, const StencilConfig& stencil) {
    AmplificationResult r;
    for (auto q : kAllQubits) {
        std::array<double, 5> v{};
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = point.currents[k][q];
        r.derivatives[static_cast<std::size_t>(slot(q))] = stencil_derivative(v, stencil.h);
    }
    r.djb_dtb = r.derivatives[1];
    r.diverged = std::abs(r.djb_dtb) < kDivergenceThreshold;
    if (r.diverged) {
        r.alpha_a = sentinel(r.derivatives[0], r.djb_dtb);
        r.alpha_c = sentinel(r.derivatives[2], r.djb_dtb);
    } else {
        r.alpha_a = r.derivatives[0] / r.djb_dtb;
        r.alpha_c = r.derivatives[2] / r.djb_dtb;
    }
    r.context = {t_b, point.time, stencil.h};
    return r;
}

std::vector<AmplificationResult> amplification_series(const ModelSpec& tmpl, const Protocol& protocol, double t_b,
                                                      std::span<const double> times, const StencilConfig& stencil) {
    std::vector<AmplificationResult> out;
    for (const auto& p : evaluate_stencil(tmpl, protocol, t_b, times, stencil)) {
        out.push_back(amplification_from(p, t_b, stencil));
    }
    return out;
}

AmplificationResult amplification(const ModelSpec& tmpl, const Protocol& protocol, double t_b, double t,
                                  const StencilConfig& stencil) {
    const std::array<double, 1> times{t};
    return amplification_series(tmpl, protocol, t_b, times, stencil).front();
}

double IdentityResidual::relative() const noexcept {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale > 0.0 ? residual / scale : residual;
}

IdentityResidual identity_residual_from(const StencilPoint& point, const StencilConfig& stencil) {
    const auto amp = amplification_from(point, 0.0, stencil);
    IdentityResidual r;
    r.diverged = amp.diverged;
    if (r.diverged) {
        r.lhs = r.rhs = r.residual = std::numeric_limits<double>::quiet_NaN();
        return r;
    }
    r.lhs = amp.alpha_a + amp.alpha_c + 1.0;
    r.rhs = stencil_derivative(point.energy_rates, stencil.h) / amp.djb_dtb;
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

IdentityResidual transient_identity_residual(const ModelSpec& tmpl, const Protocol& protocol, double t_b, double t,
                                             const StencilConfig& stencil) {
    const std::array<double, 1> times{t};
    return identity_residual_from(evaluate_stencil(tmpl, protocol, t_b, times, stencil).front(), stencil);
}

double alpha_gap(const AmplificationResult& r) {
    if (r.diverged) throw std::domain_error("alpha_gap: undefined for a diverged amplification result");
    return std::abs(std::abs(r.alpha_a) - std::abs(r.alpha_c));
}

double steady_denominator(const ModelSpec& tmpl, double t_b, const StencilConfig& stencil) {
    return amplification(tmpl, Protocol::steady(), t_b, 0.0, stencil).djb_dtb;
}

std::vector<double> denominator_sign_changes(const ModelSpec& tmpl, double lo, double hi, int samples,
                                             const StencilConfig& stencil, double tolerance) {
    if (samples < 2 || !(hi > lo)) throw std::invalid_argument("denominator_sign_changes: bad scan range");
    std::vector<double> roots;
    double x_prev = lo;
    double f_prev = steady_denominator(tmpl, lo, stencil);
    for (int i = 1; i < samples; ++i) {
        const double x = lo + (hi - lo) * i / (samples - 1);
        const double f = steady_denominator(tmpl, x, stencil);
        if ((f_prev < 0.0) != (f < 0.0)) {
            double a = x_prev, b = x, fa = f_prev;
            while (b - a > tolerance) {
                const double m = 0.5 * (a + b);
                const double fm = steady_denominator(tmpl, m, stencil);
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x_prev = x;
        f_prev = f;
    }
    return roots;
}

}  // namespace qtt
