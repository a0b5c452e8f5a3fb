#include "qtt/checks.hpp"

#include "qtt/dynamics.hpp"
#include "qtt/observables.hpp"
#include "qtt/reference.hpp"
#include "qtt/rng.hpp"
#include "qtt/states.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace qtt {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

CheckResult check(std::string name, double value, double bound, bool upper = true) {
    const bool ok = upper ? value <= bound : value >= bound;
    return {std::move(name), ok, fmt(value) + (upper ? " <= " : " >= ") + fmt(bound)};
}

}  // namespace

Operator random_density(std::uint64_t seed, int components) {
    CounterRng rng(seed, 0xD5);
    Operator rho = Operator::Zero();
    double total = 0.0;
    for (int c = 0; c < components; ++c) {
        const double w = -std::log(1.0 - rng.uniform());  // exponential weights
        Ket k;
        for (int i = 0; i < kDim; ++i) k(i) = rng.complex_normal();
        k /= k.norm();
        rho += w * k * k.adjoint();
        total += w;
    }
    return rho / total;
}

std::vector<CheckResult> run_invariant_checks() {
    std::vector<CheckResult> out;
    const ModelSpec spec;
    const TransistorModel model(spec);
    const Operator h = model.hamiltonian().matrix();

    double eig_err = 0.0;
    std::size_t transitions = 0;
    for (auto q : kAllQubits) {
        for (const auto& op : model.jump_operators(q).operators) {
            const Operator a = op.matrix().cast<cplx>();
            eig_err = std::max(eig_err, (h * a - a * h + op.frequency * a).cwiseAbs().maxCoeff());
        }
        for (const auto& g : bohr_spectrum(model.hamiltonian(), q)) transitions += g.pairs.size();
    }
    out.push_back(check("eigenoperator identity [H,A] = -wA", eig_err, 1e-12));
    out.push_back({"single-flip transition count", transitions == 12, std::to_string(transitions) + " == 12"});

    double tr = 0.0, herm = 0.0, ref = 0.0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const Operator rho = random_density(s);
        for (auto q : kAllQubits) {
            const Operator d = model.dissipator(q, rho);
            tr = std::max(tr, std::abs(d.trace()));
            herm = std::max(herm, (d - d.adjoint()).cwiseAbs().maxCoeff());
        }
        ref = std::max(ref, (model.master_rhs(rho) - reference::master_rhs(model, rho)).cwiseAbs().maxCoeff());
    }
    out.push_back(check("dissipator traceless", tr, 1e-12));
    out.push_back(check("dissipator Hermitian", herm, 1e-12));
    out.push_back(check("sparse kernel matches dense reference", ref, 1e-12));

    for (double t : {0.1, 0.2, 0.5}) {
        const TransistorModel eq(spec.with_common_temperature(t));
        const auto g = gibbs_state(eq.hamiltonian(), t);
        out.push_back(check("Gibbs fixed point T=" + fmt(t), eq.master_rhs(g).cwiseAbs().maxCoeff(), 1e-10));
    }

    const auto ss = steady_state(model);
    out.push_back(check("steady-state sum rule", std::abs(heat_currents(model, ss).sum()), 1e-10));

    std::vector<double> times;
    for (int i = 1; i <= 20; ++i) times.push_back(0.5 * i);
    double worst_tr = 0.0, worst_herm = 0.0, min_eig = 0.0;
    bool ok = true;
    for (auto p : {ParadigmState::kGhz, ParadigmState::kW, ParadigmState::k000, ParadigmState::k001,
                   ParadigmState::k011}) {
        try {
            const auto traj = evolve(model, density_of(paradigm_state(p)), 10.0, {}, times);
            for (const auto& s : traj.samples) {
                worst_tr = std::max(worst_tr, s.diagnostics.trace_error);
                worst_herm = std::max(worst_herm, s.diagnostics.hermiticity_error);
                min_eig = std::min(min_eig, s.diagnostics.min_eigenvalue);
            }
        } catch (const InvariantViolation&) {
            ok = false;
        }
    }
    out.push_back({"physicality of paradigm trajectories to t=10", ok && worst_tr <= kTraceTolerance &&
                                                                       worst_herm <= kHermiticityTolerance &&
                                                                       min_eig >= -kPositivityTolerance,
                   "trace " + fmt(worst_tr) + ", hermiticity " + fmt(worst_herm) + ", min eigenvalue " +
                       fmt(min_eig)});

    const auto rho0 = density_of(paradigm_state(ParadigmState::kGhz));
    const auto exact = evolve(model, rho0, 1.0, {0.01 / 8}).back().rho;
    const double e1 = (evolve(model, rho0, 1.0, {0.01}).back().rho - exact).cwiseAbs().maxCoeff();
    const double e2 = (evolve(model, rho0, 1.0, {0.005}).back().rho - exact).cwiseAbs().maxCoeff();
    out.push_back(check("RK4 error ratio on halving dt", e1 / e2, 12.0, false));
    return out;
}

bool report_checks(std::ostream& os, const std::vector<CheckResult>& results) {
    bool all = true;
    for (const auto& r : results) {
        os << (r.passed ? "PASS " : "FAIL ") << r.name << "  (" << r.detail << ")\n";
        all = all && r.passed;
    }
    return all;
}

}  // namespace qtt
