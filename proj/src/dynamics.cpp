#include "qtt/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qtt {

DensityDiagnostics diagnose(const Operator& rho) {
    DensityDiagnostics d;
    d.trace_error = std::abs(rho.trace() - cplx(1.0, 0.0));
    d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    const Operator herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Operator> solver(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = solver.eigenvalues().minCoeff();
    return d;
}

DensityMatrix DensityMatrix::from_matrix(const Operator& m) {
    const auto d = diagnose(m);
    if (!d.valid()) {
        std::ostringstream os;
        os << "DensityMatrix: invalid state (trace error " << d.trace_error << ", hermiticity error "
           << d.hermiticity_error << ", min eigenvalue " << d.min_eigenvalue << ")";
        throw std::invalid_argument(os.str());
    }
    return DensityMatrix(m);
}

double trace_distance(const Operator& a, const Operator& b) {
    const Operator diff = a - b;
    const Operator herm = 0.5 * (diff + diff.adjoint());
    Eigen::SelfAdjointEigenSolver<Operator> solver(herm, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

DensityMatrix gibbs_state(const Hamiltonian& h, double temperature) {
    if (!(temperature > 0.0)) throw std::domain_error("gibbs_state: temperature must be positive");
    const double emin = h.diag.minCoeff();
    Operator rho = Operator::Zero();
    double z = 0.0;
    for (int i = 0; i < kDim; ++i) {
        const double w = std::exp(-(h.energy(i) - emin) / temperature);
        rho(i, i) = w;
        z += w;
    }
    return DensityMatrix::from_matrix(rho / z);
}

double max_stable_dt(const TransistorModel& model) {
    const double rate = model.max_rate();
    // Small slack so that dt = 0.01 passes at default couplings, where the
    // fastest rate is 2(1 + n) with n ~ 1e-11.
    return rate > 0.0 ? (1.0 + 1e-6) / (50.0 * rate) : std::numeric_limits<double>::infinity();
}

void rk4_step(const TransistorModel& model, Operator& rho, double h) {
    Operator k1, k2, k3, k4;
    model.master_rhs(rho, k1);
    model.master_rhs(rho + (0.5 * h) * k1, k2);
    model.master_rhs(rho + (0.5 * h) * k2, k3);
    model.master_rhs(rho + h * k3, k4);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace {

void check_sample(double t, const DensityDiagnostics& d) {
    if (d.valid()) return;
    std::ostringstream os;
    os << "evolve: density-matrix invariant violated at t = " << t << " (trace error " << d.trace_error
       << ", hermiticity error " << d.hermiticity_error << ", min eigenvalue " << d.min_eigenvalue
       << "); reduce dt";
    throw InvariantViolation(t, d, os.str());
}

// Advance from t to target: whole dt steps, then one shortened step.
void advance(const TransistorModel& model, Operator& rho, double t, double target, double dt) {
    const double span = target - t;
    if (span <= 0.0) return;
    const auto whole = static_cast<std::uint64_t>(std::floor(span / dt * (1.0 + 1e-12)));
    for (std::uint64_t i = 0; i < whole; ++i) rk4_step(model, rho, dt);
    const double rest = span - static_cast<double>(whole) * dt;
    if (rest > 1e-12 * dt) rk4_step(model, rho, rest);
}

}  // namespace

Trajectory evolve(const TransistorModel& model, const DensityMatrix& rho0, double t_end,
                  const IntegratorConfig& cfg, std::span<const double> sample_times) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
    if (cfg.dt > max_stable_dt(model)) {
        std::ostringstream os;
        os << "evolve: dt = " << cfg.dt << " exceeds the stability bound " << max_stable_dt(model);
        throw std::invalid_argument(os.str());
    }
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("evolve: t_end must be >= 0");

    std::vector<double> times(sample_times.begin(), sample_times.end());
    if (times.empty()) times.push_back(t_end);
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0 || times[i] > t_end) throw std::invalid_argument("evolve: sample time outside [0, t_end]");
        if (i > 0 && !(times[i] > times[i - 1])) throw std::invalid_argument("evolve: sample times must increase");
    }

    Trajectory traj;
    traj.samples.reserve(times.size());
    Operator rho = rho0.matrix();
    double t = 0.0;
    for (double target : times) {
        advance(model, rho, t, target, cfg.dt);
        t = target;
        const auto d = diagnose(rho);
        check_sample(t, d);
        traj.samples.push_back({t, rho, d});
    }
    // Integrate past the last sample so that t_end is always reached.
    if (t < t_end) advance(model, rho, t, t_end, cfg.dt);
    return traj;
}

Eigen::MatrixXcd liouvillian_matrix(const TransistorModel& model) {
    constexpr int n = kDim * kDim;
    Eigen::MatrixXcd l(n, n);
    Operator basis = Operator::Zero();
    Operator out;
    for (int col = 0; col < n; ++col) {
        basis.data()[col] = 1.0;
        model.master_rhs(basis, out);
        l.col(col) = Eigen::Map<const Eigen::VectorXcd>(out.data(), n);
        basis.data()[col] = 0.0;
    }
    return l;
}

Eigen::MatrixXcd rk4_propagator(const TransistorModel& model, double dt, std::uint64_t steps) {
    constexpr int n = kDim * kDim;
    const Eigen::MatrixXcd hl = dt * liouvillian_matrix(model);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    // RK4 on a linear system is the degree-4 Taylor polynomial of exp(hL).
    const Eigen::MatrixXcd hl2 = hl * hl;
    Eigen::MatrixXcd base = id + hl + hl2 / 2.0 + hl2 * hl / 6.0 + hl2 * hl2 / 24.0;
    Eigen::MatrixXcd result = id;
    while (steps > 0) {
        if (steps & 1u) result = base * result;
        steps >>= 1u;
        if (steps > 0) base = base * base;
    }
    return result;
}

Operator apply_superoperator(const Eigen::MatrixXcd& map, const Operator& rho) {
    Operator out;
    Eigen::Map<Eigen::VectorXcd>(out.data(), kDim * kDim) =
        map * Eigen::Map<const Eigen::VectorXcd>(rho.data(), kDim * kDim);
    return out;
}

SteadyStateSolution solve_steady_state(const TransistorModel& model) {
    const Eigen::MatrixXcd l = liouvillian_matrix(model);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(l, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();  // descending
    const Eigen::Index n = sv.size();
    SteadyStateSolution sol;
    sol.smallest_singular_value = sv(n - 1);
    sol.second_singular_value = sv(n - 2);
    if (sol.smallest_singular_value > kNullSingularValueMax || sol.second_singular_value < kSingularGapMin) {
        std::ostringstream os;
        os << "steady_state: no unique null vector (smallest singular value " << sol.smallest_singular_value
           << ", next " << sol.second_singular_value << ")";
        throw NonUniqueSteadyState(os.str());
    }
    Operator rho;
    Eigen::Map<Eigen::VectorXcd>(rho.data(), kDim * kDim) = svd.matrixV().col(n - 1);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace();
    sol.rho = rho;
    return sol;
}

DensityMatrix steady_state(const TransistorModel& model) {
    return DensityMatrix::from_matrix(solve_steady_state(model).rho);
}

}  // namespace qtt
