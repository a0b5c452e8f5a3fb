#include "qtt/checks.hpp"
#include "qtt/dynamics.hpp"
#include "qtt/observables.hpp"
#include "qtt/states.hpp"

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <vector>

using namespace qtt;

namespace {

double max_abs(const Operator& m) { return m.cwiseAbs().maxCoeff(); }

// Oracle: exact propagator exp(L t) from the dense matrix exponential.
Operator exact_evolution(const TransistorModel& m, const Operator& rho0, double t) {
    const Eigen::MatrixXcd l = liouvillian_matrix(m);
    const Eigen::MatrixXcd u = (l * t).exp();
    return apply_superoperator(u, rho0);
}

Operator basis_projector(int i) {
    Operator p = Operator::Zero();
    p(i, i) = 1.0;
    return p;
}

}  // namespace

TEST_CASE("DensityMatrix validation") {
    CHECK_NOTHROW(DensityMatrix::from_matrix(basis_projector(3)));
    CHECK_THROWS_AS(DensityMatrix::from_matrix(2.0 * basis_projector(3)), std::invalid_argument);
    Operator skew = Operator::Identity() / 8.0;
    skew(0, 1) = 0.01;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(skew), std::invalid_argument);
    Operator neg = Operator::Zero();
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(neg), std::invalid_argument);
}

TEST_CASE("trace_distance") {
    CHECK(trace_distance(basis_projector(0), basis_projector(7)) == doctest::Approx(1.0));
    CHECK(trace_distance(basis_projector(2), basis_projector(2)) == doctest::Approx(0.0));
    const Operator mixed = Operator::Identity() / 8.0;
    CHECK(trace_distance(basis_projector(0), mixed) == doctest::Approx(7.0 / 8.0));
}

TEST_CASE("gibbs_state populations") {
    const auto h = build_hamiltonian({1, 1, 0});
    const Operator g = gibbs_state(h, 0.5).matrix();
    double z = 0.0;
    for (int i = 0; i < 8; ++i) z += std::exp(-h.energy(i) / 0.5);
    for (int i = 0; i < 8; ++i) CHECK(g(i, i).real() == doctest::Approx(std::exp(-h.energy(i) / 0.5) / z));
}

TEST_CASE("liouvillian_matrix reproduces master_rhs") {
    const TransistorModel m{ModelSpec{}};
    const Eigen::MatrixXcd l = liouvillian_matrix(m);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Operator rho = random_density(s);
        CHECK(max_abs(apply_superoperator(l, rho) - m.master_rhs(rho)) <= 1e-13);
    }
}

TEST_CASE("evolve basics") {
    const TransistorModel m{ModelSpec{}};
    const auto rho0 = density_of(paradigm_state(ParadigmState::kGhz));

    SUBCASE("t_end = 0 returns rho0") {
        const auto tr = evolve(m, rho0, 0.0, {});
        REQUIRE(tr.samples.size() == 1);
        CHECK(tr.back().time == 0.0);
        CHECK(max_abs(tr.back().rho - rho0.matrix()) == 0.0);
    }
    SUBCASE("sampling at requested times") {
        const std::vector<double> times{0.0, 0.1, 0.3, 0.8};
        const auto tr = evolve(m, rho0, 1.0, {}, times);
        REQUIRE(tr.samples.size() == times.size());
        for (std::size_t i = 0; i < times.size(); ++i) CHECK(tr.samples[i].time == times[i]);
    }
    SUBCASE("a non-multiple end time takes a short final step") {
        const auto tr = evolve(m, rho0, 0.12345, {});
        CHECK(trace_distance(tr.back().rho, exact_evolution(m, rho0, 0.12345)) <= 1e-10);
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(evolve(m, rho0, -1.0, {}), std::invalid_argument);
        CHECK_THROWS_AS(evolve(m, rho0, 1.0, {0.0}), std::invalid_argument);
        CHECK_THROWS_AS(evolve(m, rho0, 1.0, {0.5}), std::invalid_argument);
        const std::vector<double> unsorted{0.5, 0.2};
        CHECK_THROWS_AS(evolve(m, rho0, 1.0, {}, unsorted), std::invalid_argument);
        const std::vector<double> beyond{2.0};
        CHECK_THROWS_AS(evolve(m, rho0, 1.0, {}, beyond), std::invalid_argument);
    }
}

TEST_CASE("evolve matches the exact propagator") {
    const TransistorModel m{ModelSpec{}.with_base_temperature(0.13)};
    for (auto s : {ParadigmState::kGhz, ParadigmState::kW, ParadigmState::k011}) {
        const auto rho0 = density_of(paradigm_state(s));
        const auto tr = evolve(m, rho0, 3.0, {});
        CHECK(trace_distance(tr.back().rho, exact_evolution(m, rho0, 3.0)) <= 1e-10);
    }
}

TEST_CASE("RK4 global error is fourth order") {
    const TransistorModel m{ModelSpec{}};
    const auto rho0 = DensityMatrix::from_matrix(random_density(42));
    const Operator exact = exact_evolution(m, rho0, 1.0);
    const double e1 = trace_distance(evolve(m, rho0, 1.0, {0.01}).back().rho, exact);
    const double e2 = trace_distance(evolve(m, rho0, 1.0, {0.005}).back().rho, exact);
    CHECK(e1 / e2 >= 12.0);
    CHECK(e1 / e2 <= 20.0);
}

TEST_CASE("Gibbs state is stationary under evolution") {
    for (double t : {0.05, 0.1, 0.3}) {
        const TransistorModel m{ModelSpec{}.with_common_temperature(t)};
        const auto g = gibbs_state(m.hamiltonian(), t);
        CHECK(trace_distance(evolve(m, g, 5.0, {}).back().rho, g.matrix()) <= 1e-10);
    }
}

TEST_CASE("paradigm states stay physical") {
    const TransistorModel m{ModelSpec{}.with_base_temperature(0.05)};
    std::vector<double> times;
    for (int i = 0; i <= 100; ++i) times.push_back(0.1 * i);
    for (auto s : {ParadigmState::kGhz, ParadigmState::kW, ParadigmState::k000, ParadigmState::k001,
                   ParadigmState::k011}) {
        const auto tr = evolve(m, density_of(paradigm_state(s)), 10.0, {}, times);
        for (const auto& smp : tr.samples) {
            CHECK(smp.diagnostics.trace_error <= 1e-8);
            CHECK(smp.diagnostics.hermiticity_error <= 1e-10);
            CHECK(smp.diagnostics.min_eigenvalue >= -1e-8);
        }
    }
}

TEST_CASE("steady state at a common temperature is the Gibbs state") {
    for (double t : {0.1, 0.2, 0.5}) {
        const TransistorModel m(ModelSpec{}.with_common_temperature(t));
        CHECK(max_abs(steady_state(m).matrix() - gibbs_state(m.hamiltonian(), t).matrix()) <= 1e-10);
    }
}

TEST_CASE("dropping the zero-frequency channel leaves a degenerate null space") {
    for (double tb : {0.05, 0.13}) {
        ModelSpec spec;
        spec.zero_frequency = ZeroFrequencyPolicy::kDrop;
        CHECK_THROWS_AS(solve_steady_state(TransistorModel{spec.with_base_temperature(tb)}), NonUniqueSteadyState);
    }
    ModelSpec eq;
    eq.zero_frequency = ZeroFrequencyPolicy::kDrop;
    CHECK_THROWS_AS(solve_steady_state(TransistorModel{eq.with_common_temperature(0.2)}), NonUniqueSteadyState);
}

TEST_CASE("steady state properties at the default temperatures") {
    const TransistorModel m{ModelSpec{}};
    const auto sol = solve_steady_state(m);
    CHECK(sol.smallest_singular_value <= kNullSingularValueMax);
    CHECK(sol.second_singular_value >= kSingularGapMin);
    const auto d = diagnose(sol.rho);
    CHECK(d.valid());
    CHECK(max_abs(m.master_rhs(sol.rho)) <= 1e-10);
    CHECK(std::abs(heat_currents(m, sol.rho).sum()) <= 1e-10);
}

TEST_CASE("long-time propagation converges to the null-space steady state") {
    const TransistorModel m{ModelSpec{}};
    const Operator ss = steady_state(m).matrix();
    // 2^25 steps of dt = 1e-3 reach t ~ 3.4e4, about seventeen slowest relaxation times.
    const Eigen::MatrixXcd u = rk4_propagator(m, 1e-3, std::uint64_t{1} << 25);
    for (auto s : {ParadigmState::kGhz, ParadigmState::k000}) {
        const Operator rho = apply_superoperator(u, density_of(paradigm_state(s)).matrix());
        CHECK(trace_distance(rho, ss) <= 1e-6);
    }
    const Operator far = exact_evolution(m, density_of(paradigm_state(ParadigmState::kW)).matrix(), 1e5);
    CHECK(trace_distance(far, ss) <= 1e-8);
}

TEST_CASE("rk4_propagator agrees with stepping") {
    const TransistorModel m{ModelSpec{}};
    const auto rho0 = density_of(paradigm_state(ParadigmState::kW));
    const Operator a = apply_superoperator(rk4_propagator(m, 1e-3, 1000), rho0.matrix());
    const Operator b = evolve(m, rho0, 1.0, {}).back().rho;
    CHECK(max_abs(a - b) <= 1e-12);
}

TEST_CASE("non-unique steady state is reported") {
    ModelSpec spec;
    spec.coupling = {0, 0, 0};
    spec.zero_frequency = ZeroFrequencyPolicy::kDrop;
    CHECK_THROWS_AS(solve_steady_state(TransistorModel{spec}), NonUniqueSteadyState);
}
