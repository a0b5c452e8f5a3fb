// model.hpp: Hamiltonian, Bohr spectrum, bath eigenoperators and the master-equation generator
#pragma once

#include "qtt/types.hpp"

#include <array>
#include <vector>

namespace qtt {

// Pairwise sigma_z sigma_z couplings (hbar = 1).
struct CouplingConfig {
    double omega_ab{1.0};
    double omega_bc{1.0};
    double omega_ca{0.0};
};

struct BathConfig {
    QubitLabel label{QubitLabel::A};
    double temperature{0.2};
    double kappa{1.0};  // Ohmic strength, J(w) = kappa * w
};

// How transitions with zero Bohr frequency are treated.
//   kOhmicLimit: kept as a channel with the w -> 0+ limit of the Ohmic rates,
//                kappa*w*(1+n) -> kappa*T and kappa*w*n -> kappa*T.
//   kDrop:       removed; only strictly positive frequencies contribute.
enum class ZeroFrequencyPolicy { kOhmicLimit, kDrop };

struct Hamiltonian {
    RealVector8 diag{RealVector8::Zero()};

    double energy(int i) const { return diag(i); }
    Operator matrix() const;
};

// A single-flip transition; the eigenoperator carries |to><from|.
struct Transition {
    int from{0};
    int to{0};
    friend bool operator==(const Transition&, const Transition&) = default;
};

struct TransitionGroup {
    double frequency{0.0};  // E_from - E_to >= 0
    std::vector<Transition> pairs;
};

struct JumpOperator {
    QubitLabel bath{QubitLabel::A};
    double frequency{0.0};
    std::vector<Transition> pairs;
    double rate_down{0.0};  // J(w)(1 + n)
    double rate_up{0.0};    // J(w) n

    // Dense A_X(w) = sum over pairs of |to><from|.
    Eigen::Matrix<double, kDim, kDim> matrix() const;
};

struct JumpOperatorSet {
    std::vector<JumpOperator> operators;
    // Frequencies of groups removed under ZeroFrequencyPolicy::kDrop.
    std::vector<double> dropped_frequencies;

    bool degeneracy_warning() const { return !dropped_frequencies.empty(); }
};

struct ChannelRates {
    double down{0.0};
    double up{0.0};
};

inline constexpr double kFrequencyTolerance = 1e-9;

Hamiltonian build_hamiltonian(const CouplingConfig& cfg);

// All single flips of `bath`, grouped by |E_i - E_j| within kFrequencyTolerance.
// Groups are ordered by decreasing frequency; pairs by source index.
std::vector<TransitionGroup> bohr_spectrum(const Hamiltonian& h, QubitLabel bath);

// 1 / (exp(w/T) - 1) evaluated without overflow. Throws std::domain_error unless w > 0, T > 0.
double bose_occupation(double omega, double temperature);

// Ohmic emission/absorption rates; omega == 0 yields the kappa*T limit.
ChannelRates ohmic_rates(double omega, double temperature, double kappa);

JumpOperatorSet jump_operators(const Hamiltonian& h, const BathConfig& bath,
                               ZeroFrequencyPolicy policy = ZeroFrequencyPolicy::kOhmicLimit);

// Everything needed to rebuild a TransistorModel; amplification varies t_b only.
struct ModelSpec {
    CouplingConfig coupling{};
    double t_a{0.2};
    double t_b{0.08};
    double t_c{0.02};
    double kappa{1.0};
    ZeroFrequencyPolicy zero_frequency{ZeroFrequencyPolicy::kOhmicLimit};

    double temperature(QubitLabel q) const;
    BathConfig bath(QubitLabel q) const { return {q, temperature(q), kappa}; }
    ModelSpec with_base_temperature(double t) const {
        ModelSpec s = *this;
        s.t_b = t;
        return s;
    }
    ModelSpec with_common_temperature(double t) const {
        ModelSpec s = *this;
        s.t_a = s.t_b = s.t_c = t;
        return s;
    }
};

// Immutable after construction. The generator is stored in a sparse form:
//   L[rho]_kl = G_kl rho_kl + sum_terms rate * rho_src
// where G collects -i(E_k - E_l) and the anticommutator decay, and each
// term is one entry of A rho A^dagger.
class TransistorModel {
public:
    explicit TransistorModel(const ModelSpec& spec);

    const ModelSpec& spec() const noexcept { return spec_; }
    const Hamiltonian& hamiltonian() const noexcept { return hamiltonian_; }
    BathConfig bath(QubitLabel q) const { return spec_.bath(q); }
    const JumpOperatorSet& jump_operators(QubitLabel q) const { return jumps_[slot(q)]; }

    // Largest channel rate or Bohr frequency; sets the step-size bound.
    double max_rate() const noexcept { return max_rate_; }

    Operator dissipator(QubitLabel q, const Operator& rho) const;
    Operator master_rhs(const Operator& rho) const;
    void master_rhs(const Operator& rho, Operator& out) const;

private:
    struct JumpTerm {
        int dst_row, dst_col;
        int src_row, src_col;
        double rate;
    };
    struct BathKernel {
        std::array<double, kDim> decay{};  // diagonal of sum rate * A^dagger A
        std::vector<JumpTerm> terms;
    };

    static BathKernel make_kernel(const JumpOperatorSet& set);

    ModelSpec spec_;
    Hamiltonian hamiltonian_;
    std::array<JumpOperatorSet, 3> jumps_;
    std::array<BathKernel, 3> kernels_;
    Operator generator_;  // full elementwise part of master_rhs
    std::vector<JumpTerm> all_terms_;
    double max_rate_{0.0};
};

inline Operator dissipator(const TransistorModel& model, QubitLabel bath, const Operator& rho) {
    return model.dissipator(bath, rho);
}

inline Operator master_rhs(const TransistorModel& model, const Operator& rho) {
    return model.master_rhs(rho);
}

}  // namespace qtt
