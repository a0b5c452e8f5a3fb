#include "qtt/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qtt {

Operator Hamiltonian::matrix() const {
    Operator m = Operator::Zero();
    for (int i = 0; i < kDim; ++i) m(i, i) = diag(i);
    return m;
}

Eigen::Matrix<double, kDim, kDim> JumpOperator::matrix() const {
    Eigen::Matrix<double, kDim, kDim> a = Eigen::Matrix<double, kDim, kDim>::Zero();
    for (const auto& p : pairs) a(p.to, p.from) = 1.0;
    return a;
}

Hamiltonian build_hamiltonian(const CouplingConfig& cfg) {
    Hamiltonian h;
    for (int i = 0; i < kDim; ++i) {
        const int sa = sigma_z_sign(i, QubitLabel::A);
        const int sb = sigma_z_sign(i, QubitLabel::B);
        const int sc = sigma_z_sign(i, QubitLabel::C);
        h.diag(i) = 0.5 * (cfg.omega_ab * sa * sb + cfg.omega_bc * sb * sc + cfg.omega_ca * sc * sa);
    }
    return h;
}

std::vector<TransitionGroup> bohr_spectrum(const Hamiltonian& h, QubitLabel bath) {
    std::vector<TransitionGroup> groups;
    const int mask = qubit_mask(bath);
    for (int i = 0; i < kDim; ++i) {
        const int j = i ^ mask;
        const double w = h.energy(i) - h.energy(j);
        Transition t;
        if (std::abs(w) <= kFrequencyTolerance) {
            // Degenerate pair: record once, higher index -> lower index.
            if (i < j) continue;
            t = {i, j};
        } else if (w > 0.0) {
            t = {i, j};
        } else {
            continue;
        }
        const double freq = std::abs(w) <= kFrequencyTolerance ? 0.0 : w;
        auto it = std::find_if(groups.begin(), groups.end(), [&](const TransitionGroup& g) {
            return std::abs(g.frequency - freq) <= kFrequencyTolerance;
        });
        if (it == groups.end()) {
            groups.push_back({freq, {t}});
        } else {
            it->pairs.push_back(t);
        }
    }
    std::sort(groups.begin(), groups.end(),
              [](const TransitionGroup& a, const TransitionGroup& b) { return a.frequency > b.frequency; });
    return groups;
}

double bose_occupation(double omega, double temperature) {
    if (!(omega > 0.0) || !(temperature > 0.0) || !std::isfinite(omega) || !std::isfinite(temperature)) {
        throw std::domain_error("bose_occupation: requires omega > 0 and temperature > 0");
    }
    const double x = omega / temperature;
    // exp(-x) / (1 - exp(-x)); expm1 keeps the small-x limit accurate.
    return std::exp(-x) / -std::expm1(-x);
}

ChannelRates ohmic_rates(double omega, double temperature, double kappa) {
    if (!(temperature > 0.0)) throw std::domain_error("ohmic_rates: temperature must be positive");
    if (omega == 0.0) return {kappa * temperature, kappa * temperature};
    const double n = bose_occupation(omega, temperature);
    return {kappa * omega * (1.0 + n), kappa * omega * n};
}

JumpOperatorSet jump_operators(const Hamiltonian& h, const BathConfig& bath, ZeroFrequencyPolicy policy) {
    if (!(bath.temperature > 0.0) || !std::isfinite(bath.temperature)) {
        throw std::invalid_argument("jump_operators: bath temperature must be positive and finite");
    }
    if (!(bath.kappa >= 0.0)) throw std::invalid_argument("jump_operators: kappa must be non-negative");
    JumpOperatorSet out;
    for (auto& g : bohr_spectrum(h, bath.label)) {
        if (g.frequency == 0.0 && policy == ZeroFrequencyPolicy::kDrop) {
            out.dropped_frequencies.push_back(0.0);
            continue;
        }
        const auto rates = ohmic_rates(g.frequency, bath.temperature, bath.kappa);
        out.operators.push_back({bath.label, g.frequency, std::move(g.pairs), rates.down, rates.up});
    }
    return out;
}

double ModelSpec::temperature(QubitLabel q) const {
    switch (q) {
        case QubitLabel::A: return t_a;
        case QubitLabel::B: return t_b;
        case QubitLabel::C: return t_c;
    }
    throw std::invalid_argument("ModelSpec::temperature: bad label");
}

TransistorModel::BathKernel TransistorModel::make_kernel(const JumpOperatorSet& set) {
    BathKernel k;
    for (const auto& op : set.operators) {
        for (const auto& p : op.pairs) {
            // A^dagger A and A A^dagger are diagonal: sources (targets) within a group are distinct.
            k.decay[static_cast<std::size_t>(p.from)] += op.rate_down;
            k.decay[static_cast<std::size_t>(p.to)] += op.rate_up;
            for (const auto& q : op.pairs) {
                if (op.rate_down != 0.0) k.terms.push_back({p.to, q.to, p.from, q.from, op.rate_down});
                if (op.rate_up != 0.0) k.terms.push_back({p.from, q.from, p.to, q.to, op.rate_up});
            }
        }
    }
    return k;
}

TransistorModel::TransistorModel(const ModelSpec& spec)
    : spec_(spec), hamiltonian_(build_hamiltonian(spec.coupling)) {
    const auto& c = spec.coupling;
    if (!std::isfinite(c.omega_ab) || !std::isfinite(c.omega_bc) || !std::isfinite(c.omega_ca)) {
        throw std::invalid_argument("TransistorModel: couplings must be finite");
    }
    for (auto q : kAllQubits) {
        jumps_[slot(q)] = qtt::jump_operators(hamiltonian_, spec.bath(q), spec.zero_frequency);
        kernels_[slot(q)] = make_kernel(jumps_[slot(q)]);
        for (const auto& op : jumps_[slot(q)].operators) {
            max_rate_ = std::max({max_rate_, op.rate_down, op.rate_up});
        }
        const auto& t = kernels_[slot(q)].terms;
        all_terms_.insert(all_terms_.end(), t.begin(), t.end());
    }
    const double spread = hamiltonian_.diag.maxCoeff() - hamiltonian_.diag.minCoeff();
    max_rate_ = std::max(max_rate_, spread);

    for (int l = 0; l < kDim; ++l) {
        for (int k = 0; k < kDim; ++k) {
            double decay = 0.0;
            for (const auto& kern : kernels_) {
                decay += kern.decay[static_cast<std::size_t>(k)] + kern.decay[static_cast<std::size_t>(l)];
            }
            generator_(k, l) = cplx(-0.5 * decay, -(hamiltonian_.energy(k) - hamiltonian_.energy(l)));
        }
    }
}

Operator TransistorModel::dissipator(QubitLabel q, const Operator& rho) const {
    const auto& kern = kernels_[slot(q)];
    Operator out;
    for (int l = 0; l < kDim; ++l) {
        for (int k = 0; k < kDim; ++k) {
            out(k, l) = -0.5 * (kern.decay[static_cast<std::size_t>(k)] + kern.decay[static_cast<std::size_t>(l)]) *
                        rho(k, l);
        }
    }
    for (const auto& t : kern.terms) out(t.dst_row, t.dst_col) += t.rate * rho(t.src_row, t.src_col);
    return out;
}

void TransistorModel::master_rhs(const Operator& rho, Operator& out) const {
    out = generator_.cwiseProduct(rho);
    for (const auto& t : all_terms_) out(t.dst_row, t.dst_col) += t.rate * rho(t.src_row, t.src_col);
}

Operator TransistorModel::master_rhs(const Operator& rho) const {
    Operator out;
    master_rhs(rho, out);
    return out;
}

}  // namespace qtt
