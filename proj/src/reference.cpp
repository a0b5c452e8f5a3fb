#include "qtt/reference.hpp"

namespace qtt::reference {

Operator dissipator(const TransistorModel& model, QubitLabel bath, const Operator& rho) {
    Operator out = Operator::Zero();
    for (const auto& op : model.jump_operators(bath).operators) {
        const Operator a = op.matrix().cast<cplx>();
        const Operator ad = a.adjoint();
        const Operator ada = ad * a;
        const Operator aad = a * ad;
        out += op.rate_down * (a * rho * ad - 0.5 * (rho * ada + ada * rho));
        out += op.rate_up * (ad * rho * a - 0.5 * (rho * aad + aad * rho));
    }
    return out;
}

Operator master_rhs(const TransistorModel& model, const Operator& rho) {
    const Operator h = model.hamiltonian().matrix();
    Operator out = cplx(0.0, -1.0) * (h * rho - rho * h);
    for (auto q : kAllQubits) out += reference::dissipator(model, q, rho);
    return out;
}

}  // namespace qtt::reference
