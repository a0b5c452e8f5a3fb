// reference.hpp: dense, literal-formula master equation kept as a test oracle for the sparse kernels
#pragma once

#include "qtt/model.hpp"

namespace qtt::reference {

// sum_w J(1+n)[A rho A^+ - {rho, A^+ A}/2] + J n [A^+ rho A - {rho, A A^+}/2] with full 8x8 products.
Operator dissipator(const TransistorModel& model, QubitLabel bath, const Operator& rho);

// -i[H, rho] + sum_X dissipator(X, rho).
Operator master_rhs(const TransistorModel& model, const Operator& rho);

}  // namespace qtt::reference
