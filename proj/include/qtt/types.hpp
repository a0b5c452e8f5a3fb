// types.hpp: fixed-size operator types and qubit bookkeeping for the three-qubit system
#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <string_view>

namespace qtt {

using cplx = std::complex<double>;

inline constexpr int kQubits = 3;
inline constexpr int kDim = 8;

using Operator = Eigen::Matrix<cplx, kDim, kDim>;
using Ket = Eigen::Matrix<cplx, kDim, 1>;
using RealVector8 = Eigen::Matrix<double, kDim, 1>;

// Tensor slot order is A, B, C; basis index = 4a + 2b + c.
enum class QubitLabel : int { A = 0, B = 1, C = 2 };

inline constexpr std::array<QubitLabel, 3> kAllQubits{QubitLabel::A, QubitLabel::B, QubitLabel::C};

constexpr int slot(QubitLabel q) noexcept { return static_cast<int>(q); }

// Bit mask of the qubit inside a basis index.
constexpr int qubit_mask(QubitLabel q) noexcept { return 1 << (kQubits - 1 - slot(q)); }

// 0 for |0>, 1 for |1>.
constexpr int qubit_bit(int basis_index, QubitLabel q) noexcept {
    return (basis_index & qubit_mask(q)) != 0 ? 1 : 0;
}

// sigma_z eigenvalue: +1 for |0>, -1 for |1>.
constexpr int sigma_z_sign(int basis_index, QubitLabel q) noexcept {
    return qubit_bit(basis_index, q) == 0 ? 1 : -1;
}

constexpr std::string_view to_string(QubitLabel q) noexcept {
    switch (q) {
        case QubitLabel::A: return "A";
        case QubitLabel::B: return "B";
        case QubitLabel::C: return "C";
    }
    return "?";
}

}  // namespace qtt
