#include "qtt/states.hpp"

#include "qtt/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qtt {

namespace {

using Qubit = Eigen::Vector2cd;
using TwoQubit = Eigen::Vector4cd;

Ket kron3(const Qubit& a, const Qubit& b, const Qubit& c) {
    Ket k;
    for (int i = 0; i < kDim; ++i) k(i) = a((i >> 2) & 1) * b((i >> 1) & 1) * c(i & 1);
    return k;
}

// |a> (x) |bc>
Ket kron_1_2(const Qubit& a, const TwoQubit& bc) {
    Ket k;
    for (int i = 0; i < kDim; ++i) k(i) = a((i >> 2) & 1) * bc(i & 3);
    return k;
}

// |ab> (x) |c>
Ket kron_2_1(const TwoQubit& ab, const Qubit& c) {
    Ket k;
    for (int i = 0; i < kDim; ++i) k(i) = ab((i >> 1) & 3) * c(i & 1);
    return k;
}

Qubit haar_qubit(CounterRng& rng) {
    Qubit q(rng.complex_normal(), rng.complex_normal());
    return q / q.norm();
}

TwoQubit haar_two_qubit(CounterRng& rng) {
    TwoQubit q;
    for (int i = 0; i < 4; ++i) q(i) = rng.complex_normal();
    return q / q.norm();
}

// a|001> + b|010> + c|100> + d|000> with |0>, |1> replaced by the given basis.
Ket w_form(cplx a, cplx b, cplx c, cplx d, const Qubit& zero, const Qubit& one) {
    return a * kron3(zero, zero, one) + b * kron3(zero, one, zero) + c * kron3(one, zero, zero) +
           d * kron3(zero, zero, zero);
}

Ket w_form(cplx a, cplx b, cplx c, cplx d) {
    return w_form(a, b, c, d, Qubit(1.0, 0.0), Qubit(0.0, 1.0));
}

Ket one_hot(int i) {
    Ket k = Ket::Zero();
    k(i) = 1.0;
    return k;
}

}  // namespace

PureState PureState::normalized(const Ket& k) {
    const double n = k.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("PureState: cannot normalize a zero vector");
    return PureState{k / n};
}

ParadigmState parse_paradigm(std::string_view name) {
    if (name == "GHZ") return ParadigmState::kGhz;
    if (name == "W") return ParadigmState::kW;
    if (name == "k000" || name == "000") return ParadigmState::k000;
    if (name == "k001" || name == "001") return ParadigmState::k001;
    if (name == "k011" || name == "011") return ParadigmState::k011;
    throw std::invalid_argument("unknown paradigm state: " + std::string(name));
}

std::string to_string(ParadigmState s) {
    switch (s) {
        case ParadigmState::kGhz: return "GHZ";
        case ParadigmState::kW: return "W";
        case ParadigmState::k000: return "k000";
        case ParadigmState::k001: return "k001";
        case ParadigmState::k011: return "k011";
    }
    return "?";
}

PureState paradigm_state(ParadigmState s) {
    switch (s) {
        case ParadigmState::kGhz: return PureState::normalized(one_hot(0) + one_hot(7));
        case ParadigmState::kW: return PureState::normalized(one_hot(1) + one_hot(2) + one_hot(4));
        case ParadigmState::k000: return PureState{one_hot(0)};
        case ParadigmState::k001: return PureState{one_hot(1)};
        case ParadigmState::k011: return PureState{one_hot(3)};
    }
    throw std::invalid_argument("paradigm_state: bad state");
}

ExampleState parse_example(std::string_view name) {
    if (name == "GHZ'") return ExampleState::kGhzPrime;
    if (name == "AB:C'") return ExampleState::kAbCPrime;
    if (name == "W'") return ExampleState::kWPrime;
    if (name == "Product'") return ExampleState::kProductPrime;
    throw std::invalid_argument("unknown example state: " + std::string(name));
}

std::string to_string(ExampleState s) {
    switch (s) {
        case ExampleState::kGhzPrime: return "GHZ'";
        case ExampleState::kAbCPrime: return "AB:C'";
        case ExampleState::kWPrime: return "W'";
        case ExampleState::kProductPrime: return "Product'";
    }
    return "?";
}

PureState example_state(ExampleState s) {
    switch (s) {
        case ExampleState::kGhzPrime: {
            // a|000> + b|001> + c|010> + d|100> + a1|011> + b1|110> + c1|101> + d1|111>
            Ket k;
            k(0) = {-0.5446, -0.5546};
            k(1) = {-0.6614, -0.1799};
            k(2) = {0.4376, 0.4659};
            k(4) = {-2.2000, 0.3749};
            k(3) = {-1.0505, 0.2633};
            k(6) = {-0.4266, -0.4274};
            k(5) = {-0.9067, 0.9039};
            k(7) = {0.1572, 2.3707};
            return PureState::normalized(k);
        }
        case ExampleState::kAbCPrime: {
            const TwoQubit ab(cplx(-0.2506, -1.2750), cplx(0.4573, 0.0094), cplx(1.1436, 0.5672),
                              cplx(-0.9806, 1.2475));
            const Qubit c(cplx(-0.7718, 0.4604), cplx(0.2562, -0.3517));
            return PureState::normalized(kron_2_1(ab, c));
        }
        case ExampleState::kWPrime:
            return PureState::normalized(w_form({-0.6549, -1.5778}, {0.1125, -0.4555}, {0.8575, -0.4032},
                                                {-0.5980, -1.0251}));
        case ExampleState::kProductPrime: {
            const Qubit a(cplx(0.7938, -0.4108), cplx(1.6511, 0.8510));
            const Qubit b(cplx(-0.5692, 1.3391), cplx(-0.5305, -0.3410));
            const Qubit c(cplx(-2.4324, -1.0312), cplx(-1.1394, -0.7807));
            return PureState::normalized(kron3(a, b, c));
        }
    }
    throw std::invalid_argument("example_state: bad state");
}

std::string to_string(StateClass c) {
    switch (c) {
        case StateClass::kGhz: return "GHZClass";
        case StateClass::kWZ: return "WClassZ";
        case StateClass::kWX: return "WClassX";
        case StateClass::kWY: return "WClassY";
        case StateClass::kBiseparableA_BC: return "BiseparableA_BC";
        case StateClass::kBiseparableAB_C: return "BiseparableAB_C";
        case StateClass::kBiseparableB_AC: return "BiseparableB_AC";
        case StateClass::kProduct: return "Product";
    }
    return "?";
}

StateClass parse_state_class(std::string_view name) {
    for (auto c : {StateClass::kGhz, StateClass::kWZ, StateClass::kWX, StateClass::kWY,
                   StateClass::kBiseparableA_BC, StateClass::kBiseparableAB_C, StateClass::kBiseparableB_AC,
                   StateClass::kProduct}) {
        if (to_string(c) == name) return c;
    }
    throw std::invalid_argument("unknown state class: " + std::string(name));
}

PureState sample_random(StateClass cls, std::uint64_t seed) {
    CounterRng rng(seed, static_cast<std::uint64_t>(cls) + 1);
    const double r = 1.0 / std::sqrt(2.0);
    switch (cls) {
        case StateClass::kGhz: {
            Ket k;
            for (int i = 0; i < kDim; ++i) k(i) = rng.complex_normal();
            return PureState::normalized(k);
        }
        case StateClass::kWZ:
        case StateClass::kWX:
        case StateClass::kWY: {
            const cplx a = rng.complex_normal(), b = rng.complex_normal();
            const cplx c = rng.complex_normal(), d = rng.complex_normal();
            Qubit zero(1.0, 0.0), one(0.0, 1.0);
            if (cls == StateClass::kWX) {
                zero = Qubit(r, r);
                one = Qubit(r, -r);
            } else if (cls == StateClass::kWY) {
                zero = Qubit(r, cplx(0.0, r));
                one = Qubit(r, cplx(0.0, -r));
            }
            return PureState::normalized(w_form(a, b, c, d, zero, one));
        }
        case StateClass::kBiseparableA_BC: {
            const Qubit a = haar_qubit(rng);
            return PureState::normalized(kron_1_2(a, haar_two_qubit(rng)));
        }
        case StateClass::kBiseparableAB_C: {
            const TwoQubit ab = haar_two_qubit(rng);
            return PureState::normalized(kron_2_1(ab, haar_qubit(rng)));
        }
        case StateClass::kBiseparableB_AC: {
            const Qubit b = haar_qubit(rng);
            const TwoQubit ac = haar_two_qubit(rng);
            Ket k;
            for (int i = 0; i < kDim; ++i) {
                const int ia = (i >> 2) & 1, ib = (i >> 1) & 1, ic = i & 1;
                k(i) = b(ib) * ac(2 * ia + ic);
            }
            return PureState::normalized(k);
        }
        case StateClass::kProduct: {
            const Qubit a = haar_qubit(rng);
            const Qubit b = haar_qubit(rng);
            return PureState::normalized(kron3(a, b, haar_qubit(rng)));
        }
    }
    throw std::invalid_argument("sample_random: bad class");
}

std::uint64_t scan_seed(std::uint64_t master_seed, StateClass cls, std::uint64_t index) {
    const std::uint64_t stream = (static_cast<std::uint64_t>(cls) << 32) | (index & 0xFFFFFFFFULL);
    return splitmix64_mix(master_seed ^ splitmix64_mix(stream * kGoldenGamma + 1));
}

DensityMatrix density_of(const PureState& psi) {
    return DensityMatrix::from_matrix(psi.amplitudes * psi.amplitudes.adjoint());
}

Eigen::MatrixXcd reduced_density(const Operator& rho, std::span<const QubitLabel> keep) {
    const int nk = static_cast<int>(keep.size());
    const int dim = 1 << nk;
    int keep_mask = 0;
    for (auto q : keep) keep_mask |= qubit_mask(q);
    auto sub_index = [&](int full) {
        int s = 0;
        for (auto q : keep) s = (s << 1) | qubit_bit(full, q);
        return s;
    };
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < kDim; ++i) {
        for (int j = 0; j < kDim; ++j) {
            // Traced-out qubits must agree between row and column.
            if (((i ^ j) & ~keep_mask) != 0) continue;
            out(sub_index(i), sub_index(j)) += rho(i, j);
        }
    }
    return out;
}

double purity(const Eigen::MatrixXcd& rho) { return (rho * rho).trace().real(); }

double three_tangle(const PureState& psi) {
    auto a = [&](int i, int j, int k) { return psi.amplitudes(4 * i + 2 * j + k); };
    const cplx d1 = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) + a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
                    a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) + a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
    const cplx d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
                    a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
                    a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    const cplx d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

}  // namespace qtt
