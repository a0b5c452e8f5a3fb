// states.hpp: initial states: paradigm kets, fixed example states and class-wise random sampling
#pragma once

#include "qtt/dynamics.hpp"
#include "qtt/types.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qtt {

struct PureState {
    Ket amplitudes{Ket::Zero()};

    // Scales `k` to unit norm; throws std::invalid_argument on a zero vector.
    static PureState normalized(const Ket& k);
    cplx operator[](int i) const { return amplitudes(i); }
};

enum class ParadigmState { kGhz, kW, k000, k001, k011 };

// Accepts GHZ, W, k000, k001, k011 (also 000, 001, 011). Throws std::invalid_argument.
ParadigmState parse_paradigm(std::string_view name);
std::string to_string(ParadigmState s);
PureState paradigm_state(ParadigmState s);
inline PureState paradigm_state(std::string_view name) { return paradigm_state(parse_paradigm(name)); }

// Fixed necessarily-transient example states (coefficients to four decimals, renormalized).
enum class ExampleState { kGhzPrime, kAbCPrime, kWPrime, kProductPrime };

ExampleState parse_example(std::string_view name);  // GHZ', AB:C', W', Product'
std::string to_string(ExampleState s);
PureState example_state(ExampleState s);

enum class StateClass {
    kGhz,
    kWZ,
    kWX,
    kWY,
    kBiseparableA_BC,
    kBiseparableAB_C,
    kBiseparableB_AC,
    kProduct,
};

// The seven classes of the 350-state scan (B:AC is sampled on request only).
inline constexpr std::array<StateClass, 7> kScanClasses{
    StateClass::kGhz,           StateClass::kWZ, StateClass::kWX, StateClass::kWY, StateClass::kBiseparableA_BC,
    StateClass::kBiseparableAB_C, StateClass::kProduct};

std::string to_string(StateClass c);
StateClass parse_state_class(std::string_view name);

// Deterministic in (cls, seed).
PureState sample_random(StateClass cls, std::uint64_t seed);

// Seed of sample `index` of class `cls` in a scan driven by `master_seed`.
std::uint64_t scan_seed(std::uint64_t master_seed, StateClass cls, std::uint64_t index);

DensityMatrix density_of(const PureState& psi);

// Partial trace keeping `keep` (in A, B, C order); result is 2^|keep| square.
Eigen::MatrixXcd reduced_density(const Operator& rho, std::span<const QubitLabel> keep);

double purity(const Eigen::MatrixXcd& rho);

// Coffman-Kundu-Wootters three-tangle 4|Cayley hyperdeterminant|.
double three_tangle(const PureState& psi);

}  // namespace qtt
