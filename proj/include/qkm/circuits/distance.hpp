#pragma once

#include <cstdint>
#include <span>

#include "qkm/sim/circuit.hpp"
#include "qkm/sim/measurement.hpp"

namespace qkm::circuits {

enum class DistanceEncoding {
    ExactState,     // amplitudes (t_x, t_y, c_x, c_y) / Norm
    RelativeAngle,  // t at angle 0, c at the angular difference; norms kept
};

struct DistanceCircuit {
    sim::Circuit circuit;
    double norm = 0.0;  // sqrt(|t|^2 + |c|^2)
};

/// Two qubits. Prepares |psi> = (t_x, t_y, c_x, c_y) / Norm (or its rotated
/// copy in RelativeAngle mode) and applies H to the most significant qubit,
/// leaving (t - c) / (sqrt2 Norm) on the MSB = 1 half.
/// Throws qkm::DataError when t and c are both zero and
/// std::invalid_argument when either is not 2-D.
DistanceCircuit build_destructive_distance_circuit(std::span<const double> t, std::span<const double> c,
                                                   DistanceEncoding encoding = DistanceEncoding::ExactState);

struct DistanceResult {
    double distance = 0.0;
    double p1 = 0.0;
    double norm = 0.0;
};

/// p1 is the mass with MSB = 1; distance = norm * sqrt2 * sqrt(p1).
DistanceResult extract_distance(const sim::MeasurementHistogram& histogram, double norm);

/// Builds, runs and reads the destructive-interference circuit.
DistanceResult destructive_distance(std::span<const double> t, std::span<const double> c,
                                    sim::ShotMode mode = sim::ShotMode::exact(), std::uint64_t seed = 0,
                                    DistanceEncoding encoding = DistanceEncoding::ExactState);

struct SwapTestCircuit {
    sim::Circuit circuit;  // measures only the control qubit
    double z = 0.0;        // |a|^2 + |b|^2
};

/// Four qubits: q0 swap-test control, q1 holds
///   |phi> = (|a| |0> - |b| |1>) / sqrt(Z),
/// q2 q3 hold |psi> = (|0>|a^> + |1>|b^>) / sqrt2 with a^, b^ the unit
/// directions. The controlled swap of q1 and q2 is three CCX gates between
/// Hadamards on q0. P(q0 = 0) = 1/2 + 1/2 |<phi|psi>|^2 where the inner
/// product contracts q2, and |<phi|psi>|^2 = |a - b|^2 / (2Z).
/// Throws qkm::DataError for a zero vector.
SwapTestCircuit build_swaptest_circuit(std::span<const double> a, std::span<const double> b);

/// sqrt(2 Z |<phi|psi>|^2) with the overlap read as 2 P(q0 = 0) - 1,
/// clamped at 0.
double swaptest_distance(std::span<const double> a, std::span<const double> b,
                         sim::ShotMode mode = sim::ShotMode::exact(), std::uint64_t seed = 0);

/// Plain Euclidean distance.
double euclidean_distance(std::span<const double> a, std::span<const double> b);

}  // namespace qkm::circuits
