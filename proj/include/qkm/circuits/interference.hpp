#pragma once

#include <array>
#include <vector>

#include "qkm/prep/polar.hpp"
#include "qkm/sim/circuit.hpp"
#include "qkm/sim/measurement.hpp"
#include "qkm/sim/state_vector.hpp"

namespace qkm::circuits {

using prep::PolarAngle;

/// Register layout shared by both interference circuits.
inline constexpr int kAncilla = 0;
inline constexpr int kIndex = 1;
inline constexpr int kData = 2;
inline constexpr int kClass = 3;
inline constexpr int kInterferenceQubits = 4;

/// Polar angles of the test vector and the two competing centroids.
struct InterferenceInputs {
    PolarAngle theta_t;
    PolarAngle theta_c1;
    PolarAngle theta_c2;
};

/// Data-qubit state inside one (ancilla, index) branch of a
/// pre-interference state.
struct BranchState {
    int ancilla = 0;
    int index = 0;
    std::array<double, 2> qubit_state{};  // unit norm
};

/// State preparation of the distance classifier on (a0, m0, i0, c0).
///
/// The prepared state is
///   1/2 * sum_m (|0>_a |t>_i + |1>_a |c_m>_i) |m>_m |m>_c
/// with |v> = (cos theta_v, sin theta_v). The test vector is loaded by an
/// anti-controlled Ry on the ancilla, each centroid by a doubly-controlled Ry
/// selected by (a0 = 1, m0), and CX m0 -> c0 flips the class label. The final
/// Hadamard on a0 is not included; see complete_interference().
sim::Circuit build_basic_interference_circuit(const InterferenceInputs& in);

/// Four-branch variant: branch (a, m) holds the data-qubit state produced by
/// optimized_branch_sequence(in, a, m). Each sequence reduces to Ry(g) X for
/// a branch angle g, so all four are realized at once by X on i0 followed by
/// one uniformly controlled Ry (four Ry, four CX). Final Hadamard not
/// included.
sim::Circuit build_optimized_interference_circuit(const InterferenceInputs& in);

/// The single-qubit gate sequence, in time order, that defines the data-qubit
/// state of branch (ancilla, index) of the optimized circuit. With
/// Ry(theta) = [[cos theta/2, -sin theta/2], [sin theta/2, cos theta/2]] and a_v the
/// polar angle of v:
///   t   (0,0): Ry(2 a_t), X, Ry(a_c1), Ry(a_c2)
///   t'  (0,1): Ry(2 a_t), Ry(a_c1), X, Ry(a_c2)
///   c1  (1,0): X, Ry(-a_c1), Ry(a_c2)
///   c2  (1,1): Ry(a_c1), X, Ry(-a_c2)
std::vector<sim::GateApplication> optimized_branch_sequence(const InterferenceInputs& in, int ancilla, int index);

/// Appends the interference Hadamard on the ancilla and sets every qubit as
/// measured.
sim::Circuit complete_interference(sim::Circuit preparation);

/// Splits a 4-qubit interference state (before the final H) into its four
/// branch states. The class qubit must equal the index qubit in every
/// branch with nonzero amplitude.
std::array<BranchState, 4> branch_states(const sim::StateVector& preparation);

enum class BinaryWinner { Centroid1, Centroid2 };

/// Conditional class probabilities given ancilla = 0.
struct ConstructiveSplit {
    double ancilla0_mass = 0.0;
    double joint0 = 0.0;  // P(ancilla = 0, class = 0)
    double joint1 = 0.0;
    double class0 = 0.0;  // P(class = 0 | ancilla = 0)
    double class1 = 0.0;
};

/// Reads a histogram over (a0, m0, i0, c0) or over (a0, c0).
/// Throws qkm::DegenerateConfiguration when no mass has ancilla = 0 (at most
/// 1e-12 for exact histograms).
ConstructiveSplit constructive_split(const sim::MeasurementHistogram& histogram);

/// Centroid 1 wins when P(class 0 | a = 0) >= P(class 1 | a = 0). Exact
/// histograms treat joint probabilities within 1e-12 as ties; sampled
/// histograms compare counts.
BinaryWinner decide_binary(const sim::MeasurementHistogram& histogram);

enum class InterferenceVariant { Basic, Optimized };

/// Builds, completes and executes one comparison.
BinaryWinner interference_decision(const InterferenceInputs& in, InterferenceVariant variant, sim::ShotMode mode,
                                   std::uint64_t seed);

}  // namespace qkm::circuits
