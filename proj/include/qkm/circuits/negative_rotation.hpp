#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qkm/prep/polar.hpp"
#include "qkm/sim/circuit.hpp"
#include "qkm/sim/measurement.hpp"

namespace qkm::circuits {

/// One qubit per centroid: qubit j gets Ry(theta_t) then Ry(-theta_cj), so
/// P(qubit j = 0) = cos^2((theta_t - theta_cj) / 2). No entangling gates.
/// Throws std::invalid_argument for an empty centroid list or more
/// centroids than the simulator has qubits.
sim::Circuit build_negative_rotation_circuit(prep::PolarAngle theta_t, std::span<const prep::PolarAngle> theta_cs);

/// P(qubit j = 0) for each centroid, exact or estimated from shots.
std::vector<double> negative_rotation_p0(prep::PolarAngle theta_t, std::span<const prep::PolarAngle> theta_cs,
                                         sim::ShotMode mode = sim::ShotMode::exact(), std::uint64_t seed = 0);

/// Index of the largest P|0>; ties go to the lowest index. Exact
/// probabilities within 1e-12 of each other are ties.
std::size_t nearest_by_negative_rotation(prep::PolarAngle theta_t, std::span<const prep::PolarAngle> theta_cs,
                                         sim::ShotMode mode = sim::ShotMode::exact(), std::uint64_t seed = 0);

}  // namespace qkm::circuits
