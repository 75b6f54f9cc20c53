#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qkm/sim/gate.hpp"

namespace qkm::sim {

inline constexpr int kMaxQubits = 12;

/// Dense pure state of 1..12 qubits.
///
/// Basis index i is read most-significant-bit first and qubit 0 is the most
/// significant bit, so for two qubits index 2 is |10> (qubit 0 set).
class StateVector {
  public:
    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(int num_qubits);

    static StateVector basis(int num_qubits, std::size_t index);

    /// Throws std::invalid_argument unless the length is 2^n for n in
    /// 1..12 and the norm is 1 within `tolerance`.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes, double tolerance = 1e-10);
    static StateVector from_real(std::span<const double> amplitudes, double tolerance = 1e-10);

    int num_qubits() const noexcept { return num_qubits_; }
    std::size_t size() const noexcept { return amplitudes_.size(); }
    std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
    Amplitude operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm() const;

    /// Index mask of `qubit`.
    std::size_t mask(int qubit) const noexcept { return std::size_t{1} << (num_qubits_ - 1 - qubit); }

    /// In-place U|psi>. Validates `op` against this register first.
    void apply(const GateApplication& op);

  private:
    StateVector(int num_qubits, std::vector<Amplitude> amplitudes);

    int num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

/// Returns U|psi> for the gate embedded on its target and controls.
StateVector apply_gate(StateVector state, const GateApplication& op);

/// Hadamard on the most significant qubit: the MSB-0 half becomes
/// (a_i + a_{i+h})/sqrt2 and the MSB-1 half (a_i - a_{i+h})/sqrt2.
/// Throws std::invalid_argument for single-qubit states.
StateVector interfere_msb(StateVector state);

}  // namespace qkm::sim
