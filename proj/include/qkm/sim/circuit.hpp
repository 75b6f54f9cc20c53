#pragma once

#include <vector>

#include "qkm/sim/gate.hpp"
#include "qkm/sim/state_vector.hpp"

namespace qkm::sim {

/// Ordered gate list on a fixed register. Gates are validated on append.
class Circuit {
  public:
    explicit Circuit(int num_qubits);

    int num_qubits() const noexcept { return num_qubits_; }
    const std::vector<GateApplication>& ops() const noexcept { return ops_; }
    bool empty() const noexcept { return ops_.empty(); }
    std::size_t size() const noexcept { return ops_.size(); }

    /// Qubits read out by execute(); all qubits in index order by default.
    const std::vector<int>& measured_qubits() const noexcept { return measured_; }
    void set_measured_qubits(std::vector<int> qubits);

    Circuit& append(GateApplication op);
    Circuit& append(const Circuit& other);

    Circuit& h(int q) { return append(GateApplication::h(q)); }
    Circuit& x(int q) { return append(GateApplication::x(q)); }
    Circuit& ry(double theta, int q) { return append(GateApplication::ry(theta, q)); }
    Circuit& cx(int c, int q) { return append(GateApplication::cx(c, q)); }
    Circuit& ccx(int c0, int c1, int q) { return append(GateApplication::ccx(c0, c1, q)); }
    Circuit& cry(double theta, int c, int q) { return append(GateApplication::cry(theta, c, q)); }
    Circuit& ccry(double theta, int c0, int c1, int q) { return append(GateApplication::ccry(theta, c0, c1, q)); }

  private:
    int num_qubits_;
    std::vector<GateApplication> ops_;
    std::vector<int> measured_;
};

/// Applies the ops left to right starting from `initial`.
StateVector run_circuit(const Circuit& circuit, StateVector initial);

/// Same, starting from |0...0>.
StateVector run_circuit(const Circuit& circuit);

/// Longest chain of gates that share a qubit. Gates on disjoint qubits share
/// a layer. Counts the ops as given; call decompose_to_elementary first for
/// the elementary depth.
int depth(const Circuit& circuit);

/// Rewrites every gate into {H, X, T, Tdg, Ry, CX}:
///   CRy(t)  -> Ry(t/2), CX, Ry(-t/2), CX
///   CCRy(t) -> CRy(t/2)[c1], CX(c0,c1), CRy(-t/2)[c1], CX(c0,c1), CRy(t/2)[c0]
///   CCX     -> the 6-CX Clifford+T network
/// CCX cannot be built from real gates alone (every real 1- or 2-qubit gate
/// on three qubits has determinant +1, the Toffoli has -1), hence T/Tdg.
Circuit decompose_to_elementary(const Circuit& circuit);

}  // namespace qkm::sim
