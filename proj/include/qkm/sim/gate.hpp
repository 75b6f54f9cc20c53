#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>
#include <vector>

namespace qkm::sim {

using Amplitude = std::complex<double>;

/// Gate kinds understood by the simulator. T and Tdg only appear as the
/// output of decompose_to_elementary (CCX needs a complex phase, see there).
enum class GateKind { H, X, T, Tdg, Ry, CX, CCX, CRy, CCRy };

std::string_view to_string(GateKind kind);

/// Number of control qubits a kind requires.
int control_count(GateKind kind);

/// True for kinds that carry an angle.
bool is_rotation(GateKind kind);

/// True for kinds in the elementary basis {H, X, T, Tdg, Ry, CX}.
bool is_elementary(GateKind kind);

/// One gate applied to a target, conditioned on all controls being |1>.
struct GateApplication {
    GateKind kind = GateKind::H;
    std::optional<double> angle;  // radians; rotations only
    std::vector<int> controls;
    int target = 0;

    static GateApplication h(int q) { return {GateKind::H, std::nullopt, {}, q}; }
    static GateApplication x(int q) { return {GateKind::X, std::nullopt, {}, q}; }
    static GateApplication t(int q) { return {GateKind::T, std::nullopt, {}, q}; }
    static GateApplication tdg(int q) { return {GateKind::Tdg, std::nullopt, {}, q}; }
    static GateApplication ry(double theta, int q) { return {GateKind::Ry, theta, {}, q}; }
    static GateApplication cx(int c, int q) { return {GateKind::CX, std::nullopt, {c}, q}; }
    static GateApplication ccx(int c0, int c1, int q) { return {GateKind::CCX, std::nullopt, {c0, c1}, q}; }
    static GateApplication cry(double theta, int c, int q) { return {GateKind::CRy, theta, {c}, q}; }
    static GateApplication ccry(double theta, int c0, int c1, int q) {
        return {GateKind::CCRy, theta, {c0, c1}, q};
    }

    /// Controls followed by the target.
    std::vector<int> qubits() const;

    bool operator==(const GateApplication&) const = default;
};

/// Throws std::out_of_range for bad indices and std::invalid_argument for a
/// kind/controls/angle mismatch.
void validate(const GateApplication& op, int num_qubits);

/// Row-major 2x2 matrix applied to the target when every control is |1>.
/// Ry follows [[cos t/2, -sin t/2], [sin t/2, cos t/2]].
std::array<Amplitude, 4> target_matrix(const GateApplication& op);

/// Full 2^k x 2^k unitary of `op` on its own k = controls + 1 qubits, with
/// the controls as the most significant qubits in listed order.
std::vector<Amplitude> local_unitary(const GateApplication& op);

}  // namespace qkm::sim
