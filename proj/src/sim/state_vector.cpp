#include "qkm/sim/state_vector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qkm::sim {

namespace {

int log2_exact(std::size_t n) {
    int k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return (std::size_t{1} << k) == n ? k : -1;
}

void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in 1.." + std::to_string(kMaxQubits) + ", got " +
                                    std::to_string(n));
    }
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    check_qubit_count(num_qubits);
    amplitudes_.assign(std::size_t{1} << num_qubits, 0.0);
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
    StateVector s(num_qubits);
    if (index >= s.size()) throw std::out_of_range("basis index out of range");
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes, double tolerance) {
    const int n = log2_exact(amplitudes.size());
    if (n < 1) throw std::invalid_argument("amplitude count must be a power of two >= 2");
    check_qubit_count(n);
    double sum = 0.0;
    for (const auto& a : amplitudes) sum += std::norm(a);
    if (!(std::abs(sum - 1.0) <= tolerance)) {
        throw std::invalid_argument("amplitudes are not unit norm (squared norm " + std::to_string(sum) + ")");
    }
    return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::from_real(std::span<const double> amplitudes, double tolerance) {
    return from_amplitudes(std::vector<Amplitude>(amplitudes.begin(), amplitudes.end()), tolerance);
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto& a : amplitudes_) sum += std::norm(a);
    return std::sqrt(sum);
}

void StateVector::apply(const GateApplication& op) {
    validate(op, num_qubits_);
    const auto m = target_matrix(op);
    std::size_t control_mask = 0;
    for (int c : op.controls) control_mask |= mask(c);
    const std::size_t t = mask(op.target);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i & t) != 0 || (i & control_mask) != control_mask) continue;
        const std::size_t j = i | t;
        const Amplitude a0 = amplitudes_[i];
        const Amplitude a1 = amplitudes_[j];
        amplitudes_[i] = m[0] * a0 + m[1] * a1;
        amplitudes_[j] = m[2] * a0 + m[3] * a1;
    }
}

StateVector apply_gate(StateVector state, const GateApplication& op) {
    state.apply(op);
    return state;
}

StateVector interfere_msb(StateVector state) {
    if (state.num_qubits() < 2) throw std::invalid_argument("interfere_msb needs at least two qubits");
    state.apply(GateApplication::h(0));
    return state;
}

}  // namespace qkm::sim
