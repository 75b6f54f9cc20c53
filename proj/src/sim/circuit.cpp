#include "qkm/sim/circuit.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qkm::sim {

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) throw std::invalid_argument("circuit qubit count out of range");
    measured_.resize(static_cast<std::size_t>(num_qubits));
    std::iota(measured_.begin(), measured_.end(), 0);
}

void Circuit::set_measured_qubits(std::vector<int> qubits) {
    if (qubits.empty()) throw std::invalid_argument("at least one qubit must be measured");
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] < 0 || qubits[i] >= num_qubits_) throw std::out_of_range("measured qubit out of range");
        if (std::find(qubits.begin(), qubits.begin() + static_cast<std::ptrdiff_t>(i), qubits[i]) !=
            qubits.begin() + static_cast<std::ptrdiff_t>(i)) {
            throw std::invalid_argument("measured qubit listed twice");
        }
    }
    measured_ = std::move(qubits);
}

Circuit& Circuit::append(GateApplication op) {
    validate(op, num_qubits_);
    ops_.push_back(std::move(op));
    return *this;
}

Circuit& Circuit::append(const Circuit& other) {
    if (other.num_qubits() != num_qubits_) throw std::invalid_argument("circuit width mismatch");
    for (const auto& op : other.ops()) append(op);
    return *this;
}

StateVector run_circuit(const Circuit& circuit, StateVector initial) {
    if (initial.num_qubits() != circuit.num_qubits()) {
        throw std::invalid_argument("initial state width does not match circuit");
    }
    for (const auto& op : circuit.ops()) initial.apply(op);
    return initial;
}

StateVector run_circuit(const Circuit& circuit) { return run_circuit(circuit, StateVector(circuit.num_qubits())); }

int depth(const Circuit& circuit) {
    std::vector<int> level(static_cast<std::size_t>(circuit.num_qubits()), 0);
    int deepest = 0;
    for (const auto& op : circuit.ops()) {
        const auto qs = op.qubits();
        int d = 0;
        for (int q : qs) d = std::max(d, level[static_cast<std::size_t>(q)]);
        ++d;
        for (int q : qs) level[static_cast<std::size_t>(q)] = d;
        deepest = std::max(deepest, d);
    }
    return deepest;
}

namespace {

void emit_cry(Circuit& out, double theta, int c, int t) {
    out.ry(theta / 2, t).cx(c, t).ry(-theta / 2, t).cx(c, t);
}

void emit_ccx(Circuit& out, int a, int b, int t) {
    out.h(t)
        .cx(b, t)
        .append(GateApplication::tdg(t))
        .cx(a, t)
        .append(GateApplication::t(t))
        .cx(b, t)
        .append(GateApplication::tdg(t))
        .cx(a, t)
        .append(GateApplication::t(b))
        .append(GateApplication::t(t))
        .h(t)
        .cx(a, b)
        .append(GateApplication::t(a))
        .append(GateApplication::tdg(b))
        .cx(a, b);
}

}  // namespace

Circuit decompose_to_elementary(const Circuit& circuit) {
    Circuit out(circuit.num_qubits());
    out.set_measured_qubits(circuit.measured_qubits());
    for (const auto& op : circuit.ops()) {
        switch (op.kind) {
            case GateKind::H:
            case GateKind::X:
            case GateKind::T:
            case GateKind::Tdg:
            case GateKind::Ry:
            case GateKind::CX: out.append(op); break;
            case GateKind::CRy: emit_cry(out, *op.angle, op.controls[0], op.target); break;
            case GateKind::CCRy: {
                const double theta = *op.angle;
                const int c0 = op.controls[0];
                const int c1 = op.controls[1];
                emit_cry(out, theta / 2, c1, op.target);
                out.cx(c0, c1);
                emit_cry(out, -theta / 2, c1, op.target);
                out.cx(c0, c1);
                emit_cry(out, theta / 2, c0, op.target);
                break;
            }
            case GateKind::CCX: emit_ccx(out, op.controls[0], op.controls[1], op.target); break;
            default: throw std::invalid_argument("decompose_to_elementary: unknown gate kind");
        }
    }
    return out;
}

}  // namespace qkm::sim
