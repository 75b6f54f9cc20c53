#include "qkm/sim/gate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qkm::sim {

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::T: return "T";
        case GateKind::Tdg: return "Tdg";
        case GateKind::Ry: return "Ry";
        case GateKind::CX: return "CX";
        case GateKind::CCX: return "CCX";
        case GateKind::CRy: return "CRy";
        case GateKind::CCRy: return "CCRy";
    }
    throw std::invalid_argument("unknown gate kind");
}

int control_count(GateKind kind) {
    switch (kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::T:
        case GateKind::Tdg:
        case GateKind::Ry: return 0;
        case GateKind::CX:
        case GateKind::CRy: return 1;
        case GateKind::CCX:
        case GateKind::CCRy: return 2;
    }
    throw std::invalid_argument("unknown gate kind");
}

bool is_rotation(GateKind kind) {
    return kind == GateKind::Ry || kind == GateKind::CRy || kind == GateKind::CCRy;
}

bool is_elementary(GateKind kind) {
    switch (kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::T:
        case GateKind::Tdg:
        case GateKind::Ry:
        case GateKind::CX: return true;
        default: return false;
    }
}

std::vector<int> GateApplication::qubits() const {
    std::vector<int> q = controls;
    q.push_back(target);
    return q;
}

void validate(const GateApplication& op, int num_qubits) {
    const std::string name(to_string(op.kind));
    if (static_cast<int>(op.controls.size()) != control_count(op.kind)) {
        throw std::invalid_argument(name + " expects " + std::to_string(control_count(op.kind)) + " control(s), got " +
                                    std::to_string(op.controls.size()));
    }
    if (is_rotation(op.kind)) {
        if (!op.angle) throw std::invalid_argument(name + " requires an angle");
        if (!std::isfinite(*op.angle)) throw std::invalid_argument(name + " angle must be finite");
    } else if (op.angle) {
        throw std::invalid_argument(name + " does not take an angle");
    }
    const auto qs = op.qubits();
    for (std::size_t i = 0; i < qs.size(); ++i) {
        if (qs[i] < 0 || qs[i] >= num_qubits) {
            throw std::out_of_range(name + ": qubit " + std::to_string(qs[i]) + " out of range for " +
                                    std::to_string(num_qubits) + " qubit(s)");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (qs[i] == qs[j]) throw std::invalid_argument(name + ": repeated qubit " + std::to_string(qs[i]));
        }
    }
}

std::array<Amplitude, 4> target_matrix(const GateApplication& op) {
    constexpr double r = 1.0 / std::numbers::sqrt2;
    switch (op.kind) {
        case GateKind::H: return {r, r, r, -r};
        case GateKind::X:
        case GateKind::CX:
        case GateKind::CCX: return {0.0, 1.0, 1.0, 0.0};
        case GateKind::T: return {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4)};
        case GateKind::Tdg: return {1.0, 0.0, 0.0, std::polar(1.0, -std::numbers::pi / 4)};
        case GateKind::Ry:
        case GateKind::CRy:
        case GateKind::CCRy: {
            if (!op.angle) throw std::invalid_argument(std::string(to_string(op.kind)) + " requires an angle");
            const double c = std::cos(*op.angle / 2);
            const double s = std::sin(*op.angle / 2);
            return {c, -s, s, c};
        }
    }
    throw std::invalid_argument("unknown gate kind");
}

std::vector<Amplitude> local_unitary(const GateApplication& op) {
    const auto m = target_matrix(op);
    const std::size_t k = op.controls.size() + 1;
    const std::size_t dim = std::size_t{1} << k;
    std::vector<Amplitude> u(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) u[i * dim + i] = 1.0;
    // The block where every control is 1 is the last two basis states.
    const std::size_t b = dim - 2;
    u[b * dim + b] = m[0];
    u[b * dim + b + 1] = m[1];
    u[(b + 1) * dim + b] = m[2];
    u[(b + 1) * dim + b + 1] = m[3];
    return u;
}

}  // namespace qkm::sim
