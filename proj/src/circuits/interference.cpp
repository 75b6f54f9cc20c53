#include "qkm/circuits/interference.hpp"

#include <cmath>
#include <stdexcept>

#include "qkm/error.hpp"

namespace qkm::circuits {

using sim::Circuit;
using sim::GateApplication;

namespace {

// Round-off floor for exact probabilities.
constexpr double kExactTolerance = 1e-12;

}  // namespace

Circuit build_basic_interference_circuit(const InterferenceInputs& in) {
    Circuit c(kInterferenceQubits);
    c.h(kAncilla).h(kIndex);
    // Test vector on the a0 = 0 half.
    c.x(kAncilla).cry(2 * in.theta_t.value(), kAncilla, kData).x(kAncilla);
    // Centroid 1 on (a0, m0) = (1, 0), centroid 2 on (1, 1).
    c.x(kIndex).ccry(2 * in.theta_c1.value(), kAncilla, kIndex, kData).x(kIndex);
    c.ccry(2 * in.theta_c2.value(), kAncilla, kIndex, kData);
    c.cx(kIndex, kClass);
    return c;
}

std::vector<GateApplication> optimized_branch_sequence(const InterferenceInputs& in, int ancilla, int index) {
    const double t = in.theta_t.value();
    const double c1 = in.theta_c1.value();
    const double c2 = in.theta_c2.value();
    using G = GateApplication;
    const int q = 0;
    if (ancilla == 0 && index == 0) return {G::ry(2 * t, q), G::x(q), G::ry(c1, q), G::ry(c2, q)};
    if (ancilla == 0 && index == 1) return {G::ry(2 * t, q), G::ry(c1, q), G::x(q), G::ry(c2, q)};
    if (ancilla == 1 && index == 0) return {G::x(q), G::ry(-c1, q), G::ry(c2, q)};
    if (ancilla == 1 && index == 1) return {G::ry(c1, q), G::x(q), G::ry(-c2, q)};
    throw std::invalid_argument("branch bits must be 0 or 1");
}

namespace {

// Angle g with Ry(g) X equal to the product of a branch sequence. Every
// sequence holds exactly one X; X Ry(a) = Ry(-a) X moves it to the end.
double branch_angle(const std::vector<GateApplication>& seq) {
    double g = 0.0;
    bool flipped = false;
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
        if (it->kind == sim::GateKind::X) {
            flipped = !flipped;
        } else {
            g += flipped ? -*it->angle : *it->angle;
        }
    }
    if (!flipped) throw std::logic_error("branch sequence must contain one X");
    return g;
}

}  // namespace

Circuit build_optimized_interference_circuit(const InterferenceInputs& in) {
    // g[a][m] is the branch angle. The multiplexor below applies
    // Ry(b1 + sa*b2 + sa*sm*b3 + sm*b4) with s = (-1)^bit.
    double g[2][2];
    for (int a = 0; a < 2; ++a) {
        for (int m = 0; m < 2; ++m) g[a][m] = branch_angle(optimized_branch_sequence(in, a, m));
    }
    double b[4] = {0, 0, 0, 0};
    for (int a = 0; a < 2; ++a) {
        for (int m = 0; m < 2; ++m) {
            const double sa = a ? -1.0 : 1.0;
            const double sm = m ? -1.0 : 1.0;
            b[0] += g[a][m] / 4;
            b[1] += sa * g[a][m] / 4;
            b[2] += sa * sm * g[a][m] / 4;
            b[3] += sm * g[a][m] / 4;
        }
    }
    Circuit c(kInterferenceQubits);
    c.h(kAncilla).h(kIndex).x(kData);
    c.ry(b[0], kData).cx(kAncilla, kData);
    c.ry(b[1], kData).cx(kIndex, kData);
    c.ry(b[2], kData).cx(kAncilla, kData);
    c.ry(b[3], kData).cx(kIndex, kData);
    c.cx(kIndex, kClass);
    return c;
}

Circuit complete_interference(Circuit preparation) {
    if (preparation.num_qubits() != kInterferenceQubits) {
        throw std::invalid_argument("interference circuits have 4 qubits");
    }
    preparation.h(kAncilla);
    preparation.set_measured_qubits({0, 1, 2, 3});
    return preparation;
}

std::array<BranchState, 4> branch_states(const sim::StateVector& s) {
    if (s.num_qubits() != kInterferenceQubits) throw std::invalid_argument("interference states have 4 qubits");
    std::array<BranchState, 4> out;
    for (int a = 0; a < 2; ++a) {
        for (int m = 0; m < 2; ++m) {
            // Index bits: a0 a m0 m i0 d c0 m.
            const std::size_t base = (static_cast<std::size_t>(a) << 3) | (static_cast<std::size_t>(m) << 2) |
                                     static_cast<std::size_t>(m);
            const auto v0 = s[base];
            const auto v1 = s[base | 2];
            const double weight = std::norm(v0) + std::norm(v1);
            if (weight == 0.0) throw std::invalid_argument("branch has no amplitude");
            const double r = std::sqrt(weight);
            out[static_cast<std::size_t>(2 * a + m)] = {a, m, {v0.real() / r, v1.real() / r}};
        }
    }
    return out;
}

ConstructiveSplit constructive_split(const sim::MeasurementHistogram& h) {
    int class_bit = 0;
    if (h.num_bits() == kInterferenceQubits) {
        class_bit = kClass;
    } else if (h.num_bits() == 2) {
        class_bit = 1;
    } else {
        throw std::invalid_argument("interference histogram must cover 4 qubits or (ancilla, class)");
    }
    const int shift_a = h.num_bits() - 1;
    const int shift_c = h.num_bits() - 1 - class_bit;
    double p0 = 0.0;
    double p1 = 0.0;
    for (std::size_t k = 0; k < h.num_outcomes(); ++k) {
        if (((k >> shift_a) & 1U) != 0) continue;
        (((k >> shift_c) & 1U) == 0 ? p0 : p1) += h.probability(k);
    }
    const double mass = p0 + p1;
    const double floor = h.is_exact() ? kExactTolerance : 0.0;
    if (mass <= floor) throw DegenerateConfiguration("no constructive-interference mass (ancilla = 0)");
    return {mass, p0, p1, p0 / mass, p1 / mass};
}

BinaryWinner decide_binary(const sim::MeasurementHistogram& h) {
    const ConstructiveSplit s = constructive_split(h);
    if (h.is_exact() && std::abs(s.joint0 - s.joint1) <= kExactTolerance) return BinaryWinner::Centroid1;
    return s.joint0 >= s.joint1 ? BinaryWinner::Centroid1 : BinaryWinner::Centroid2;
}

BinaryWinner interference_decision(const InterferenceInputs& in, InterferenceVariant variant, sim::ShotMode mode,
                                   std::uint64_t seed) {
    Circuit prep = variant == InterferenceVariant::Basic ? build_basic_interference_circuit(in)
                                                         : build_optimized_interference_circuit(in);
    return decide_binary(sim::execute(complete_interference(std::move(prep)), mode, seed));
}

}  // namespace qkm::circuits
