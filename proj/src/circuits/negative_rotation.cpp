#include "qkm/circuits/negative_rotation.hpp"

#include <stdexcept>

#include "qkm/sim/state_vector.hpp"

namespace qkm::circuits {

sim::Circuit build_negative_rotation_circuit(prep::PolarAngle theta_t, std::span<const prep::PolarAngle> theta_cs) {
    if (theta_cs.empty()) throw std::invalid_argument("negative rotations need at least one centroid");
    if (theta_cs.size() > static_cast<std::size_t>(sim::kMaxQubits)) {
        throw std::invalid_argument("too many centroids for one negative-rotation register");
    }
    sim::Circuit c(static_cast<int>(theta_cs.size()));
    for (std::size_t j = 0; j < theta_cs.size(); ++j) {
        const int q = static_cast<int>(j);
        c.ry(theta_t.value(), q).ry(-theta_cs[j].value(), q);
    }
    return c;
}

std::vector<double> negative_rotation_p0(prep::PolarAngle theta_t, std::span<const prep::PolarAngle> theta_cs,
                                         sim::ShotMode mode, std::uint64_t seed) {
    const sim::Circuit c = build_negative_rotation_circuit(theta_t, theta_cs);
    const sim::MeasurementHistogram h = sim::execute(c, mode, seed);
    std::vector<double> p0(theta_cs.size());
    for (std::size_t j = 0; j < p0.size(); ++j) p0[j] = h.marginal(static_cast<int>(j), 0);
    return p0;
}

std::size_t nearest_by_negative_rotation(prep::PolarAngle theta_t, std::span<const prep::PolarAngle> theta_cs,
                                         sim::ShotMode mode, std::uint64_t seed) {
    const std::vector<double> p0 = negative_rotation_p0(theta_t, theta_cs, mode, seed);
    // Exact probabilities closer than 1e-12 count as equal.
    const double margin = mode.is_exact() ? 1e-12 : 0.0;
    std::size_t best = 0;
    for (std::size_t j = 1; j < p0.size(); ++j) {
        if (p0[j] > p0[best] + margin) best = j;
    }
    return best;
}

}  // namespace qkm::circuits
