#include "qkm/circuits/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qkm/error.hpp"
#include "qkm/prep/polar.hpp"

namespace qkm::circuits {

namespace {

void require_2d(std::span<const double> v) {
    if (v.size() != 2) throw std::invalid_argument("distance circuits take 2-D vectors");
}

double length(std::span<const double> v) { return std::hypot(v[0], v[1]); }

double angle_of(std::span<const double> v) { return (v[0] == 0.0 && v[1] == 0.0) ? 0.0 : std::atan2(v[1], v[0]); }

// Ry(phi0) on `target` when `control` is 0 and Ry(phi1) when it is 1.
void multiplexed_ry(sim::Circuit& c, int control, int target, double phi0, double phi1) {
    c.ry((phi0 + phi1) / 2, target).cx(control, target).ry((phi0 - phi1) / 2, target).cx(control, target);
}

}  // namespace

DistanceCircuit build_destructive_distance_circuit(std::span<const double> t, std::span<const double> c,
                                                   DistanceEncoding encoding) {
    require_2d(t);
    require_2d(c);
    const double nt = length(t);
    const double nc = length(c);
    const double norm = std::hypot(nt, nc);
    if (norm == 0.0) throw DataError("destructive distance of two zero vectors");

    double phi_t = angle_of(t);
    double phi_c = angle_of(c);
    if (encoding == DistanceEncoding::RelativeAngle) {
        phi_c = (nt == 0.0 || nc == 0.0) ? 0.0 : prep::angular_difference(phi_t, phi_c);
        phi_t = 0.0;
    }

    sim::Circuit circ(2);
    circ.ry(2 * std::atan2(nc, nt), 0);
    multiplexed_ry(circ, 0, 1, 2 * phi_t, 2 * phi_c);
    circ.h(0);
    return {std::move(circ), norm};
}

DistanceResult extract_distance(const sim::MeasurementHistogram& h, double norm) {
    const double p1 = h.marginal(0, 1);
    return {norm * std::numbers::sqrt2 * std::sqrt(p1), p1, norm};
}

DistanceResult destructive_distance(std::span<const double> t, std::span<const double> c, sim::ShotMode mode,
                                    std::uint64_t seed, DistanceEncoding encoding) {
    const DistanceCircuit dc = build_destructive_distance_circuit(t, c, encoding);
    return extract_distance(sim::execute(dc.circuit, mode, seed), dc.norm);
}

SwapTestCircuit build_swaptest_circuit(std::span<const double> a, std::span<const double> b) {
    require_2d(a);
    require_2d(b);
    const double na = length(a);
    const double nb = length(b);
    if (na == 0.0 || nb == 0.0) throw DataError("swap-test distance of a zero vector");

    sim::Circuit c(4);
    c.ry(2 * std::atan2(-nb, na), 1);
    c.h(2);
    multiplexed_ry(c, 2, 3, 2 * angle_of(a), 2 * angle_of(b));
    c.h(0);
    c.ccx(0, 1, 2).ccx(0, 2, 1).ccx(0, 1, 2);
    c.h(0);
    c.set_measured_qubits({0});
    return {std::move(c), na * na + nb * nb};
}

double swaptest_distance(std::span<const double> a, std::span<const double> b, sim::ShotMode mode,
                         std::uint64_t seed) {
    const SwapTestCircuit st = build_swaptest_circuit(a, b);
    const sim::MeasurementHistogram h = sim::execute(st.circuit, mode, seed);
    const double overlap_sq = 2 * h.marginal(0, 0) - 1;
    return std::sqrt(std::max(0.0, 2 * st.z * overlap_sq));
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace qkm::circuits
