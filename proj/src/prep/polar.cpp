#include "qkm/prep/polar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qkm::prep {

PolarAngle PolarAngle::radians(double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("angle must be finite");
    constexpr double two_pi = 2 * std::numbers::pi;
    double r = std::fmod(theta, two_pi);  // (-2pi, 2pi)
    if (r <= -std::numbers::pi) r += two_pi;
    if (r > std::numbers::pi) r -= two_pi;
    return PolarAngle(r);
}

PolarAngle PolarAngle::degrees(double deg) { return radians(deg * std::numbers::pi / 180.0); }

PolarAngle to_polar(std::span<const double> v) {
    if (v.size() != 2) throw std::invalid_argument("polar conversion needs a 2-D vector");
    if (v[0] == 0.0 && v[1] == 0.0) throw std::invalid_argument("polar angle of the zero vector is undefined");
    // atan2 returns -pi for (-x, -0.0); fold it onto +pi.
    return PolarAngle::radians(std::atan2(v[1], v[0]));
}

double angular_difference(double a, double b) {
    constexpr double two_pi = 2 * std::numbers::pi;
    const double d = std::fmod(std::abs(a - b), two_pi);
    return std::min(d, two_pi - d);
}

double angular_difference(PolarAngle a, PolarAngle b) { return angular_difference(a.value(), b.value()); }

}  // namespace qkm::prep
