#pragma once

#include <span>

namespace qkm::prep {

/// Polar angle of a nonzero 2-D vector, in (-pi, pi].
class PolarAngle {
  public:
    constexpr PolarAngle() = default;
    /// Wraps any finite angle into (-pi, pi].
    static PolarAngle radians(double theta);
    static PolarAngle degrees(double deg);

    constexpr double value() const noexcept { return radians_; }

    bool operator==(const PolarAngle&) const = default;

  private:
    explicit constexpr PolarAngle(double r) : radians_(r) {}
    double radians_ = 0.0;
};

/// atan2(y, x). Throws std::invalid_argument for a zero vector or a
/// dimension other than 2.
PolarAngle to_polar(std::span<const double> v);

/// Wrapped absolute difference in [0, pi].
double angular_difference(PolarAngle a, PolarAngle b);

/// Same on raw radian values.
double angular_difference(double a, double b);

}  // namespace qkm::prep
