#pragma once

#include <vector>

#include "cooproute/types.hpp"

namespace cooproute {

enum class PowerModelKind { UavCubic, UgvAffine };

// Polynomial power draw P(v) in watts, coefficients from highest degree
// down to the constant term.
class PowerModel {
 public:
  PowerModel(PowerModelKind kind, std::vector<double> coefficients,
             double speed_ceiling);

  static PowerModel default_uav();
  static PowerModel default_ugv();

  PowerModelKind kind() const { return kind_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  double speed_ceiling() const { return speed_ceiling_; }

  // Throws InvalidArgument outside [0, speed_ceiling].
  Watts operator()(double speed) const;

  bool operator==(const PowerModel&) const = default;

 private:
  PowerModelKind kind_;
  std::vector<double> coefficients_;
  double speed_ceiling_;
};

inline constexpr double kUavSpeedCeiling = 20.0;

Watts uav_power(double speed);
Watts ugv_power(double speed);

struct FuelState {
  Joules remaining = 0.0;
};

// Throws FuelExhausted when the leg would leave the tank below zero.
FuelState drain(FuelState fuel, double duration_s, Watts power);

struct VehicleSpec;

// Half of the single-charge flight distance at cruise speed.
Meters coverage_radius(const VehicleSpec& uav);
Meters full_charge_range(const VehicleSpec& uav);

Seconds recharge_duration(FuelState fuel, const VehicleSpec& uav);

}  // namespace cooproute
