#include "cooproute/energy.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cooproute/errors.hpp"
#include "cooproute/model.hpp"

namespace cooproute {

PowerModel::PowerModel(PowerModelKind kind, std::vector<double> coefficients,
                       double speed_ceiling)
    : kind_(kind),
      coefficients_(std::move(coefficients)),
      speed_ceiling_(speed_ceiling) {
  const std::size_t expected = kind_ == PowerModelKind::UavCubic ? 4 : 2;
  if (coefficients_.size() != expected) {
    throw InvalidArgument("power model needs " + std::to_string(expected) +
                          " coefficients");
  }
}

PowerModel PowerModel::default_uav() {
  return PowerModel(PowerModelKind::UavCubic, {0.0461, -0.5834, -1.8761, 229.6},
                    kUavSpeedCeiling);
}

PowerModel PowerModel::default_ugv() {
  return PowerModel(PowerModelKind::UgvAffine, {464.8, 356.3},
                    std::numeric_limits<double>::infinity());
}

Watts PowerModel::operator()(double speed) const {
  if (!(speed >= 0.0) || speed > speed_ceiling_) {
    std::ostringstream msg;
    msg << "speed " << speed << " m/s outside validated range [0, "
        << speed_ceiling_ << "]";
    throw InvalidArgument(msg.str());
  }
  // Horner
  double p = 0.0;
  for (double c : coefficients_) p = p * speed + c;
  return p;
}

Watts uav_power(double speed) { return PowerModel::default_uav()(speed); }
Watts ugv_power(double speed) { return PowerModel::default_ugv()(speed); }

FuelState drain(FuelState fuel, double duration_s, Watts power) {
  if (duration_s < 0.0) throw InvalidArgument("negative drain duration");
  const Joules left = fuel.remaining - power * duration_s;
  if (left < 0.0) {
    std::ostringstream msg;
    msg << "fuel exhausted: " << fuel.remaining << " J available, "
        << power * duration_s << " J required";
    throw FuelExhausted(msg.str());
  }
  return FuelState{left};
}

Meters full_charge_range(const VehicleSpec& uav) {
  if (uav.fuel_capacity <= 0.0) return 0.0;
  return uav.fuel_capacity * uav.speed / uav.cruise_power();
}

Meters coverage_radius(const VehicleSpec& uav) {
  return 0.5 * full_charge_range(uav);
}

Seconds recharge_duration(FuelState fuel, const VehicleSpec& uav) {
  if (!(uav.recharge_rate > 0.0)) throw InvalidArgument("recharge rate must be positive");
  const double deficit = uav.fuel_capacity - fuel.remaining;
  if (deficit <= 0.0) return 0;
  // Guard against 900.0000000001 rounding up to 901.
  return static_cast<Seconds>(std::ceil(deficit / uav.recharge_rate - 1e-9));
}

}  // namespace cooproute
