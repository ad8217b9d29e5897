#pragma once

#include <cstdint>

#include "wildfire/envdata.hpp"
#include "wildfire/evolution.hpp"

namespace wildfire {

struct CarbonConstants {
  double total_biomass_factor = 1.2;  // above-ground plus 20% below-ground
  double unit_factor = 100.0;         // km^2 * Mg/ha -> t
  double usd_per_ton = 20.0;

  void validate() const;
};

struct EmissionReport {
  double area_km2 = 0.0;
  double b_avg_mg_ha = 0.0;
  double carbon_tons = 0.0;
  double price_usd = 0.0;
};

struct SavingsReport {
  double baseline_price_usd = 0.0;
  double scenario_price_usd = 0.0;
  std::uint64_t n_sensors = 0;
  double unit_cost_usd = 0.0;
  double savings_usd = 0.0;
};

/// Mean biomass of the cells whose centres lie in the closed disk. When no
/// centre is inside, the cell holding the circle centre is used (clamped to
/// the raster if the centre is just off its edge). Throws if the disk misses
/// the raster entirely.
double average_biomass(const BurnCircle& circle, const BiomassGrid& bio);

double emission_tons(double area_km2, double b_avg_mg_ha, const CarbonConstants& c = {});
double carbon_price(double tons, double usd_per_ton);
SavingsReport savings(double baseline_usd, double scenario_usd, std::uint64_t n_sensors, double unit_cost_usd);

EmissionReport emission_report(double area_km2, double b_avg_mg_ha, const CarbonConstants& c = {});

}  // namespace wildfire
