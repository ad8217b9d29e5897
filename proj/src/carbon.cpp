#include "wildfire/carbon.hpp"

#include <algorithm>
#include <cmath>

#include "wildfire/error.hpp"

namespace wildfire {

void CarbonConstants::validate() const {
  if (!(total_biomass_factor >= 0.0)) throw ValidationError("carbon.total_biomass_factor must be >= 0");
  if (!(unit_factor > 0.0)) throw ValidationError("carbon.unit_factor must be > 0");
  if (!(usd_per_ton >= 0.0)) throw ValidationError("carbon.usd_per_ton must be >= 0");
}

double average_biomass(const BurnCircle& circle, const BiomassGrid& bio) {
  const Rect ext = bio.extent();
  const double r = circle.radius_km;
  const Point2 c = circle.center;
  if (!(r >= 0.0)) throw ValidationError("average_biomass: negative radius");
  // closest point of the raster to the centre
  const double qx = std::clamp(c.x, ext.x0, ext.x1()), qy = std::clamp(c.y, ext.y0, ext.y1());
  if (distance({qx, qy}, c) > r) throw ValidationError("average_biomass: circle lies outside the biomass grid");

  const double s = bio.spacing_km();
  auto first = [&](double lo, double origin, int n) {
    return std::clamp(static_cast<int>(std::ceil((lo - origin) / s - 0.5)), 0, n - 1);
  };
  auto last = [&](double hi, double origin, int n) {
    return std::clamp(static_cast<int>(std::floor((hi - origin) / s - 0.5)), -1, n - 1);
  };
  const int ix0 = first(c.x - r, ext.x0, bio.nx()), ix1 = last(c.x + r, ext.x0, bio.nx());
  const int iy0 = first(c.y - r, ext.y0, bio.ny()), iy1 = last(c.y + r, ext.y0, bio.ny());
  double sum = 0.0;
  std::size_t n = 0;
  for (int iy = iy0; iy <= iy1; ++iy) {
    for (int ix = ix0; ix <= ix1; ++ix) {
      if (distance(bio.cell_center(iy, ix), c) <= r) {
        sum += bio.at(iy, ix);
        ++n;
      }
    }
  }
  if (n > 0) return sum / static_cast<double>(n);
  const int ix = std::clamp(static_cast<int>(std::floor((qx - ext.x0) / s)), 0, bio.nx() - 1);
  const int iy = std::clamp(static_cast<int>(std::floor((qy - ext.y0) / s)), 0, bio.ny() - 1);
  return bio.at(iy, ix);
}

double emission_tons(double area_km2, double b_avg_mg_ha, const CarbonConstants& c) {
  if (!(area_km2 >= 0.0) || !(b_avg_mg_ha >= 0.0)) throw ValidationError("emission_tons: inputs must be >= 0");
  return area_km2 * c.total_biomass_factor * b_avg_mg_ha * c.unit_factor;
}

double carbon_price(double tons, double usd_per_ton) {
  if (!(tons >= 0.0) || !(usd_per_ton >= 0.0)) throw ValidationError("carbon_price: inputs must be >= 0");
  return tons * usd_per_ton;
}

SavingsReport savings(double baseline_usd, double scenario_usd, std::uint64_t n_sensors, double unit_cost_usd) {
  SavingsReport r;
  r.baseline_price_usd = baseline_usd;
  r.scenario_price_usd = scenario_usd;
  r.n_sensors = n_sensors;
  r.unit_cost_usd = unit_cost_usd;
  r.savings_usd = baseline_usd - scenario_usd - static_cast<double>(n_sensors) * unit_cost_usd;
  return r;
}

EmissionReport emission_report(double area_km2, double b_avg_mg_ha, const CarbonConstants& c) {
  EmissionReport r;
  r.area_km2 = area_km2;
  r.b_avg_mg_ha = b_avg_mg_ha;
  r.carbon_tons = emission_tons(area_km2, b_avg_mg_ha, c);
  r.price_usd = carbon_price(r.carbon_tons, c.usd_per_ton);
  return r;
}

}  // namespace wildfire
