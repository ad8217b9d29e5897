// Acceptance suite: one PASS/FAIL line per criterion; non-zero exit if any fails.

#include <boost/math/distributions/students_t.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "wildfire/carbon.hpp"
#include "wildfire/evolution.hpp"
#include "wildfire/firekernel.hpp"
#include "wildfire/harness.hpp"
#include "wildfire/io.hpp"
#include "wildfire/linkbudget.hpp"
#include "wildfire/scenario.hpp"

using namespace wildfire;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s  criterion %2d  %-32s %s  [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

bool within(double got, double want, double tol) { return std::abs(got - want) <= tol; }

double rel_err(double got, double want) {
  return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
}

LinkParams bundled(const char* name) {
  return LinkParams::from_json(nlohmann::json::parse(io::read_file(fs::path(WILDFIRE_DATA_DIR) / name)));
}

Outcome fspl() {
  const double a = fspl_db(40581, 1500), b = fspl_db(35786, 1500);
  return {within(a, 188.14, 0.01) && within(b, 187.05, 0.01),
          fmt("10deg %.4f dB", a) + fmt(", 90deg %.4f dB", b)};
}

Outcome cnr() {
  const double a = cnr_db(bundled("table1-10deg.json")), b = cnr_db(bundled("table1-90deg.json"));
  return {within(a, 8.3714, 0.02) && within(b, 9.4636, 0.02), fmt("10deg %.4f dB", a) + fmt(", 90deg %.4f dB", b)};
}

Outcome capacity() {
  const LinkParams p = bundled("table1-10deg.json");
  const CapacityReport r = capacity_report(p, TrafficModel{2, 50});
  const auto periodic = supportable_sensors(r.peak_rate_bps, 0.0093);
  const auto event = supportable_sensors(r.peak_rate_bps, per_sensor_bps({1440, 50}));
  const bool ok = r.bits_per_ru == 144 && r.peak_rate_bps == 216000.0 &&
                  rel_err(static_cast<double>(periodic), 2.32e7) <= 0.005 &&
                  std::abs(static_cast<double>(event) - 3.24e4) <= 1.0;
  std::ostringstream s;
  s << r.bits_per_ru << " bits/RU, " << r.peak_rate_bps << " bps, periodic " << periodic << ", event " << event;
  return {ok, s.str()};
}

Outcome carbon() {
  const double tons = emission_tons(10202.04, 46.6237);
  const double price = carbon_price(tons, 20.0);
  const double save = savings(1.14e9, 116.4e6, 100000, 100).savings_usd;
  const bool ok = within(tons, 5.71e7, 0.01e7) && within(price, 1.14e9, 0.01e9) && within(save, 1.01e9, 0.005e9);
  return {ok, fmt("%.4g t", tons) + fmt(", %.4g USD", price) + fmt(", savings %.4g USD", save)};
}

Outcome kernel() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ws(0.0, 60.0), beta(0.0, 0.6);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double w = ws(rng), b = beta(rng);
    worst = std::max(worst, rel_err(wind_factor(w), oracle::g(w)));
    worst = std::max(worst, rel_err(length_breadth_ratio(w), oracle::lb(w)));
    const double h = moisture_factor(b);
    worst = std::max(worst, oracle::h(b) == 0.0 ? std::abs(h) : rel_err(h, oracle::h(b)));
  }
  bool props = true;
  for (int i = 0; i < 10000; ++i) {
    double w1 = ws(rng), w2 = ws(rng), b1 = beta(rng), b2 = beta(rng);
    if (w1 > w2) std::swap(w1, w2);
    if (b1 > b2) std::swap(b1, b2);
    const double g1 = wind_factor(w1), g2 = wind_factor(w2);
    const double h1 = moisture_factor(b1), h2 = moisture_factor(b2);
    const double l1 = length_breadth_ratio(w1), l2 = length_breadth_ratio(w2);
    props = props && g1 <= g2 && g1 >= 0.1 && g2 <= 1.0;
    props = props && h1 >= h2 && h2 >= 0.0 && h1 <= 1.0 && (b2 < 0.35 || h2 == 0.0);
    props = props && l1 <= l2 && l1 >= 1.0 && l2 < 11.0;
    const SpreadSpeeds s = speeds(w1, b1);
    props = props && s.u_p >= 0.0 && s.u_p <= 0.13 && s.u_b == 0.2 * s.u_p && s.v <= s.u_p;
  }
  return {worst <= 1e-12 && props, fmt("max rel err %.2e", worst) + (props ? ", properties hold" : ", property violated")};
}

EnvGrid constant_env(double u, double v, double w, int nt, int n = 40, double spacing = 10.0) {
  SynthSpec s;
  s.nx = n;
  s.ny = n;
  s.nt = nt;
  s.spacing_km = spacing;
  s.u10 = u;
  s.v10 = v;
  s.swvl1 = w;
  return synth_env(s, 0);
}

Outcome geometry() {
  double worst_extreme = 0.0, worst_circle = 0.0;
  const std::vector<std::pair<double, double>> winds{{6, 0}, {0, -9}, {-3, 4}, {12, 7}, {-20, -15}};
  for (auto [u, v] : winds) {
    const EnvGrid env = constant_env(u, v, 0.0, 8);
    const Point2 ign{200, 200};
    const double ws = std::hypot(u, v);
    const Point2 axis{u / ws, v / ws};
    const double up = oracle::up(ws, 0.0);
    Frontier f = Frontier::ignition(ign, 0);
    for (int k = 1; k <= 5; ++k) {
      f = step(f, env, 3600.0);
      double extreme = -1e300;
      for (const auto& p : f.points) {
        const Point2 d = p.pos - ign;
        extreme = std::max(extreme, d.x * axis.x + d.y * axis.y);
      }
      worst_extreme = std::max(worst_extreme, std::abs(extreme - k * up * 3600.0 / 1000.0));
      const auto brute = oracle::mean_max(oracle::enumerate(ign, oracle::branch_offsets(u, v, 0.0), k));
      const BurnCircle c = burned_circle(f);
      worst_circle = std::max({worst_circle, distance(c.center, brute.c), std::abs(c.radius_km - brute.r)});
    }
  }
  return {worst_extreme <= 1e-9 && worst_circle <= 1e-9,
          fmt("max extreme err %.2e km", worst_extreme) + fmt(", max circle err %.2e km", worst_circle)};
}

Outcome pruning() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> wind(-20.0, 20.0), wet(0.0, 0.3);
  std::uniform_int_distribution<int> steps(1, 7);
  const EvolutionConfig evo;
  const double bound = evo.margin_km + evo.snap_km * std::sqrt(2.0);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const double u = wind(rng), v = wind(rng), w = wet(rng);
    const int k = steps(rng);
    const EnvGrid env = constant_env(u, v, w, k + 1, 10);
    const Point2 ign{50, 50};
    Frontier plain = Frontier::ignition(ign, 0), pruned = plain;
    BurnCircle prev{ign, 0.0};
    for (int i = 0; i < k; ++i) {
      plain = step(plain, env, evo.dt_s, evo.fire);
      pruned = step(pruned, env, evo.dt_s, evo.fire);
      const BurnCircle c = burned_circle(pruned);
      pruned = prune(pruned, prev, evo.snap_km, evo.margin_km);
      prev = c;
    }
    worst = std::max(worst, std::abs(burned_circle(plain).radius_km - prev.radius_km));
  }
  return {worst <= bound, fmt("max radius diff %.3e km", worst) + fmt(" (bound %.4f km)", bound)};
}

struct Welch {
  double t = 0.0, df = 0.0, p = 1.0;
};

// H1: mean(a) > mean(b)
Welch welch_greater(const std::vector<double>& a, const std::vector<double>& b) {
  auto mean_var = [](const std::vector<double>& x) {
    double m = 0.0;
    for (double v : x) m += v;
    m /= static_cast<double>(x.size());
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return std::pair{m, s / static_cast<double>(x.size() - 1)};
  };
  const auto [ma, va] = mean_var(a);
  const auto [mb, vb] = mean_var(b);
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double se2 = va / na + vb / nb;
  Welch w;
  if (se2 == 0.0) {
    w.p = ma > mb ? 0.0 : 1.0;
    return w;
  }
  w.t = (ma - mb) / std::sqrt(se2);
  w.df = se2 * se2 / ((va / na) * (va / na) / (na - 1) + (vb / nb) * (vb / nb) / (nb - 1));
  boost::math::students_t dist(w.df);
  w.p = boost::math::cdf(boost::math::complement(dist, w.t));
  return w;
}

struct Scenario {
  EnvGrid env;
  BiomassGrid bio;
  std::vector<Incident> incidents;
  GeoTransform geo;
};

Scenario bundled_scenario() {
  const auto spec = ScenarioSpec::load(fs::path(WILDFIRE_DATA_DIR) / "scenarios" / "california_synth.json");
  const auto files = write_scenario(spec, fixtures::scratch_dir("acceptance_scenario"), 1);
  EnvGrid env = load_env_grid(files.env_manifest);
  BiomassGrid bio = load_biomass_grid(files.biomass_manifest);
  auto incidents = load_incidents(files.incidents, spec.geo, env);
  return {std::move(env), std::move(bio), std::move(incidents), spec.geo};
}

SweepConfig monte_carlo_config() {
  SweepConfig cfg;
  cfg.sensor_counts = {10000, 100000, 1000000};
  cfg.trials = 30;
  cfg.seed = 1;
  return cfg;
}

std::string sweep_csv_1, summary_csv_1;

Outcome monotonicity(const Scenario& sc) {
  const SweepConfig cfg = monte_carlo_config();
  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult r = sweep(sc.incidents, sc.env, sc.bio, sc.geo.rect(), cfg, {}, {}, 1);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  sweep_csv_1 = sweep_csv(r, cfg);
  summary_csv_1 = summary_csv(r, cfg);

  const bool shape = sc.env.nx() == 101 && sc.env.ny() == 111 && sc.env.nt() == 720 && sc.incidents.size() == 50;
  std::vector<std::vector<double>> hours(3), area(3);
  for (const auto& t : r.trials) {
    const std::size_t k = t.n_sensors == 10000 ? 0 : t.n_sensors == 100000 ? 1 : 2;
    hours[k].push_back(t.totals.burned_hours);
    area[k].push_back(t.totals.burned_area_km2);
  }
  bool ok = shape && secs <= 600.0;
  double worst_p = 0.0;
  for (std::size_t k = 0; k + 1 < 3; ++k) {
    const Welch wh = welch_greater(hours[k], hours[k + 1]);
    const Welch wa = welch_greater(area[k], area[k + 1]);
    worst_p = std::max({worst_p, wh.p, wa.p});
    ok = ok && r.summary[k].mean_burned_hours > r.summary[k + 1].mean_burned_hours &&
         r.summary[k].mean_burned_area_km2 > r.summary[k + 1].mean_burned_area_km2;
  }
  ok = ok && worst_p < 0.05;
  std::ostringstream s;
  s.precision(6);
  s << "mean hours " << r.summary[0].mean_burned_hours << " > " << r.summary[1].mean_burned_hours << " > "
    << r.summary[2].mean_burned_hours << "; area " << r.summary[0].mean_burned_area_km2 << " > "
    << r.summary[1].mean_burned_area_km2 << " > " << r.summary[2].mean_burned_area_km2 << "; worst p "
    << fmt("%.2e", worst_p) << "; sweep " << fmt("%.1f s", secs) << " on 1 worker";
  return {ok, s.str()};
}

Outcome determinism(const Scenario& sc) {
  if (sweep_csv_1.empty()) return {false, "criterion 8 sweep did not run"};
  const SweepConfig cfg = monte_carlo_config();
  const SweepResult r = sweep(sc.incidents, sc.env, sc.bio, sc.geo.rect(), cfg, {}, {}, 8);
  const bool ok = sweep_csv(r, cfg) == sweep_csv_1 && summary_csv(r, cfg) == summary_csv_1;
  return {ok, std::to_string(sweep_csv_1.size() + summary_csv_1.size()) + " bytes compared, workers 1 vs 8"};
}

Outcome historical() {
  const auto dir = fixtures::scratch_dir("acceptance_historical");
  fixtures::write_historical_incidents(dir / "incidents.csv", 255, 36716.25, 10202.04, 300);
  SynthSpec s;
  s.nx = 101;
  s.ny = 111;
  s.nt = 400;
  const EnvGrid env = synth_env(s, 0);
  const auto incidents = load_incidents(dir / "incidents.csv", GeoTransform{}, env);
  const BiomassGrid bio(10, 10, 111.0, {}, std::vector<float>(100, 46.6237f));
  SweepConfig cfg;
  cfg.baseline = BaselineMode::Historical;
  cfg.sensor_counts = {0};
  cfg.trials = 1;
  const SweepResult r = sweep(incidents, env, bio, GeoTransform{}.rect(), cfg, {}, {}, 1);
  const SeasonTotals& t = r.baseline;
  const bool ok = incidents.size() == 255 && t.burned_hours == 36716.25 &&
                  rel_err(t.burned_area_km2, 10202.04) <= 1e-12 && fmt("%.2f", t.burned_area_km2) == "10202.04";
  return {ok, "255 incidents, " + io::format_double(t.burned_hours) + " h, " + io::format_double(t.burned_area_km2) +
                  " km2"};
}

}  // namespace

int main() {
  report(1, "fspl reproduction", fspl);
  report(2, "cnr reproduction", cnr);
  report(3, "capacity chain", capacity);
  report(4, "carbon arithmetic", carbon);
  report(5, "fire-kernel properties", kernel);
  report(6, "evolution geometry oracle", geometry);
  report(7, "pruning soundness", pruning);
  std::optional<Scenario> sc;
  report(8, "monte carlo monotonicity", [&] {
    sc.emplace(bundled_scenario());
    return monotonicity(*sc);
  });
  report(9, "determinism", [&] { return sc ? determinism(*sc) : Outcome{false, "no scenario"}; });
  report(10, "historical-baseline identity", historical);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
