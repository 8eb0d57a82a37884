#include "rvo/fwm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace rvo {

namespace {

double wrap_to_pi(double phase) { return std::remainder(phase, kTwoPi); }

// |1> is the lower ground state, so omega_01 is the higher-frequency
// effective transition of the isotope.
double omega_01_of(Isotope isotope) {
  const IsotopeSpec iso = isotope_spec(isotope);
  return line_table({iso}).back().center_detuning;
}

} // namespace

void GainConfig::validate() const {
  if (!(coupling >= 0.0)) throw std::invalid_argument("gain.coupling must be >= 0");
  if (!(one_photon_scale > 0.0))
    throw std::invalid_argument("gain.one_photon_scale_hz must be > 0");
  if (!(two_photon_width > 0.0))
    throw std::invalid_argument("gain.two_photon_width_hz must be > 0");
  if (!(saturation_power > 0.0))
    throw std::invalid_argument("gain.saturation_power_w must be > 0");
  if (!(pump_depletion_power > 0.0))
    throw std::invalid_argument("gain.pump_depletion_power_w must be > 0");
  if (!(power_cap > 0.0)) throw std::invalid_argument("gain.power_cap_w must be > 0");
  if (!(output_floor > 0.0))
    throw std::invalid_argument("gain.output_floor_w must be > 0");
}

FwmDetunings detunings(double pump_detuning, Isotope isotope) {
  const double omega_12 = isotope_spec(isotope).ground_splitting;
  FwmDetunings d;
  d.delta_b = pump_detuning - omega_01_of(isotope);
  d.delta_a = d.delta_b + omega_12;  // constraint holds by construction
  d.omega_12 = omega_12;
  return d;
}

void sideband_frequencies(double pump_detuning, Isotope isotope,
                          double& omega_s, double& omega_as) {
  const double omega_12 = isotope_spec(isotope).ground_splitting;
  omega_s = pump_detuning - omega_12;
  omega_as = pump_detuning + omega_12;
}

double pump_buildup(double pump_detuning, const CavityGeometry& geometry,
                    const VaporCell& cell, double input_power) {
  if (!(input_power >= 0.0))
    throw std::invalid_argument("pump_buildup: input power must be >= 0");
  const RoundTrip rt = round_trip(pump_detuning, geometry, cell);
  const double rho = rt.survival;
  const double s = std::sin(0.5 * rt.phase);
  return input_power * geometry.t1() /
         ((1.0 - rho) * (1.0 - rho) + 4.0 * rho * s * s);
}

double parametric_strength(const FwmDetunings& det, const VaporCell& cell,
                           double circulating_power, const GainConfig& gain,
                           double two_photon_detuning) {
  if (!(circulating_power >= 0.0))
    throw std::invalid_argument("parametric_strength: power must be >= 0");
  const double n = cell.density_scale * number_density(cell.temperature);
  const double mean_detuning = 0.5 * (det.delta_a + det.delta_b);
  const double one_photon = mean_detuning / gain.one_photon_scale;
  const double two_photon = two_photon_detuning / gain.two_photon_width;
  return gain.coupling * n * cell.length * circulating_power /
         (1.0 + one_photon * one_photon) / (1.0 + two_photon * two_photon);
}

CoupledModeMap coupled_map(double r, double theta, double rho_s, double phi_s,
                           double rho_as, double phi_as) {
  if (!(r >= 0.0)) throw std::invalid_argument("coupled_map: r must be >= 0");
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> s_s = std::sqrt(rho_s) * std::exp(i * phi_s);
  const std::complex<double> s_as = std::sqrt(rho_as) * std::exp(-i * phi_as);
  const double ch = std::cosh(r), sh = std::sinh(r);
  const std::complex<double> eip = std::exp(i * theta);
  CoupledModeMap m;
  m.m00 = ch * s_s;
  m.m01 = eip * sh * s_as;
  m.m10 = std::conj(eip) * sh * s_s;
  m.m11 = ch * s_as;
  m.squeeze = r;
  return m;
}

double CoupledModeMap::spectral_radius() const {
  const std::complex<double> tr = m00 + m11;
  const std::complex<double> det = m00 * m11 - m01 * m10;
  const std::complex<double> disc = std::sqrt(tr * tr - 4.0 * det);
  const double l1 = std::abs(0.5 * (tr + disc));
  const double l2 = std::abs(0.5 * (tr - disc));
  return std::max(l1, l2);
}

void CoupledModeMap::dominant_weights(double& w_s, double& w_as) const {
  const std::complex<double> tr = m00 + m11;
  const std::complex<double> det = m00 * m11 - m01 * m10;
  const std::complex<double> disc = std::sqrt(tr * tr - 4.0 * det);
  const std::complex<double> la = 0.5 * (tr + disc);
  const std::complex<double> lb = 0.5 * (tr - disc);
  const std::complex<double> lambda = std::abs(la) >= std::abs(lb) ? la : lb;
  // Eigenvector from the row with the better-conditioned pivot.
  std::complex<double> v0, v1;
  if (std::abs(m01) > 1e-300) {
    v0 = m01;
    v1 = lambda - m00;
  } else if (std::abs(lambda - m11) > 1e-300) {
    v0 = 1.0;
    v1 = m10 / (lambda - m11);
  } else {
    v0 = 0.0;
    v1 = 1.0;
  }
  const double a = std::norm(v0), b = std::norm(v1);
  w_s = a / (a + b);
  w_as = b / (a + b);
}

std::complex<double> CoupledModeMap::det_g() const {
  const double ch = std::cosh(squeeze), sh = std::sinh(squeeze);
  return std::complex<double>(ch * ch - sh * sh, 0.0);
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Below: return "below";
    case Regime::StokesOnly: return "stokes-only";
    case Regime::BothAbove: return "both-above";
  }
  return "below";
}

namespace {

CoupledModeMap map_at(const OperatingContext& ctx, double r,
                      const GainConfig& gain) {
  return coupled_map(r, gain.coupling_phase, ctx.rho_s, ctx.phi_s, ctx.rho_as,
                     ctx.phi_as);
}

// r with sigma(M(r)) = 1; sigma is increasing in r, sigma(0) < 1 for a
// passive cavity.
double solve_threshold_r(const OperatingContext& ctx, const GainConfig& gain) {
  double lo = 0.0, hi = 1.0;
  auto sigma = [&](double r) { return map_at(ctx, r, gain).spectral_radius(); };
  if (sigma(0.0) >= 1.0) return 0.0;
  int guard = 0;
  while (sigma(hi) < 1.0) {
    hi *= 2.0;
    if (++guard > 60)
      return std::numeric_limits<double>::infinity();
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sigma(mid) < 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace

OperatingContext make_context(const PumpConfig& pump, const OpoModel& model) {
  OperatingContext ctx;
  ctx.pump = pump;
  ctx.det = detunings(pump.detuning, pump.isotope);
  sideband_frequencies(pump.detuning, pump.isotope, ctx.omega_s, ctx.omega_as);

  CavityGeometry g = model.geometry;
  g.pzt_offset = solve_pzt_for_resonance(pump.detuning, g, model.cell);
  ctx.pzt_offset = g.pzt_offset;

  const auto lines = line_table(model.cell.isotopes,
                                model.cell.natural_width > 0.0
                                    ? model.cell.natural_width
                                    : kDefaultNaturalWidth);
  const RoundTrip rt_p = round_trip(pump.detuning, g, model.cell, lines);
  ctx.rho_pump = rt_p.survival;
  ctx.phi_pump = wrap_to_pi(rt_p.phase);

  const RoundTrip rt_s = round_trip(ctx.omega_s, g, model.cell, lines);
  ctx.rho_s = rt_s.survival;
  ctx.phi_s = wrap_to_pi(rt_s.phase);
  const RoundTrip rt_as = round_trip(ctx.omega_as, g, model.cell, lines);
  ctx.rho_as = rt_as.survival;
  ctx.phi_as = wrap_to_pi(rt_as.phase);

  const auto mode_s = nearest_resonance(ctx.omega_s, g, model.cell);
  const auto mode_as = nearest_resonance(ctx.omega_as, g, model.cell);
  ctx.delta_cav_s = mode_s ? ctx.omega_s - mode_s->detuning
                           : std::numeric_limits<double>::infinity();
  ctx.half_linewidth_s = mode_s ? 0.5 * mode_s->linewidth : 0.0;
  ctx.delta_cav_as = mode_as ? ctx.omega_as - mode_as->detuning
                             : std::numeric_limits<double>::infinity();
  ctx.half_linewidth_as = mode_as ? 0.5 * mode_as->linewidth : 0.0;

  ctx.threshold_r = solve_threshold_r(ctx, model.gain);
  return ctx;
}

namespace {

double circulating_pump(const OperatingContext& ctx, const OpoModel& model,
                        double input_power, double sideband_output) {
  // Conversion to the sidebands shows up as extra pump round-trip loss.
  const double depletion =
      1.0 / (1.0 + sideband_output / model.gain.pump_depletion_power);
  const double rho = ctx.rho_pump * depletion;
  const double s = std::sin(0.5 * ctx.phi_pump);
  return input_power * model.geometry.t1() /
         ((1.0 - rho) * (1.0 - rho) + 4.0 * rho * s * s);
}

double strength_at(const OperatingContext& ctx, const OpoModel& model,
                   double input_power, double sideband_output) {
  const double p_circ =
      circulating_pump(ctx, model, input_power, sideband_output);
  return parametric_strength(ctx.det, model.cell, p_circ, model.gain);
}

} // namespace

double threshold_power(const OperatingContext& ctx, const OpoModel& model) {
  const double r_star = ctx.threshold_r;
  if (!(r_star > 0.0) || model.gain.coupling <= 0.0 ||
      !std::isfinite(r_star))
    return std::numeric_limits<double>::infinity();
  const double cap = model.gain.power_cap;
  if (strength_at(ctx, model, cap, 0.0) < r_star)
    return std::numeric_limits<double>::infinity();  // no oscillation below cap
  double lo = 0.0, hi = cap;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (strength_at(ctx, model, mid, 0.0) < r_star)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

void steady_state_output(const OperatingContext& ctx, const OpoModel& model,
                         double input_power, double& p_s, double& p_as) {
  if (!(input_power >= 0.0))
    throw std::invalid_argument("steady_state_output: power must be >= 0");
  p_s = 0.0;
  p_as = 0.0;
  const double r_star = ctx.threshold_r;
  if (!(r_star > 0.0) || !std::isfinite(r_star)) return;
  if (strength_at(ctx, model, input_power, 0.0) <= r_star) return;

  // Gain clamping: r(P_circ) / (1 + P_out/P_sat) = r_star, with the pump
  // buildup depleted by the converted power. Damped fixed point on P_out.
  const double p_sat = model.gain.saturation_power;
  double p_out = 0.0;
  bool converged = false;
  for (int it = 0; it < 10000; ++it) {
    const double r = strength_at(ctx, model, input_power, p_out);
    const double next = std::max(0.0, p_sat * (r / r_star - 1.0));
    const double updated = p_out + 0.5 * (next - p_out);
    if (std::abs(updated - p_out) <= 1e-14 * (1.0 + updated)) {
      p_out = updated;
      converged = true;
      break;
    }
    p_out = updated;
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "steady_state_output: gain-clamping fixed point did not converge"
        << " (P_in=" << input_power << " W, pump detuning=" << ctx.pump.detuning
        << " rad/s, last P_out=" << p_out << " W)";
    throw SolverFault(msg.str());
  }

  double w_s = 0.0, w_as = 0.0;
  map_at(ctx, r_star, model.gain).dominant_weights(w_s, w_as);
  // The output mirror samples the circulating fields after propagation, so
  // weight each component by its survival.
  const double q_s = w_s * ctx.rho_s;
  const double q_as = w_as * ctx.rho_as;
  const double norm = q_s + q_as;
  if (norm > 0.0) {
    p_s = p_out * q_s / norm;
    p_as = p_out * q_as / norm;
  }
}

Regime classify_regime(const OperatingContext& ctx, const OpoModel& model,
                       double input_power) {
  double p_s = 0.0, p_as = 0.0;
  steady_state_output(ctx, model, input_power, p_s, p_as);
  const double floor = model.gain.output_floor;
  if (p_s > floor && p_as > floor) return Regime::BothAbove;
  if (p_s > floor) return Regime::StokesOnly;
  return Regime::Below;
}

OperatingPoint solve_operating_point(const PumpConfig& pump,
                                     const OpoModel& model) {
  const OperatingContext ctx = make_context(pump, model);
  OperatingPoint pt;
  pt.pump_detuning = pump.detuning;
  pt.omega_s = ctx.omega_s;
  pt.omega_as = ctx.omega_as;
  pt.delta_cav_s = ctx.delta_cav_s;
  pt.delta_cav_as = ctx.delta_cav_as;
  pt.half_linewidth_s = ctx.half_linewidth_s;
  pt.half_linewidth_as = ctx.half_linewidth_as;
  pt.rho_s = ctx.rho_s;
  pt.rho_as = ctx.rho_as;
  pt.pzt_offset = ctx.pzt_offset;
  pt.threshold_power = threshold_power(ctx, model);
  const double r_probe = strength_at(ctx, model, pump.power, 0.0);
  pt.sigma = map_at(ctx, r_probe, model.gain).spectral_radius();
  steady_state_output(ctx, model, pump.power, pt.output_s, pt.output_as);
  const double floor = model.gain.output_floor;
  pt.regime = (pt.output_s > floor && pt.output_as > floor) ? Regime::BothAbove
              : (pt.output_s > floor)                       ? Regime::StokesOnly
                                                            : Regime::Below;
  return pt;
}

std::vector<OperatingPoint> scan_operating_points(double start, double stop,
                                                  int points, Isotope isotope,
                                                  double input_power,
                                                  const OpoModel& model,
                                                  int threads) {
  if (points < 1 || !(stop >= start))
    throw std::invalid_argument("scan_operating_points: bad window");
  std::vector<OperatingPoint> result(static_cast<size_t>(points));
  auto worker = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      PumpConfig pump;
      pump.isotope = isotope;
      pump.power = input_power;
      pump.detuning =
          points == 1 ? start
                      : start + (stop - start) * static_cast<double>(i) /
                                    static_cast<double>(points - 1);
      result[static_cast<size_t>(i)] = solve_operating_point(pump, model);
    }
  };
  const int n_threads = std::max(1, threads);
  if (n_threads == 1) {
    worker(0, points);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (points + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(points, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return result;
}

std::vector<OperatingPoint> triple_resonance_search(double start, double stop,
                                                    int points, Isotope isotope,
                                                    double input_power,
                                                    const OpoModel& model,
                                                    int threads) {
  auto all = scan_operating_points(start, stop, points, isotope, input_power,
                                   model, threads);
  std::vector<OperatingPoint> hits;
  for (const auto& pt : all)
    if (std::abs(pt.delta_cav_s) < pt.half_linewidth_s &&
        std::abs(pt.delta_cav_as) < pt.half_linewidth_as)
      hits.push_back(pt);
  std::stable_sort(hits.begin(), hits.end(),
                   [](const OperatingPoint& a, const OperatingPoint& b) {
                     return a.sigma > b.sigma;
                   });
  return hits;
}

} // namespace rvo
