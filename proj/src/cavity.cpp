#include "rvo/cavity.hpp"

#include "rvo/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace rvo {

namespace {

double wrap_to_pi(double phase) {
  return std::remainder(phase, kTwoPi);
}

// 2*omega_ref*L/c reduced into (-pi, pi], evaluated in extended precision
// so the reduced round-trip phase stays well conditioned.
double reference_phase(double geometric_length) {
  const long double phi =
      2.0L * static_cast<long double>(kReferenceOmega) *
      static_cast<long double>(geometric_length) /
      static_cast<long double>(kSpeedOfLight);
  const long double two_pi = 2.0L * 3.14159265358979323846264338327950288L;
  return static_cast<double>(std::remainderl(phi, two_pi));
}

struct PhaseEval {
  double phase;
  double survival;
};

PhaseEval evaluate(double detuning, const CavityGeometry& g,
                   const VaporCell& cell, const std::vector<AtomicLine>* lines) {
  const double length = g.total_length + g.pzt_offset;
  const double omega = kReferenceOmega + detuning;
  double phase = reference_phase(length) +
                 2.0 * detuning * length / kSpeedOfLight;
  double survival = g.vacuum_survival();
  if (lines != nullptr) {
    const std::complex<double> chi = susceptibility(detuning, cell, *lines);
    const double n_minus_1 = 0.5 * chi.real();
    const double alpha = (omega / kSpeedOfLight) * chi.imag();
    phase += (2.0 * omega / kSpeedOfLight) * n_minus_1 * g.cell_length;
    survival *= std::exp(-alpha * g.cell_length);
  }
  return {phase, survival};
}

std::vector<AtomicLine> cell_lines(const VaporCell& cell) {
  const double gamma =
      cell.natural_width > 0.0 ? cell.natural_width : kDefaultNaturalWidth;
  return line_table(cell.isotopes, gamma);
}

} // namespace

void CavityGeometry::validate() const {
  if (!(r1 > 0.0) || r1 > 1.0)
    throw std::invalid_argument("cavity.r1 must be in (0, 1]");
  if (!(r2 > 0.0) || r2 > 1.0)
    throw std::invalid_argument("cavity.r2 must be in (0, 1]");
  if (!(excess_survival > 0.0) || excess_survival > 1.0)
    throw std::invalid_argument("cavity.excess_survival must be in (0, 1]");
  if (!(total_length > 0.0))
    throw std::invalid_argument("cavity.total_length_m must be > 0");
  if (!(cell_length > 0.0) || cell_length >= total_length)
    throw std::invalid_argument("cavity.cell_length_m must be in (0, total_length)");
}

double CavityGeometry::vacuum_survival() const {
  return std::sqrt(r1 * r2) * excess_survival;
}

double empty_fsr(const CavityGeometry& geometry) {
  if (!(geometry.total_length > 0.0))
    throw std::invalid_argument("empty_fsr: total length must be > 0");
  return kSpeedOfLight / (2.0 * geometry.total_length);
}

double calibrate_excess_loss(double r1, double r2, double target_finesse) {
  if (!(target_finesse > 0.0))
    throw std::invalid_argument("calibrate_excess_loss: finesse must be > 0");
  const double mirror = std::sqrt(r1 * r2);
  if (mirror >= 1.0)
    throw std::invalid_argument(
        "calibrate_excess_loss: lossless mirrors give infinite finesse at a_x = 1");
  // pi*sqrt(rho)/(1-rho) = F  ->  quadratic in sqrt(rho)
  const double f = target_finesse;
  const double sqrt_rho = (-kPi + std::sqrt(kPi * kPi + 4.0 * f * f)) / (2.0 * f);
  const double rho = sqrt_rho * sqrt_rho;
  const double a_x = rho / mirror;
  if (a_x > 1.0)
    throw std::invalid_argument(
        "calibrate_excess_loss: target finesse above the lossless-mirror finesse");
  return a_x;
}

RoundTrip round_trip(double detuning, const CavityGeometry& geometry,
                     const VaporCell& cell, const std::vector<AtomicLine>& lines) {
  const PhaseEval e = evaluate(detuning, geometry, cell, &lines);
  return {e.phase, e.survival};
}

RoundTrip round_trip(double detuning, const CavityGeometry& geometry,
                     const VaporCell& cell) {
  const auto lines = cell_lines(cell);
  return round_trip(detuning, geometry, cell, lines);
}

RoundTrip round_trip_vacuum(double detuning, const CavityGeometry& geometry) {
  static const VaporCell dummy;
  const PhaseEval e = evaluate(detuning, geometry, dummy, nullptr);
  return {e.phase, e.survival};
}

double transmission(double detuning, const CavityGeometry& geometry,
                    const VaporCell& cell, const std::vector<AtomicLine>& lines) {
  const PhaseEval e = evaluate(detuning, geometry, cell, &lines);
  const double rho = e.survival;
  const double s = std::sin(0.5 * e.phase);
  // survival / sqrt(R1 R2) = a_x * exp(-alpha Lc), the intracavity part of
  // one full round trip; the transmitted beam carries it once.
  const double numerator = geometry.t1() * geometry.t2() *
                           (e.survival / std::sqrt(geometry.r1 * geometry.r2));
  return numerator / ((1.0 - rho) * (1.0 - rho) + 4.0 * rho * s * s);
}

SpectrumTrace transmission_spectrum(double start, double stop, int points,
                                    const CavityGeometry& geometry,
                                    const VaporCell& cell, bool with_atoms,
                                    int threads) {
  if (points < 2 || !(stop > start))
    throw std::invalid_argument("transmission_spectrum: bad grid");
  const auto lines = cell_lines(cell);
  SpectrumTrace trace;
  trace.start_hz = start / kTwoPi;
  trace.step_hz = (stop - start) / kTwoPi / static_cast<double>(points - 1);
  trace.values.assign(static_cast<size_t>(points), 0.0);
  trace.y_label = "transmission";

  auto worker = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const double d = start + (stop - start) * static_cast<double>(i) /
                                   static_cast<double>(points - 1);
      if (with_atoms) {
        trace.values[static_cast<size_t>(i)] = transmission(d, geometry, cell, lines);
      } else {
        const PhaseEval e = evaluate(d, geometry, cell, nullptr);
        const double s = std::sin(0.5 * e.phase);
        trace.values[static_cast<size_t>(i)] =
            geometry.t1() * geometry.t2() * geometry.excess_survival /
            ((1.0 - e.survival) * (1.0 - e.survival) +
             4.0 * e.survival * s * s);
      }
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
  return trace;
}

namespace {

// Adaptive phase sampling: subdivide until the phase change per interval is
// small enough to isolate individual 2*pi crossings. Intervals are also
// capped at a quarter FSR so a full fringe can never alias away.
void sample_phase(double a, double phi_a, double b, double phi_b,
                  double max_width, const CavityGeometry& g,
                  const VaporCell& cell, const std::vector<AtomicLine>* lines,
                  std::vector<std::pair<double, double>>& out, int depth) {
  const bool refine =
      (b - a) > max_width || std::abs(phi_b - phi_a) > 0.3;
  if (!refine || depth > 42 || (b - a) < kTwoPi * 10.0) {
    out.emplace_back(b, phi_b);
    return;
  }
  const double mid = 0.5 * (a + b);
  const double phi_mid = evaluate(mid, g, cell, lines).phase;
  sample_phase(a, phi_a, mid, phi_mid, max_width, g, cell, lines, out, depth + 1);
  sample_phase(mid, phi_mid, b, phi_b, max_width, g, cell, lines, out, depth + 1);
}

} // namespace

ModeList find_resonances(double start, double stop,
                         const CavityGeometry& geometry, const VaporCell& cell,
                         bool with_atoms) {
  if (!(stop > start))
    throw std::invalid_argument("find_resonances: empty window");
  const auto lines = cell_lines(cell);
  const std::vector<AtomicLine>* lp = with_atoms ? &lines : nullptr;

  auto phase_at = [&](double d) { return evaluate(d, geometry, cell, lp).phase; };

  std::vector<std::pair<double, double>> samples;
  const double phi_start = phase_at(start);
  const double max_width = 0.25 * kTwoPi * empty_fsr(geometry);
  samples.emplace_back(start, phi_start);
  sample_phase(start, phi_start, stop, phase_at(stop), max_width, geometry,
               cell, lp, samples, 0);

  ModeList modes;
  for (size_t i = 0; i + 1 < samples.size(); ++i) {
    const auto [xa, fa] = samples[i];
    const auto [xb, fb] = samples[i + 1];
    const double lo = std::min(fa, fb);
    const double hi = std::max(fa, fb);
    for (double target = kTwoPi * std::ceil(lo / kTwoPi); target < hi;
         target += kTwoPi) {
      if (target <= lo) continue;
      // bisect phi - target on [xa, xb]
      double a = xa, b = xb, pa = fa - target;
      for (int it = 0; it < 200 && (b - a) > 1e-6; ++it) {
        const double m = 0.5 * (a + b);
        const double pm = phase_at(m) - target;
        if ((pm > 0) == (pa > 0)) {
          a = m;
          pa = pm;
        } else {
          b = m;
        }
      }
      const double root = 0.5 * (a + b);
      if (std::abs(wrap_to_pi(phase_at(root))) > 1e-9) continue;

      const double h = kTwoPi * 1.0e5;
      const double slope = (phase_at(root + h) - phase_at(root - h)) / (2.0 * h);
      if (slope <= 0.0) continue; // anomalous-dispersion branch, no resonance

      const double rho = evaluate(root, geometry, cell, lp).survival;
      const double fwhm = 2.0 * (1.0 - rho) / std::sqrt(std::max(rho, 1e-300)) / slope;
      modes.push_back({root, fwhm, rho});
    }
  }
  std::sort(modes.begin(), modes.end(),
            [](const CavityMode& a, const CavityMode& b) {
              return a.detuning < b.detuning;
            });
  // drop duplicates from adjacent brackets
  ModeList unique;
  for (const auto& m : modes)
    if (unique.empty() || m.detuning - unique.back().detuning > kTwoPi * 1e3)
      unique.push_back(m);
  return unique;
}

std::optional<CavityMode> nearest_resonance(double detuning,
                                            const CavityGeometry& geometry,
                                            const VaporCell& cell,
                                            bool with_atoms) {
  const double fsr = kTwoPi * empty_fsr(geometry);
  const ModeList modes = find_resonances(detuning - 1.5 * fsr,
                                         detuning + 1.5 * fsr, geometry, cell,
                                         with_atoms);
  if (modes.empty()) return std::nullopt;
  const auto best = std::min_element(
      modes.begin(), modes.end(), [&](const CavityMode& a, const CavityMode& b) {
        return std::abs(a.detuning - detuning) < std::abs(b.detuning - detuning);
      });
  return *best;
}

double escape_efficiency(const CavityGeometry& geometry) {
  const double rho = geometry.vacuum_survival();
  return geometry.t1() / (1.0 - rho * rho);
}

double solve_pzt_for_resonance(double detuning, const CavityGeometry& geometry,
                               const VaporCell& cell) {
  const auto lines = cell_lines(cell);
  const double phi = round_trip(detuning, geometry, cell, lines).phase;
  const double omega = kReferenceOmega + detuning;
  return geometry.pzt_offset - wrap_to_pi(phi) * kSpeedOfLight / (2.0 * omega);
}

} // namespace rvo
