#include "rvo/analyzer.hpp"

#include "rvo/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace rvo {

void AnalyzerConfig::validate() const {
  if (!(linewidth_hz > 0.0) || !(fsr_hz > linewidth_hz))
    throw std::invalid_argument("analyzer: need FSR > linewidth > 0");
  if (points < 2) throw std::invalid_argument("analyzer.points must be >= 2");
  if (!(span_hz > 0.0)) throw std::invalid_argument("analyzer.span_hz must be > 0");
}

std::string emission_label_name(EmissionLabel label) {
  switch (label) {
    case EmissionLabel::Pump: return "pump";
    case EmissionLabel::Stokes: return "stokes";
    case EmissionLabel::AntiStokes: return "anti-stokes";
  }
  return "pump";
}

SpectrumTrace absorption_trace(double start, double stop, int points,
                               const VaporCell& cell, int threads) {
  if (points < 2 || !(stop > start))
    throw std::invalid_argument("absorption_trace: bad grid");
  const double gamma =
      cell.natural_width > 0.0 ? cell.natural_width : kDefaultNaturalWidth;
  const auto lines = line_table(cell.isotopes, gamma);

  SpectrumTrace trace;
  trace.start_hz = start / kTwoPi;
  trace.step_hz = (stop - start) / kTwoPi / static_cast<double>(points - 1);
  trace.values.assign(static_cast<size_t>(points), 0.0);
  trace.y_label = "transmission";

  auto worker = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const double d = start + (stop - start) * static_cast<double>(i) /
                                   static_cast<double>(points - 1);
      const double omega = kReferenceOmega + d;
      const double alpha =
          (omega / kSpeedOfLight) * susceptibility(d, cell, lines).imag();
      trace.values[static_cast<size_t>(i)] = std::exp(-alpha * cell.length);
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

SpectrumTrace cavity_trace(double start, double stop, int points,
                           const CavityGeometry& geometry, const VaporCell& cell,
                           bool with_atoms, int threads) {
  return transmission_spectrum(start, stop, points, geometry, cell, with_atoms,
                               threads);
}

SpectrumTrace analyzer_trace(const EmissionSet& emissions,
                             const AnalyzerConfig& analyzer) {
  analyzer.validate();
  for (const auto& e : emissions)
    if (!(e.power >= 0.0))
      throw std::invalid_argument("analyzer_trace: emission power must be >= 0");

  // rho of the analyzer Airy function from its finesse.
  const double finesse = analyzer.fsr_hz / analyzer.linewidth_hz;
  const double sqrt_rho =
      (-kPi + std::sqrt(kPi * kPi + 4.0 * finesse * finesse)) / (2.0 * finesse);
  const double rho = sqrt_rho * sqrt_rho;
  const double k_airy = 4.0 * rho / ((1.0 - rho) * (1.0 - rho));

  SpectrumTrace trace;
  trace.start_hz = -0.5 * analyzer.span_hz;
  trace.step_hz = analyzer.span_hz / static_cast<double>(analyzer.points - 1);
  trace.values.assign(static_cast<size_t>(analyzer.points), 0.0);
  trace.y_label = "power_w";

  for (size_t i = 0; i < trace.values.size(); ++i) {
    const double f = trace.frequency(i);
    double v = 0.0;
    for (const auto& e : emissions) {
      const double s = std::sin(kPi * (f - e.offset_hz) / analyzer.fsr_hz);
      v += e.power / (1.0 + k_airy * s * s);
    }
    trace.values[i] = v;
  }
  return trace;
}

} // namespace rvo
