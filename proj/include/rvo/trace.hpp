// trace.hpp - the universal output record: a uniform frequency grid with
// one value channel, plus CSV serialization.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace rvo {

struct SpectrumTrace {
  double start_hz = 0.0;   // first grid point
  double step_hz = 0.0;    // grid spacing, > 0
  std::vector<double> values;
  std::string x_label = "frequency_hz";
  std::string y_label = "value";

  size_t size() const { return values.size(); }
  double frequency(size_t i) const { return start_hz + step_hz * static_cast<double>(i); }

  void validate() const;  // uniform, increasing, finite values
};

// CSV with header "frequency_hz,value", 12 significant digits,
// newline-terminated lines.
void write_trace(const SpectrumTrace& trace, const std::string& path);
SpectrumTrace read_trace(const std::string& path);

// Indices of strict local maxima whose value exceeds `floor`.
std::vector<size_t> local_maxima(const std::vector<double>& values, double floor);

} // namespace rvo
