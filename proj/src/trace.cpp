#include "rvo/trace.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rvo {

void SpectrumTrace::validate() const {
  if (values.size() < 2)
    throw std::invalid_argument("trace: needs at least 2 points");
  if (!(step_hz > 0.0))
    throw std::invalid_argument("trace: grid step must be > 0");
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("trace: non-finite value");
}

void write_trace(const SpectrumTrace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("write_trace: cannot open " + path);
  out << "frequency_hz,value\n";
  char buf[80];
  for (size_t i = 0; i < trace.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", trace.frequency(i),
                  trace.values[i]);
    out << buf;
  }
  if (!out)
    throw std::runtime_error("write_trace: write failed for " + path);
}

SpectrumTrace read_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("read_trace: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "frequency_hz,value")
    throw std::runtime_error("read_trace: bad header in " + path);

  std::vector<double> freqs;
  SpectrumTrace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("read_trace: malformed row in " + path);
    freqs.push_back(std::stod(line.substr(0, comma)));
    trace.values.push_back(std::stod(line.substr(comma + 1)));
  }
  if (freqs.size() < 2)
    throw std::runtime_error("read_trace: too few rows in " + path);
  trace.start_hz = freqs.front();
  trace.step_hz = (freqs.back() - freqs.front()) / static_cast<double>(freqs.size() - 1);
  trace.validate();
  return trace;
}

std::vector<size_t> local_maxima(const std::vector<double>& values, double floor) {
  std::vector<size_t> peaks;
  for (size_t i = 1; i + 1 < values.size(); ++i)
    if (values[i] > floor && values[i] > values[i - 1] && values[i] >= values[i + 1])
      peaks.push_back(i);
  return peaks;
}

} // namespace rvo
