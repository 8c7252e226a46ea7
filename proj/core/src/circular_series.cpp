#include "cpvar/circular_series.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cpvar {

CircularSeries::CircularSeries(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 4)
    throw std::invalid_argument("CircularSeries: need at least 4 values");
  for (double v : values_)
    if (!std::isfinite(v))
      throw std::invalid_argument("CircularSeries: all values must be finite");
}

CircularSeries CircularSeries::rotate(long long m) const {
  const int n = this->n();
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) out[static_cast<std::size_t>(i - 1)] = at(i + m);
  return CircularSeries(std::move(out));
}

CircularSeries CircularSeries::scaled(double c) const {
  std::vector<double> out(values_.begin(), values_.end());
  for (double& v : out) v *= c;
  return CircularSeries(std::move(out));
}

std::vector<double> read_column_csv(const std::string& path, bool has_header,
                                    std::string* header_out) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open csv file: " + path);
  std::vector<double> values;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && has_header) {
      if (header_out) *header_out = line;
      first = false;
      continue;
    }
    first = false;
    if (line.empty()) continue;
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(line, &pos);
    } catch (const std::exception&) {
      throw std::runtime_error("csv parse error in " + path + ": '" + line + "'");
    }
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos != line.size())
      throw std::runtime_error("csv parse error in " + path + ": '" + line + "'");
    values.push_back(v);
  }
  return values;
}

CircularSeries read_series_csv(const std::string& path, CsvOptions& opts) {
  std::string header;
  auto values = read_column_csv(path, opts.has_header, &header);
  if (opts.has_header) opts.header = header;
  return CircularSeries(std::move(values));
}

CircularSeries read_series_csv(const std::string& path, bool has_header) {
  CsvOptions opts;
  opts.has_header = has_header;
  return read_series_csv(path, opts);
}

void write_series_csv(const std::string& path, const CircularSeries& x,
                      const CsvOptions& opts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write csv file: " + path);
  if (opts.has_header) out << opts.header << "\n";
  char buf[40];
  for (double v : x.values()) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf << "\n";
  }
}

}  // namespace cpvar
