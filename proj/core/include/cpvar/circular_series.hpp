#pragma once

#include <span>
#include <string>
#include <vector>

namespace cpvar {

/// An observed real-valued sequence whose index set lives on a circle:
/// position i and position i + n refer to the same observation. Indices
/// in the public API are 1-based. Immutable after construction.
class CircularSeries {
public:
  explicit CircularSeries(std::vector<double> values);

  int n() const { return static_cast<int>(values_.size()); }

  /// 1-based circular access: at(i) == at(i + n) for every integer i.
  double at(long long i) const { return values_[wrap(i)]; }

  std::span<const double> values() const { return values_; }

  /// Cyclic shift: entry i of the result is entry i + m of the input.
  /// rotate(0) is the identity and rotate(a).rotate(b) == rotate(a + b).
  CircularSeries rotate(long long m) const;

  CircularSeries scaled(double c) const;

private:
  std::size_t wrap(long long i) const {
    long long n = static_cast<long long>(values_.size());
    long long r = (i - 1) % n;
    if (r < 0) r += n;
    return static_cast<std::size_t>(r);
  }

  std::vector<double> values_;
};

struct CsvOptions {
  bool has_header = false;
  std::string header = "value";
};

/// One-column CSV. With has_header the first row is kept aside and written
/// back verbatim by write_series_csv.
CircularSeries read_series_csv(const std::string& path, CsvOptions& opts);
CircularSeries read_series_csv(const std::string& path, bool has_header = false);
void write_series_csv(const std::string& path, const CircularSeries& x,
                      const CsvOptions& opts = {});

std::vector<double> read_column_csv(const std::string& path, bool has_header,
                                    std::string* header_out = nullptr);

}  // namespace cpvar
