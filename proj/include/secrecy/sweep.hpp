#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace secrecy {

enum class GridScale { linear, log };

/// `points` values from start to stop inclusive. Throws DomainError unless
/// the grid is non-empty and strictly increasing (and positive for log scale).
std::vector<double> make_grid(double start, double stop, std::size_t points,
                              GridScale scale = GridScale::linear);

/// Throws DomainError unless values are non-empty, positive and strictly increasing.
void require_positive_increasing(const std::vector<double>& grid, const char* what);

/// Column-labelled numeric table; the CSV interface for plotting.
struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Grid points dropped because the rate was zero.
  std::size_t omitted = 0;

  /// Header row then one line per row. Doubles use the shortest round-trip
  /// representation; infinities print as "inf".
  void write_csv(std::ostream& out) const;
  static SweepTable read_csv(std::istream& in);

  std::size_t column_index(const std::string& name) const;
};

}  // namespace secrecy
