#include "secrecy/sweep.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "secrecy/errors.hpp"

namespace secrecy {

void require_positive_increasing(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) throw DomainError(std::string(what) + ": grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
      throw DomainError(std::string(what) + ": grid values must be positive and finite");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError(std::string(what) + ": grid must be strictly increasing");
    }
  }
}

std::vector<double> make_grid(double start, double stop, std::size_t points, GridScale scale) {
  if (points == 0) throw DomainError("make_grid: need at least one point");
  if (points > 1 && !(stop > start)) throw DomainError("make_grid: stop must exceed start");
  if (scale == GridScale::log && !(start > 0.0)) {
    throw DomainError("make_grid: log grid needs a positive start");
  }
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = start;
    return grid;
  }
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / last;
    grid[i] = scale == GridScale::linear
                  ? start + (stop - start) * t
                  : std::exp(std::log(start) + (std::log(stop) - std::log(start)) * t);
  }
  grid.back() = stop;
  return grid;
}

namespace {

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double x = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw DomainError("SweepTable: cannot parse number '" + s + "'");
  }
  return x;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

void SweepTable::write_csv(std::ostream& out) const {
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
}

SweepTable SweepTable::read_csv(std::istream& in) {
  SweepTable table;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("SweepTable: missing header");
  table.columns = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != table.columns.size()) throw DomainError("SweepTable: ragged row");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) row.push_back(parse_double(cell));
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::size_t SweepTable::column_index(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c] == name) return c;
  throw DomainError("SweepTable: no column '" + name + "'");
}

}  // namespace secrecy
