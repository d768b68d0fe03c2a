#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace fl {

// Samples of a 2pi-periodic function at t_j = 2 pi j / m, j = 0..m-1.
struct GridFunction {
  std::vector<double> values;

  GridFunction() = default;
  explicit GridFunction(std::vector<double> v);

  std::size_t m() const { return values.size(); }
  double step() const;
  double t(std::size_t j) const;
  // periodic indexing
  double at(long long j) const;
};

void check(const GridFunction& gf);

// CSV with header "t,value". Reading accepts an optional header and ignores the t column.
void write_csv(std::ostream& os, const GridFunction& gf);
GridFunction read_csv(std::istream& is);

void to_json(nlohmann::json& j, const GridFunction& gf);
void from_json(const nlohmann::json& j, GridFunction& gf);

// Formats with 17 significant digits.
std::string fmt17(double x);

}  // namespace fl
