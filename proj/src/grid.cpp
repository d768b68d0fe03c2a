#include "fl/grid.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "fl/errors.hpp"

namespace fl {

GridFunction::GridFunction(std::vector<double> v) : values(std::move(v)) {}

double GridFunction::step() const { return 2.0 * std::numbers::pi / static_cast<double>(m()); }

double GridFunction::t(std::size_t j) const {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m());
}

double GridFunction::at(long long j) const {
  const long long mm = static_cast<long long>(m());
  long long r = j % mm;
  if (r < 0) r += mm;
  return values[static_cast<std::size_t>(r)];
}

void check(const GridFunction& gf) {
  if (gf.m() < 2) throw DomainError("grid needs at least two samples");
  for (double v : gf.values)
    if (!std::isfinite(v)) throw DomainError("grid values must be finite");
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& os, const GridFunction& gf) {
  os << "t,value\n";
  for (std::size_t j = 0; j < gf.m(); ++j) os << fmt17(gf.t(j)) << ',' << fmt17(gf.values[j]) << '\n';
}

GridFunction read_csv(std::istream& is) {
  GridFunction gf;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    const std::string cell = comma == std::string::npos ? line : line.substr(comma + 1);
    std::istringstream ss(cell);
    double v;
    if (!(ss >> v)) {
      if (gf.values.empty()) continue;  // header
      throw DomainError("malformed CSV row: " + line);
    }
    gf.values.push_back(v);
  }
  check(gf);
  return gf;
}

void to_json(nlohmann::json& j, const GridFunction& gf) { j = gf.values; }

void from_json(const nlohmann::json& j, GridFunction& gf) {
  gf.values = j.get<std::vector<double>>();
  check(gf);
}

}  // namespace fl
