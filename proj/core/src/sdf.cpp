#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "cplx/error.hpp"
#include "cplx/ingest.hpp"

namespace cplx::ingest {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string line;
  for (char c : text) {
    if (c == '\n') {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
      line.clear();
    } else {
      line.push_back(c);
    }
  }
  if (!line.empty()) lines.push_back(std::move(line));
  return lines;
}

bool parse_coordinate(const std::string& token, double& out) {
  char* end = nullptr;
  out = std::strtod(token.c_str(), &end);
  return !token.empty() && end == token.c_str() + token.size() &&
         std::isfinite(out);
}

}  // namespace

RealMatrix sdf_distance_matrix(std::string_view sdf_text) {
  const auto lines = split_lines(sdf_text);
  constexpr std::size_t kCountsLine = 3;  // 0-based
  if (lines.size() <= kCountsLine) {
    throw ParseError("missing counts line", lines.size() + 1);
  }
  const std::string& counts = lines[kCountsLine];
  // V2000 counts line: aaabbb... with the atom count in columns 1-3.
  const std::string atoms_field = counts.substr(0, std::min<std::size_t>(3, counts.size()));
  char* end = nullptr;
  const long atoms = std::strtol(atoms_field.c_str(), &end, 10);
  const bool only_spaces_after =
      end && std::string(end).find_first_not_of(' ') == std::string::npos;
  if (atoms_field.find_first_not_of(' ') == std::string::npos ||
      !only_spaces_after || atoms <= 0) {
    throw ParseError("malformed counts line", kCountsLine + 1);
  }
  if (counts.find("V3000") != std::string::npos) {
    throw ParseError("V3000 molfiles are not supported", kCountsLine + 1);
  }

  const auto n = static_cast<std::size_t>(atoms);
  std::vector<std::array<double, 3>> xyz;
  xyz.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t index = kCountsLine + 1 + i;
    if (index >= lines.size() || lines[index].rfind("M  END", 0) == 0 ||
        lines[index] == "$$$$") {
      throw ParseError("atom block declares " + std::to_string(n) +
                           " atoms but has " + std::to_string(i),
                       index + 1);
    }
    std::istringstream fields(lines[index]);
    std::array<double, 3> p{};
    for (double& coord : p) {
      std::string token;
      if (!(fields >> token) || !parse_coordinate(token, coord)) {
        throw ParseError("non-numeric atom coordinate", index + 1);
      }
    }
    // The element symbol separates atom lines from bond lines, which are
    // all-integer.
    std::string symbol;
    if (!(fields >> symbol) || !std::isalpha(static_cast<unsigned char>(symbol[0]))) {
      throw ParseError("atom line without an element symbol", index + 1);
    }
    xyz.push_back(p);
  }

  RealMatrix d(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = xyz[i][0] - xyz[j][0];
      const double dy = xyz[i][1] - xyz[j][1];
      const double dz = xyz[i][2] - xyz[j][2];
      d(i, j) = d(j, i) = std::sqrt(dx * dx + dy * dy + dz * dz);
    }
  }
  return d;
}

}  // namespace cplx::ingest
