#include "bernstein/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bernstein {

namespace {

std::string trimmed(const std::string& line) {
  const auto begin = line.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = line.find_last_not_of(" \t\r");
  return line.substr(begin, end - begin + 1);
}

bool parse_value(const std::string& text, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(text, &used);
    return used == text.size();
  } catch (const std::exception&) {
    return false;
  }
}

} // namespace

ObservationFile read_observation_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path.string() + "'");
  }
  ObservationFile out;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trimmed(line);
    if (t.empty()) continue;
    double v = 0.0;
    if (!parse_value(t, v)) {
      if (first_content_line) {  // header
        first_content_line = false;
        continue;
      }
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": non-numeric value '" + t + "'");
    }
    first_content_line = false;
    out.values.push_back(v);
    out.lines.push_back(line_no);
  }
  if (out.values.empty()) {
    throw std::runtime_error(path.string() + ": no observations found");
  }
  return out;
}

std::vector<double> read_observations(const std::filesystem::path& path) {
  return read_observation_file(path).values;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_grid_csv(const std::filesystem::path& path,
                    std::span<const double> x, std::span<const double> y,
                    const std::string& x_name, const std::string& y_name) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("write_grid_csv: size mismatch");
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out << x_name << "," << y_name << "\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    out << format_number(x[i]) << "," << format_number(y[i]) << "\n";
  }
  if (!out) {
    throw std::runtime_error("write failed for '" + path.string() + "'");
  }
}

} // namespace bernstein
