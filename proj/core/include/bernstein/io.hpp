#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace bernstein {

//! Observations plus their source line numbers, so that later validation
//! (support checks) can point back into the file.
struct ObservationFile {
  std::vector<double> values;
  std::vector<std::size_t> lines;
};

//! Read observations from a CSV-style file: one value per line, optional
//! single header line. Throws std::runtime_error with the offending line
//! number for unreadable files, empty files, or non-numeric rows.
ObservationFile read_observation_file(const std::filesystem::path& path);
std::vector<double> read_observations(const std::filesystem::path& path);

//! Format with 9 significant digits (enough to compare against published
//! six-decimal tables).
std::string format_number(double v);

void write_grid_csv(const std::filesystem::path& path,
                    std::span<const double> x, std::span<const double> y,
                    const std::string& x_name = "x",
                    const std::string& y_name = "density");

} // namespace bernstein
