#pragma once

#include "kreg/convergence.hpp"
#include "kreg/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kreg {

// Header of the records CSV, in column order.
inline constexpr std::string_view kRecordsHeader =
    "n,h_n,eta_n,sup_err,bound_k,bound_holder,cond_est,jitter";

// Shortest decimal representation that reads back to the same double.
std::string format_double(double value);

// Points: header "x1,...,xd", one row per point. Throws ConfigError on
// malformed input.
PointSet read_points_csv(std::istream& in);
void write_points_csv(std::ostream& out, const PointSet& points);

// Values: one number per row, optional single-word header line.
Vector read_values_csv(std::istream& in);

void write_records_csv(std::ostream& out, std::span<const ConvergenceRecord> records);
// Lines starting with '#' are comments. Throws ConfigError if the header
// differs from kRecordsHeader or a row is malformed.
std::vector<ConvergenceRecord> read_records_csv(std::istream& in);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace kreg
