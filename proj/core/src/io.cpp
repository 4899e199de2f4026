#include "kreg/io.hpp"

#include "kreg/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <system_error>

namespace kreg {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return {buf.data(), end};
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_double(const std::string& text, double& value) {
  if (text == "inf") { value = std::numeric_limits<double>::infinity(); return true; }
  if (text == "-inf") { value = -std::numeric_limits<double>::infinity(); return true; }
  if (text == "nan") { value = std::numeric_limits<double>::quiet_NaN(); return true; }
  const char* first = text.data();
  if (!text.empty() && text[0] == '+') ++first;
  const auto [end, ec] = std::from_chars(first, text.data() + text.size(), value);
  return ec == std::errc() && end == text.data() + text.size() && first != end;
}

double parse_field(const std::string& text, std::size_t line) {
  double value = 0.0;
  if (!parse_double(text, value)) {
    throw ConfigError("line " + std::to_string(line) + ": \"" + text + "\" is not a number");
  }
  return value;
}

bool is_blank(const std::string& line) { return trim(line).empty(); }

}  // namespace

PointSet read_points_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_blank(line)) break;
  }
  if (is_blank(line)) throw ConfigError("points CSV is empty");
  const auto header = split(line);
  for (std::size_t a = 0; a < header.size(); ++a) {
    if (header[a] != "x" + std::to_string(a + 1)) {
      throw ConfigError("points CSV header must be x1,...,xd; got \"" + trim(line) + "\"");
    }
  }
  const std::size_t d = header.size();
  std::vector<double> values;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto fields = split(line);
    if (fields.size() != d) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected " + std::to_string(d) +
                        " columns");
    }
    for (const auto& f : fields) values.push_back(parse_field(f, line_no));
    ++rows;
  }
  PointSet points(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(d));
  std::copy(values.begin(), values.end(), points.data());
  return points;
}

void write_points_csv(std::ostream& out, const PointSet& points) {
  for (Eigen::Index a = 0; a < points.cols(); ++a) out << (a ? "," : "") << 'x' << a + 1;
  out << '\n';
  for (Eigen::Index k = 0; k < points.rows(); ++k) {
    for (Eigen::Index a = 0; a < points.cols(); ++a) out << (a ? "," : "") << format_double(points(k, a));
    out << '\n';
  }
}

Vector read_values_csv(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto fields = split(line);
    if (fields.size() != 1) {
      throw ConfigError("line " + std::to_string(line_no) + ": values CSV has one column");
    }
    double value = 0.0;
    if (!parse_double(fields[0], value)) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw ConfigError("line " + std::to_string(line_no) + ": \"" + fields[0] + "\" is not a number");
    }
    first = false;
    values.push_back(value);
  }
  return Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void write_records_csv(std::ostream& out, std::span<const ConvergenceRecord> records) {
  out << kRecordsHeader << '\n';
  for (const auto& r : records) {
    out << r.n << ',' << format_double(r.h_n) << ',' << format_double(r.eta_n) << ','
        << format_double(r.sup_err) << ',' << format_double(r.bound_k) << ','
        << format_double(r.bound_holder) << ',' << format_double(r.cond_est) << ','
        << format_double(r.jitter) << '\n';
  }
}

std::vector<ConvergenceRecord> read_records_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<ConvergenceRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line) || trim(line).front() == '#') continue;
    if (!have_header) {
      if (trim(line) != kRecordsHeader) {
        throw ConfigError("records CSV header must be \"" + std::string(kRecordsHeader) + "\"");
      }
      have_header = true;
      continue;
    }
    const auto fields = split(line);
    if (fields.size() != 8) {
      throw ConfigError("line " + std::to_string(line_no) + ": records rows have 8 columns");
    }
    ConvergenceRecord r;
    const double n = parse_field(fields[0], line_no);
    if (!(n >= 1.0) || n != std::floor(n)) {
      throw ConfigError("line " + std::to_string(line_no) + ": n must be a positive integer");
    }
    r.n = static_cast<std::size_t>(n);
    r.h_n = parse_field(fields[1], line_no);
    r.eta_n = parse_field(fields[2], line_no);
    r.sup_err = parse_field(fields[3], line_no);
    r.bound_k = parse_field(fields[4], line_no);
    r.bound_holder = parse_field(fields[5], line_no);
    r.cond_est = parse_field(fields[6], line_no);
    r.jitter = parse_field(fields[7], line_no);
    records.push_back(r);
  }
  if (!have_header) throw ConfigError("records CSV has no header");
  return records;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace kreg
