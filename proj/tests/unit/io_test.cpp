#include "kreg/errors.hpp"
#include "kreg/io.hpp"
#include "kreg/rng.hpp"
#include "kreg/svg_plot.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

namespace kreg {
namespace {

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(1.0), "1");
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double x = std::ldexp(rng.uniform(-1.0, 1.0), static_cast<int>(rng.uniform(-60, 60)));
    ASSERT_EQ(std::stod(format_double(x)), x);
  }
}

TEST(PointsCsv, RoundTrip) {
  PointSet p(3, 2);
  p << 0.1, 0.2, 1.0 / 3.0, 0.5, 1e-17, 1.0;
  std::stringstream s;
  write_points_csv(s, p);
  EXPECT_EQ(s.str().substr(0, 6), "x1,x2\n");
  const PointSet back = read_points_csv(s);
  EXPECT_TRUE((back.array() == p.array()).all());
}

TEST(PointsCsv, Malformed) {
  std::istringstream no_header("0.1,0.2\n");
  EXPECT_THROW(read_points_csv(no_header), ConfigError);
  std::istringstream ragged("x1,x2\n0.1,0.2\n0.3\n");
  EXPECT_THROW(read_points_csv(ragged), ConfigError);
  std::istringstream junk("x1\nabc\n");
  EXPECT_THROW(read_points_csv(junk), ConfigError);
}

TEST(ValuesCsv, HeaderOptional) {
  std::istringstream with("value\n1\n2.5\n");
  std::istringstream without("1\n2.5\n");
  EXPECT_EQ(read_values_csv(with).size(), 2);
  EXPECT_EQ(read_values_csv(without)[1], 2.5);
}

TEST(RecordsCsv, RoundTripBitExact) {
  Rng rng(3);
  std::vector<ConvergenceRecord> records;
  for (std::size_t i = 0; i < 50; ++i) {
    ConvergenceRecord r{i + 1,          rng.uniform(),     rng.uniform() * 1e-9,
                        rng.uniform(),  rng.uniform(),     rng.uniform() * 1e5,
                        rng.uniform() * 1e12, i % 2 ? 1e-12 : 0.0};
    records.push_back(r);
  }
  std::stringstream s;
  write_records_csv(s, records);
  EXPECT_EQ(s.str().substr(0, kRecordsHeader.size()), kRecordsHeader);
  EXPECT_EQ(read_records_csv(s), records);
}

TEST(RecordsCsv, CommentsSkippedAndHeaderEnforced) {
  std::istringstream ok(std::string(kRecordsHeader) + "\n# incomplete\n4,0.5,0.1,0.1,0.1,1,1,0\n");
  EXPECT_EQ(read_records_csv(ok).size(), 1u);
  std::istringstream bad("n,h,eta\n4,0.5,0.1\n");
  EXPECT_THROW(read_records_csv(bad), ConfigError);
  std::istringstream short_row(std::string(kRecordsHeader) + "\n4,0.5\n");
  EXPECT_THROW(read_records_csv(short_row), ConfigError);
}

TEST(Files, AtomicWriteReplacesContents) {
  const auto dir = std::filesystem::temp_directory_path() / "kreg_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.txt";
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  EXPECT_EQ(read_file(path), "second");
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    EXPECT_EQ(entry.path().filename(), "out.txt");
  }
  std::filesystem::remove_all(dir);
  EXPECT_THROW(read_file(dir / "missing"), Error);
}

TEST(Svg, DrawsBothSeriesAndReferenceSlope) {
  std::vector<ConvergenceRecord> records;
  for (int i = 0; i < 5; ++i) {
    const double h = std::pow(0.5, i + 1);
    records.push_back({static_cast<std::size_t>(4 << i), h, h, h * 0.5, h, 1.0, 1.0, 0.0});
  }
  const std::string svg = render_loglog_svg({"demo", records, 0.25});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("sup_err"), std::string::npos);
  EXPECT_NE(svg.find("eta_n"), std::string::npos);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

}  // namespace
}  // namespace kreg
