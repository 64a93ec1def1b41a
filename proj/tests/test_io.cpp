#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "hankel/io.hpp"
#include "hankel/operators.hpp"

namespace {

using namespace hankel;
using hankel::io::json;

TEST(FormatDouble, RoundTrip) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-300.0, 300.0);
  for (int i = 0; i < 5000; ++i) {
    const double v = std::pow(10.0, u(rng)) * (i % 3 ? 1.0 : -1.0);
    EXPECT_EQ(io::parse_double(io::format_double(v)), v);
  }
  EXPECT_EQ(io::format_double(0.5), "0.5");
  EXPECT_EQ(io::format_double(1.0), "1");
}

TEST(ParseDouble, RejectsGarbage) {
  EXPECT_THROW(io::parse_double("1.5x"), std::invalid_argument);
  EXPECT_THROW(io::parse_double(""), std::invalid_argument);
}

TEST(MatrixCsv, ColumnMajorRoundTrip) {
  const auto M = materialize(h1(0.35, 1.7), 6);
  std::stringstream ss;
  io::write_matrix_csv(ss, M);
  const auto back = io::read_matrix_csv(ss);
  ASSERT_EQ(back.size(), M.size());
  for (std::size_t m = 0; m < M.size(); ++m) {
    for (std::size_t n = 0; n < M.size(); ++n) {
      EXPECT_EQ(back(m, n), M(m, n));
    }
  }
}

TEST(MatrixCsv, LineIsColumn) {
  DenseMatrix<double> M(2);
  M(0, 0) = 1;
  M(1, 0) = 2;
  M(0, 1) = 3;
  M(1, 1) = 4;
  std::stringstream ss;
  io::write_matrix_csv(ss, M);
  EXPECT_EQ(ss.str(), "1,2\n3,4\n");
}

TEST(MatrixCsv, RejectsNonSquare) {
  std::stringstream ss("1,2\n3\n");
  EXPECT_THROW(io::read_matrix_csv(ss), std::invalid_argument);
}

TEST(MatrixJson, RoundTrip) {
  for (const FamilySpec& s : {h1(0.6, 2.0), h2(1.5), h3(), h4(4, 0.2, 1.1)}) {
    const auto M = materialize(s, dimension(s).value_or(8));
    const json j = io::matrix_to_json(s, M);
    const auto doc = io::matrix_from_json(json::parse(j.dump()));
    EXPECT_EQ(describe(doc.spec), describe(s));
    ASSERT_EQ(doc.entries.size(), M.size());
    for (std::size_t m = 0; m < M.size(); ++m) {
      for (std::size_t n = 0; n < M.size(); ++n) {
        EXPECT_EQ(doc.entries(m, n), M(m, n));
      }
    }
  }
}

TEST(MatrixJson, DeterministicDump) {
  const auto M = materialize(h2(0.7), 5);
  EXPECT_EQ(io::matrix_to_json(h2(0.7), M).dump(), io::matrix_to_json(h2(0.7), M).dump());
  const std::string d = io::matrix_to_json(h2(0.7), M).dump();
  EXPECT_LT(d.find("\"block\""), d.find("\"entries\""));
}

TEST(MatrixJson, Errors) {
  json j = io::matrix_to_json(h3(), materialize(h3(), 2));
  json bad_schema = j;
  bad_schema["schema"] = "0";
  EXPECT_THROW(io::matrix_from_json(bad_schema), std::invalid_argument);
  json ragged = j;
  ragged["entries"][1] = json::array({1.0});
  EXPECT_THROW(io::matrix_from_json(ragged), std::invalid_argument);
  json missing = j;
  missing.erase("entries");
  EXPECT_THROW(io::matrix_from_json(missing), json::exception);
  json unknown = j;
  unknown["family"] = "h9";
  EXPECT_THROW(io::matrix_from_json(unknown), std::invalid_argument);
}

TEST(SpecJson, Blocks) {
  EXPECT_EQ(io::parse_block("odd"), Block::odd);
  EXPECT_THROW(io::parse_block("left"), std::invalid_argument);
  const json j = io::spec_to_json(h2(1.0, Block::even));
  EXPECT_EQ(io::spec_from_json(j).block, Block::even);
}

TEST(SpectrumCsv, Header) {
  const SpectrumReport r = truncated_spectrum_report(h4(2, 0.0, 0.0), {3});
  std::stringstream ss;
  io::write_spectrum_csv(ss, r);
  EXPECT_EQ(ss.str().substr(0, 21), "size,index,eigenvalue");
  EXPECT_EQ(io::spectrum_to_json(r)["sizes"][0], 3);
}

TEST(DensityCsv, DiscreteAndContinuous) {
  std::stringstream a;
  io::write_density_csv(a, spectral_rep(h3()), -1.0, 1.0, 3);
  EXPECT_EQ(a.str().rfind("x,density\n-1,", 0), 0u);
  std::stringstream b;
  io::write_density_csv(b, spectral_rep(h4(2, 0.0, 0.0)), 0.0, 100.0, 50);
  std::string line;
  int rows = -1;
  while (std::getline(b, line)) {
    ++rows;
  }
  EXPECT_EQ(rows, 3);
}

}  // namespace
