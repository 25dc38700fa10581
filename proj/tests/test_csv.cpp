#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "irsbf/csv.hpp"

using namespace irsbf;

namespace {

SimResult point(SweepVariable var, double value, double base) {
  SimResult r;
  r.variable = var;
  r.sweep_value = value;
  for (Scheme s : kAllSchemes) {
    SchemeStats st;
    st.scheme = s;
    st.mean_snr_db = base + 1.0 / 3.0 * static_cast<double>(s);
    if (s != Scheme::UpperBound) st.ser = 1e-3 / (1.0 + static_cast<double>(s));
    if (s == Scheme::RobustWithIRS || s == Scheme::NonrobustWithIRS) st.mean_iterations = 31.25;
    r.schemes.push_back(st);
  }
  return r;
}

}  // namespace

TEST(Csv, FormatNumber) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.3333333333");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(format_number(HUGE_VAL), "inf");
  EXPECT_EQ(format_number(-HUGE_VAL), "-inf");
}

TEST(Csv, HeaderAndRows) {
  const std::string text = to_csv({point(SweepVariable::NI, 32, 10.0)});
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, kCsvHeader);
  std::getline(is, line);
  EXPECT_EQ(line, "N_I,32,RobustWithIRS,10,0.001,31.25");
  int rows = 1;
  while (std::getline(is, line)) {
    ++rows;
    if (rows == 5) EXPECT_EQ(line, "N_I,32,UpperBound,11.33333333,,");
  }
  EXPECT_EQ(rows, 5);
}

TEST(Csv, RoundTrip) {
  const std::vector<SimResult> in = {point(SweepVariable::P, 0, 3.0), point(SweepVariable::P, 5, 7.0),
                                     point(SweepVariable::P, 10, 11.0)};
  const std::string text = to_csv(in);
  const auto out = parse_csv(text);
  ASSERT_EQ(out.size(), in.size());
  for (std::size_t k = 0; k < in.size(); ++k) {
    EXPECT_EQ(out[k].variable, in[k].variable);
    EXPECT_EQ(out[k].sweep_value, in[k].sweep_value);
    ASSERT_EQ(out[k].schemes.size(), in[k].schemes.size());
    for (std::size_t s = 0; s < in[k].schemes.size(); ++s) {
      const auto& a = in[k].schemes[s];
      const auto& b = out[k].schemes[s];
      EXPECT_EQ(a.scheme, b.scheme);
      EXPECT_NEAR(a.mean_snr_db, b.mean_snr_db, 1e-9 * std::abs(a.mean_snr_db));
      EXPECT_EQ(a.ser.has_value(), b.ser.has_value());
      EXPECT_EQ(a.mean_iterations, b.mean_iterations);
    }
  }
  EXPECT_EQ(to_csv(out), text);
}

TEST(Csv, NonFiniteRoundTrip) {
  SimResult r = point(SweepVariable::Kappa, 0.05, 0.0);
  r.schemes[0].mean_snr_db = std::nan("");
  const auto out = parse_csv(to_csv({r}));
  EXPECT_TRUE(std::isnan(out[0].schemes[0].mean_snr_db));
}

TEST(Csv, EmptyList) {
  EXPECT_EQ(to_csv({}), std::string(kCsvHeader) + "\n");
  EXPECT_TRUE(parse_csv(to_csv({})).empty());
}

TEST(Csv, MalformedInput) {
  EXPECT_THROW(parse_csv(std::string("")), std::runtime_error);
  EXPECT_THROW(parse_csv(std::string("a,b,c\n")), std::runtime_error);
  const std::string h = std::string(kCsvHeader) + "\n";
  EXPECT_THROW(parse_csv(h + "N_I,32,RobustWithIRS,10,0.001\n"), std::runtime_error);
  EXPECT_THROW(parse_csv(h + "N_I,32,Best,10,0.001,1\n"), std::runtime_error);
  EXPECT_THROW(parse_csv(h + "N,32,RobustWithIRS,10,0.001,1\n"), std::runtime_error);
  EXPECT_THROW(parse_csv(h + "N_I,x,RobustWithIRS,10,0.001,1\n"), std::runtime_error);
  EXPECT_THROW(parse_csv(h + "N_I,32,RobustWithIRS,10abc,0.001,1\n"), std::runtime_error);
}
