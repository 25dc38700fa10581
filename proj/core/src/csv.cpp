#include "irsbf/csv.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace irsbf {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, int line_no) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw std::runtime_error("line " + std::to_string(line_no) + ": bad number '" + s + "'");
  return x;
}

std::optional<double> parse_optional(const std::string& s, int line_no) {
  if (s.empty()) return std::nullopt;
  return parse_number(s, line_no);
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void write_csv_header(std::ostream& os) { os << kCsvHeader << "\n"; }

void write_csv_rows(std::ostream& os, const SimResult& r) {
  for (const auto& st : r.schemes) {
    os << to_string(r.variable) << ',' << format_number(r.sweep_value) << ','
       << to_string(st.scheme) << ',' << format_number(st.mean_snr_db) << ','
       << (st.ser ? format_number(*st.ser) : "") << ','
       << (st.mean_iterations ? format_number(*st.mean_iterations) : "") << "\n";
  }
}

void write_csv(std::ostream& os, const std::vector<SimResult>& results) {
  write_csv_header(os);
  for (const auto& r : results) write_csv_rows(os, r);
}

std::string to_csv(const std::vector<SimResult>& results) {
  std::ostringstream os;
  write_csv(os, results);
  return os.str();
}

std::vector<SimResult> parse_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw std::runtime_error("unexpected CSV header: " + line);

  std::vector<SimResult> out;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 6)
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected 6 fields");
    SchemeStats st;
    SweepVariable var;
    try {
      var = sweep_variable_from_string(f[0]);
      st.scheme = scheme_from_string(f[2]);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
    const double value = parse_number(f[1], line_no);
    st.mean_snr_db = parse_number(f[3], line_no);
    st.ser = parse_optional(f[4], line_no);
    st.mean_iterations = parse_optional(f[5], line_no);

    const bool same_point = !out.empty() && out.back().variable == var &&
                            (out.back().sweep_value == value ||
                             (std::isnan(value) && std::isnan(out.back().sweep_value)));
    if (!same_point) {
      SimResult r;
      r.variable = var;
      r.sweep_value = value;
      out.push_back(r);
    }
    out.back().schemes.push_back(st);
  }
  return out;
}

std::vector<SimResult> parse_csv(const std::string& text) {
  std::istringstream is(text);
  return parse_csv(is);
}

}  // namespace irsbf
