#pragma once

// CSV form of sweep results: one row per (sweep value, scheme),
//   sweep_variable,value,scheme,mean_snr_db,ser,mean_iterations
// with floats at 10 significant digits and empty fields for missing values.

#include <iosfwd>
#include <string>
#include <vector>

#include "irsbf/sim.hpp"

namespace irsbf {

inline constexpr const char* kCsvHeader = "sweep_variable,value,scheme,mean_snr_db,ser,mean_iterations";

/// %.10g, with "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double x);

void write_csv_header(std::ostream& os);
void write_csv_rows(std::ostream& os, const SimResult& r);
void write_csv(std::ostream& os, const std::vector<SimResult>& results);
std::string to_csv(const std::vector<SimResult>& results);

/// Inverse of write_csv. Consecutive rows with the same variable and value are
/// grouped into one SimResult (skipped counts are not stored and read back as 0).
/// Throws std::runtime_error on malformed input.
std::vector<SimResult> parse_csv(std::istream& is);
std::vector<SimResult> parse_csv(const std::string& text);

}  // namespace irsbf
