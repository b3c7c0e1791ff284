#include "emwave/csvnum.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "emwave/errors.hpp"

namespace emwave {

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_int(long long v) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

double parse_double(std::string_view token, std::string_view context) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    fail(Errc::parse_error,
         "bad number '" + std::string(token) + "' in " + std::string(context));
  }
  return v;
}

long long parse_int(std::string_view token, std::string_view context) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    fail(Errc::parse_error,
         "bad integer '" + std::string(token) + "' in " + std::string(context));
  }
  return v;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(Errc::io_error, "cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) fail(Errc::io_error, "write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(Errc::io_error, "cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::parse_error: return "parse_error";
    case Errc::validation_error: return "validation_error";
    case Errc::invalid_parameter: return "invalid_parameter";
    case Errc::infeasible_penetration: return "infeasible_penetration";
    case Errc::no_convergence: return "no_convergence";
    case Errc::numerical_blowup: return "numerical_blowup";
    case Errc::invalid_disturbance: return "invalid_disturbance";
    case Errc::unknown_sensor_bus: return "unknown_sensor_bus";
    case Errc::no_crossing: return "no_crossing";
    case Errc::insufficient_baseline: return "insufficient_baseline";
    case Errc::too_few_arrivals: return "too_few_arrivals";
    case Errc::empty_samples: return "empty_samples";
    case Errc::degenerate_field: return "degenerate_field";
    case Errc::time_out_of_range: return "time_out_of_range";
    case Errc::insufficient_cells: return "insufficient_cells";
    case Errc::zero_variance: return "zero_variance";
    case Errc::empty_region: return "empty_region";
    case Errc::io_error: return "io_error";
  }
  return "unknown";
}

}  // namespace emwave
