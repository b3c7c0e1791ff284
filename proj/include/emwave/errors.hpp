#pragma once

#include <stdexcept>
#include <string>

namespace emwave {

/// Error taxonomy. Numeric values double as CLI exit codes (1 is reserved
/// for unexpected failures, 0 for success).
enum class Errc : int {
  parse_error = 2,
  validation_error = 3,
  invalid_parameter = 4,
  infeasible_penetration = 5,
  no_convergence = 6,
  numerical_blowup = 7,
  invalid_disturbance = 8,
  unknown_sensor_bus = 9,
  no_crossing = 10,
  insufficient_baseline = 11,
  too_few_arrivals = 12,
  empty_samples = 13,
  degenerate_field = 14,
  time_out_of_range = 15,
  insufficient_cells = 16,
  zero_variance = 17,
  empty_region = 18,
  io_error = 19,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace emwave
