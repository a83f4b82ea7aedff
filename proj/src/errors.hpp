#pragma once

#include <stdexcept>
#include <string>

namespace efg {

// Error categories exposed one-to-one through the C API status codes.
enum class Errc {
  invalid_argument,
  parse,
  io,
  invalid_graph,
  cycle,
  not_stochastic,
  no_absorption,
  convergence,
  unknown_vertex,
  invalid_path,
  dead_end,
  no_path,
  out_of_range,
  invalid_selection,
  duplicate_boundary,
  terminal_membership,
  empty_trace_set,
  insufficient_samples,
  zero_mean,
  missing_metric,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace efg
