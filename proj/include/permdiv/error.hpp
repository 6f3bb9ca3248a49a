#pragma once

#include <stdexcept>
#include <string>

namespace permdiv {

enum class errc {
  out_of_range,
  row_collision,
  col_collision,
  mismatched_ground,
  empty_input,
  not_intersecting,
  constraint_conflict,
  too_large,
  not_subfamily,
  not_spread,
  precondition_violation,
  internal_mismatch,
  parse_error,
  io_error,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace permdiv
