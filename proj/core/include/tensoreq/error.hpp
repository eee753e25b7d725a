#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tensoreq {

enum class Errc {
  invalid_dimension,
  out_of_bounds,
  dimension_mismatch,
  non_square,
  non_finite,
  symmetry_violation,
  not_spd,
  zero_division,
  cannot_construct,
  io_failure,
  bad_magic,
  version_unsupported,
  truncated_payload,
  unsupported_format,
  malformed_header,
};

std::string_view to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map them to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

}  // namespace tensoreq
